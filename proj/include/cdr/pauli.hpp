// Copyright 2026 The cdrkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cdr {

inline constexpr int kMaxPauliQubits = 64;
inline constexpr double kDefaultDropThreshold = 1e-12;

// Tensor product of single-qubit Paulis times i^phase. Letters are stored as
// bit masks: X -> x only, Z -> z only, Y -> both.
class PauliTerm {
 public:
  PauliTerm() = default;
  explicit PauliTerm(int n_qubits);
  PauliTerm(int n_qubits, std::uint64_t x, std::uint64_t z, int phase = 0);

  // Text form: rightmost character is qubit 0, e.g. "IIXZ" has Z on qubit 0.
  static PauliTerm from_letters(const std::string& letters, int phase = 0);
  // Sparse helper, e.g. single(4, 2, 'Z').
  static PauliTerm single(int n_qubits, int qubit, char letter);

  int n_qubits() const { return n_; }
  std::uint64_t x() const { return x_; }
  std::uint64_t z() const { return z_; }
  // Power of i, in [0, 4).
  int phase() const { return phase_; }
  char letter(int q) const;
  std::string letters() const;
  int weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }

  PauliTerm with_phase(int phase) const { return {n_, x_, z_, phase}; }
  bool same_letters(const PauliTerm& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  bool commutes_with(const PauliTerm& o) const;

  bool operator==(const PauliTerm& o) const {
    return same_letters(o) && phase_ == o.phase_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// Lexicographic order on the letter string with I < X < Y < Z.
bool letters_less(const PauliTerm& a, const PauliTerm& b);

struct PauliSum {
  int n_qubits = 0;
  std::vector<std::pair<double, PauliTerm>> terms;

  PauliSum() = default;
  explicit PauliSum(int n) : n_qubits(n) {}
  void add(double coef, const PauliTerm& p);
  std::size_t size() const { return terms.size(); }
  double identity_coefficient() const;
};

PauliSum canonicalize(const PauliSum& s,
                      double drop_threshold = kDefaultDropThreshold);

// One term per line: "<coefficient> <letters>".
void write_pauli_text(std::ostream& os, const PauliSum& s);
PauliSum read_pauli_text(std::istream& is);

}  // namespace cdr
