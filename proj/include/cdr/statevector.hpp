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

#include <complex>
#include <cstdint>
#include <vector>

#include "cdr/circuit.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

using cplx = std::complex<double>;

inline constexpr int kMaxDenseQubits = 20;

class StateVector {
 public:
  explicit StateVector(int n_qubits, std::uint64_t basis = 0);

  int n_qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }
  double norm2() const;

  void apply(const Gate& g, double angle);
  void apply_matrix(int q, const cplx* m);

 private:
  int n_;
  std::vector<cplx> amp_;
};

// 2x2 matrix of a single-qubit gate; angle is ignored for fixed gates.
void gate_matrix(GateKind k, double angle, cplx out[4]);

StateVector run_ideal(const Circuit& c, std::uint64_t initial = 0);
// Runs with one gate's angle overridden by angle + shift.
StateVector run_ideal_shifted(const Circuit& c, std::size_t gate_index,
                              double shift, std::uint64_t initial = 0);

double expectation(const StateVector& s, const PauliTerm& p);
double expectation(const StateVector& s, const PauliSum& o);

}  // namespace cdr
