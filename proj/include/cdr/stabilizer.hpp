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
#include <vector>

#include "cdr/circuit.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

// Destabilizer/stabilizer tableau. Row i < n is destabilizer i, row n + i is
// stabilizer i. Each row carries a sign bit.
class Tableau {
 public:
  explicit Tableau(int n_qubits);

  int n_qubits() const { return n_; }
  PauliTerm row(int i) const;  // phase 0 or 2
  const std::vector<PauliTerm>& rows() const { return rows_; }

  void h(int q);
  void s(int q);
  void sdg(int q);
  void x(int q);
  void z(int q);
  void cx(int c, int t);

  void apply(const Gate& g, double angle);
  // Symplectic structure checks, for tests.
  bool invariants_hold() const;

 private:
  int n_;
  std::vector<PauliTerm> rows_;
};

Tableau run_stabilizer(const Circuit& c);

// +1 / -1 when +-p is in the stabilizer group, else 0. p must be Hermitian
// (phase 0 or 2).
int pauli_expectation(const Tableau& t, const PauliTerm& p);
double expectation(const Tableau& t, const PauliSum& o);

}  // namespace cdr
