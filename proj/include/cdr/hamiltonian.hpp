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

#include <string>
#include <vector>

#include "cdr/pauli.hpp"

namespace cdr {

struct MolecularIntegrals {
  int n_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double e_core = 0.0;
  std::vector<double> h;  // n^2, h[p*n + q]
  std::vector<double> g;  // n^4, chemists' (pq|rs) at ((p*n + q)*n + r)*n + s

  double one(int p, int q) const { return h[p * n_orbitals + q]; }
  double two(int p, int q, int r, int s) const {
    return g[((p * n_orbitals + q) * n_orbitals + r) * n_orbitals + s];
  }
  void validate(double tol = 1e-10) const;
};

MolecularIntegrals load_fcidump(const std::string& path);
MolecularIntegrals parse_fcidump(const std::string& text);

// Spin-orbital (p, alpha) -> qubit 2p, (p, beta) -> qubit 2p + 1.
inline int spin_orbital_qubit(int p, int spin) { return 2 * p + spin; }

PauliSum jordan_wigner(const MolecularIntegrals& m,
                       double drop_threshold = kDefaultDropThreshold);

// Sum over qubits of (I - Z)/2, and (N_alpha - N_beta)/2.
PauliSum number_operator(int n_qubits);
PauliSum sz_operator(int n_qubits);

}  // namespace cdr
