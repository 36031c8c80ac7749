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
#include <vector>

#include "cdr/circuit.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

inline constexpr int kDefaultMaxDensityQubits = 10;

struct NoiseModel {
  double p1 = 1e-3;
  double p2 = 1e-2;
  double readout_flip = 0.0;

  static NoiseModel noiseless() { return {0.0, 0.0, 0.0}; }
  void validate() const;
  bool is_noiseless() const { return p1 == 0 && p2 == 0 && readout_flip == 0; }
};

// Depolarizing convention: rho -> (1 - p) rho + p Tr_S(rho) (x) I_S / 2^|S|
// on the gate support S.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);

  int n_qubits() const { return n_; }
  std::complex<double> at(std::size_t r, std::size_t c) const {
    return rho_[r | (c << n_)];
  }
  const std::vector<std::complex<double>>& data() const { return rho_; }
  std::vector<std::complex<double>>& data() { return rho_; }
  double trace() const;
  // Classical flip probability applied to every measured qubit.
  double readout_flip() const { return flip_; }
  void set_readout_flip(double f) { flip_ = f; }

 private:
  int n_;
  double flip_ = 0.0;
  std::vector<std::complex<double>> rho_;
};

DensityMatrix run_noisy(const Circuit& c, const NoiseModel& nm,
                        int max_qubits = kDefaultMaxDensityQubits);
// Reference path: applies every gate and channel separately, no fusion.
DensityMatrix run_noisy_unfused(const Circuit& c, const NoiseModel& nm,
                                int max_qubits = kDefaultMaxDensityQubits);

double expectation_noisy(const DensityMatrix& rho, const PauliTerm& p);
double expectation_noisy(const DensityMatrix& rho, const PauliSum& o);

}  // namespace cdr
