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

#include "cdr/circuit.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

struct VqeOptions {
  double tol_rotosolve = 1e-8;
  double tol_grad = 1e-6;
  int max_sweeps = 200;
  int max_grad_steps = 1000;
  bool verbose = false;
};

struct VqeResult {
  std::vector<double> theta_opt;
  double energy = 0.0;
  int iterations = 0;
  int sweeps = 0;
  int grad_steps = 0;
  double grad_norm = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

// Energy of c at theta (statevector, starting from |0...0>).
double energy(const Circuit& c, const PauliSum& h,
              const std::vector<double>& theta);

// Number of rotation gates per parameter.
std::vector<int> param_multiplicity(const Circuit& c);

// dE/dtheta by the two-term shift rule applied to every gate occurrence.
std::vector<double> parameter_shift_gradient(const Circuit& c,
                                             const PauliSum& h,
                                             const std::vector<double>& theta);

// One coordinate pass. A parameter used by m rotation gates gives an energy
// that is a trigonometric polynomial of degree m, reconstructed from 2m + 1
// samples; m = 1 reduces to the three-point rule.
std::vector<double> rotosolve_sweep(const Circuit& c, const PauliSum& h,
                                    const std::vector<double>& theta,
                                    std::vector<double>* energies = nullptr);

VqeResult optimize(const Circuit& c, const PauliSum& h,
                   const VqeOptions& opts = {});
VqeResult optimize_from(const Circuit& c, const PauliSum& h,
                        std::vector<double> theta0, const VqeOptions& opts);

void save_angles(const std::string& path, const std::vector<double>& theta);
std::vector<double> load_angles(const std::string& path);

}  // namespace cdr
