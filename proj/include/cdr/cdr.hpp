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

#include "cdr/circuit.hpp"
#include "cdr/density.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

struct TrainingCircuit {
  Circuit circuit;
  std::vector<int> cliffordized;  // sorted parameter indices
  int k = 0;
  std::string circuit_id;
};

struct TrainingSample {
  double x_exact = 0.0;
  double x_noisy = 0.0;
  int k = 0;
  std::string circuit_id;
};

enum class ModelFamily { Linear, Quadratic, Nce };

struct RegressionModel {
  ModelFamily family = ModelFamily::Linear;
  std::vector<double> coeffs;
};

struct MitigationReport {
  double predicted = 0.0;
  double abs_error = 0.0;
  std::vector<double> coeffs;
};

// Saturates at UINT64_MAX.
std::uint64_t binomial(int n, int k);

// FNV-1a digest of a sorted index set, as 16 hex digits.
std::string subset_digest(const std::vector<int>& indices);

// All k-subsets of the non-Clifford parameters when N >= C(n, k), otherwise N
// distinct uniformly drawn ones. The kept parameters retain their angles.
std::vector<TrainingCircuit> generate_training_set(const Circuit& c, int k,
                                                   int N, CliffordMode mode,
                                                   std::uint64_t seed);

// x_exact from the tableau when the circuit is fully Clifford, otherwise
// from the statevector; x_noisy from noisy_expectation (exact Pauli
// propagation, density matrix past the term cap).
TrainingSample exact_sample(const TrainingCircuit& tc, const PauliSum& h);
void add_noisy(TrainingSample& s, const TrainingCircuit& tc, const PauliSum& h,
               const NoiseModel& nm);
std::vector<TrainingSample> build_samples(
    const std::vector<TrainingCircuit>& circuits, const PauliSum& h,
    const NoiseModel& nm);

int coefficient_count(ModelFamily f);
std::vector<double> features(ModelFamily f, double x_noisy, int k);
RegressionModel fit(const std::vector<TrainingSample>& samples,
                    ModelFamily family);
double predict(const RegressionModel& m, double x_noisy, int k = 0);
double residual_sum_of_squares(const RegressionModel& m,
                               const std::vector<TrainingSample>& samples);

std::vector<TrainingSample> energy_sampling_select(
    std::vector<TrainingSample> pool, int N);

// (k, N_s) with N_s = min(N, C(n, k)).
std::vector<std::pair<int, int>> nce_training_plan(int n, int k_min, int k_max,
                                                   int N);

MitigationReport mitigate(double target_x_noisy, const RegressionModel& m,
                          int n, double reference);

void write_training_csv(std::ostream& os,
                        const std::vector<TrainingSample>& samples);

const char* family_name(ModelFamily f);

}  // namespace cdr
