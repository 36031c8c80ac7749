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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cdr/cdr.hpp"
#include "cdr/errors.hpp"
#include "cdr/hamiltonian.hpp"
#include "cdr/random.hpp"
#include "cdr/stabilizer.hpp"
#include "cdr/statevector.hpp"
#include "cdr/tups.hpp"
#include "cdr/vqe.hpp"

namespace cdr {
namespace {

const PauliSum& h4_qubit() {
  static const auto h = jordan_wigner(load_fcidump(CDRKIT_SOURCE_DIR "/data/h4_sto3g.fcidump"));
  return h;
}

Circuit target(int L) {
  auto c = build_tups({4, L});
  c.set_params(load_angles(std::string(CDRKIT_SOURCE_DIR "/data/theta_L") + std::to_string(L) + ".txt"));
  return c;
}

TrainingSample sample(double exact, double noisy, int k = 0) {
  TrainingSample s;
  s.x_exact = exact;
  s.x_noisy = noisy;
  s.k = k;
  return s;
}

TEST(TrainingSet, Binomials) {
  EXPECT_EQ(binomial(18, 2), 153u);
  EXPECT_EQ(binomial(27, 6), 296010u);
  EXPECT_EQ(binomial(5, 7), 0u);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

TEST(TrainingSet, EnumeratesAllPairs) {
  const auto c = target(2);
  const auto set = generate_training_set(c, 2, 200, CliffordMode::Bias, 1);
  ASSERT_EQ(set.size(), 153u);
  std::set<std::string> ids;
  for (const auto& tc : set) {
    ids.insert(tc.circuit_id);
    EXPECT_EQ(tc.k, 2);
    EXPECT_EQ(count_non_clifford(tc.circuit), 2);
    EXPECT_EQ(tc.circuit_id, subset_digest(tc.cliffordized));
  }
  EXPECT_EQ(ids.size(), 153u);
}

TEST(TrainingSet, SampledSubsetsAreDistinctAndSeeded) {
  const auto c = target(2);
  const auto a = generate_training_set(c, 4, 100, CliffordMode::Zero, 42);
  const auto b = generate_training_set(c, 4, 100, CliffordMode::Zero, 42);
  ASSERT_EQ(a.size(), 100u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ids.insert(a[i].circuit_id);
    EXPECT_EQ(a[i].circuit_id, b[i].circuit_id);
    EXPECT_EQ(count_non_clifford(a[i].circuit), 4);
  }
  EXPECT_EQ(ids.size(), 100u);
}

TEST(TrainingSet, Extremes) {
  const auto c = target(2);
  const auto full = generate_training_set(c, 18, 10, CliffordMode::Bias, 3);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0].circuit.params(), c.params());
  const auto k0 = generate_training_set(c, 0, 10, CliffordMode::Bias, 3);
  ASSERT_EQ(k0.size(), 1u);
  EXPECT_TRUE(is_clifford_circuit(k0[0].circuit));
  const auto s = exact_sample(k0[0], h4_qubit());
  EXPECT_NEAR(s.x_exact, expectation(run_ideal(k0[0].circuit), h4_qubit()), 1e-10);
  EXPECT_NEAR(s.x_exact, expectation(run_stabilizer(k0[0].circuit), h4_qubit()), 1e-12);
  EXPECT_THROW(generate_training_set(c, 19, 10, CliffordMode::Bias, 3), DomainError);
}

TEST(Samples, NoiselessAndNoisy) {
  const auto c = target(2);
  const auto set = generate_training_set(c, 4, 12, CliffordMode::Bias, 5);
  for (const auto& s : build_samples(set, h4_qubit(), NoiseModel::noiseless()))
    EXPECT_NEAR(s.x_exact, s.x_noisy, 1e-10);
  double shift = 0;
  for (const auto& s : build_samples(set, h4_qubit(), NoiseModel{})) shift += s.x_noisy - s.x_exact;
  EXPECT_GT(shift, 0.0);
}

TEST(Regression, LinearExactLineAndIdentity) {
  const auto m = fit({sample(2, 1), sample(4, 2), sample(6, 3)}, ModelFamily::Linear);
  ASSERT_EQ(m.coeffs.size(), 2u);
  EXPECT_NEAR(m.coeffs[0], 2, 1e-12);
  EXPECT_NEAR(m.coeffs[1], 0, 1e-12);
  const auto id = fit({sample(-1, -1), sample(0.5, 0.5), sample(3, 3)}, ModelFamily::Linear);
  EXPECT_NEAR(id.coeffs[0], 1, 1e-10);
  EXPECT_NEAR(id.coeffs[1], 0, 1e-10);
}

TEST(Regression, PredictCoefficientStructure) {
  EXPECT_EQ(predict({ModelFamily::Linear, {1, 0}}, 0.7), 0.7);
  EXPECT_EQ(predict({ModelFamily::Quadratic, {0, 1, 0}}, 0.7), 0.7);
  const RegressionModel q{ModelFamily::Quadratic, {0.3, -1.2, 0.5}};
  const RegressionModel nce{ModelFamily::Nce, {0.3, 0, 0, -1.2, 0, 0.5}};
  for (int k : {0, 3, 18}) EXPECT_NEAR(predict(nce, 0.7, k), predict(q, 0.7), 1e-15);
  const auto f = features(ModelFamily::Nce, 2.0, 3);
  EXPECT_EQ(f, (std::vector<double>{4, 9, 6, 2, 3, 1}));
}

TEST(Regression, NceRoundTrip) {
  const std::vector<double> truth = {0.05, -0.02, 0.01, 0.9, 0.3, -0.4};
  Rng rng(41);
  std::vector<TrainingSample> data;
  for (int i = 0; i < 60; ++i) {
    const int k = 1 + static_cast<int>(rng.below(6));
    const double x = 4 * rng.uniform() - 2;
    data.push_back(sample(predict({ModelFamily::Nce, truth}, x, k), x, k));
  }
  const auto m = fit(data, ModelFamily::Nce);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(m.coeffs[i], truth[i], 1e-8);
  EXPECT_NEAR(predict(m, -1.3, 18), predict({ModelFamily::Nce, truth}, -1.3, 18), 1e-8);
  EXPECT_LT(residual_sum_of_squares(m, data), 1e-16);
}

TEST(Regression, RankDeficientGivesMinimumNorm) {
  const double c = -3.5;
  const auto m = fit({sample(c, c), sample(c, c), sample(c, c)}, ModelFamily::Linear);
  EXPECT_NEAR(m.coeffs[0], c * c / (c * c + 1), 1e-12);
  EXPECT_NEAR(m.coeffs[1], c / (c * c + 1), 1e-12);
  EXPECT_NEAR(predict(m, c), c, 1e-12);
}

TEST(Regression, OptimalAndAffineEquivariant) {
  Rng rng(47);
  std::vector<TrainingSample> data, shifted;
  for (int i = 0; i < 30; ++i) {
    const double x = rng.uniform();
    data.push_back(sample(1.3 * x - 0.2 + 0.05 * (rng.uniform() - 0.5), x));
    shifted.push_back(sample(data.back().x_exact, x + 0.7));
  }
  const auto m = fit(data, ModelFamily::Linear);
  const double rss = residual_sum_of_squares(m, data);
  for (int t = 0; t < 100; ++t) {
    auto p = m;
    for (auto& a : p.coeffs) a += 1e-3 * (rng.uniform() - 0.5);
    EXPECT_LE(rss, residual_sum_of_squares(p, data));
  }
  const auto ms = fit(shifted, ModelFamily::Linear);
  EXPECT_NEAR(ms.coeffs[1], m.coeffs[1] - m.coeffs[0] * 0.7, 1e-10);
  EXPECT_NEAR(predict(ms, 1.2), predict(m, 0.5), 1e-10);
}

TEST(Regression, Errors) {
  EXPECT_THROW(fit({sample(1, 1)}, ModelFamily::Linear), UnderdeterminedError);
  std::vector<TrainingSample> same_k;
  for (int i = 0; i < 10; ++i) same_k.push_back(sample(i, i * 0.5, 2));
  EXPECT_THROW(fit(same_k, ModelFamily::Nce), DegenerateFeatureError);
  EXPECT_THROW(predict({ModelFamily::Linear, {1, 2, 3}}, 0.0), DimensionError);
}

TEST(EnergySampling, SelectsLowestExact) {
  const auto sel = energy_sampling_select({sample(3, 0), sample(1, 0), sample(2, 0)}, 2);
  ASSERT_EQ(sel.size(), 2u);
  std::vector<double> e = {sel[0].x_exact, sel[1].x_exact};
  std::sort(e.begin(), e.end());
  EXPECT_EQ(e, (std::vector<double>{1, 2}));
  EXPECT_EQ(energy_sampling_select({sample(3, 0), sample(1, 0)}, 2).size(), 2u);
  EXPECT_THROW(energy_sampling_select({sample(3, 0)}, 2), DomainError);
}

TEST(EnergySampling, FullPoolEqualsTraditional) {
  Rng rng(53);
  std::vector<TrainingSample> pool;
  for (int i = 0; i < 25; ++i) {
    pool.push_back(sample(rng.uniform(), rng.uniform()));
    pool.back().circuit_id = std::to_string(i);
  }
  const auto a = fit(pool, ModelFamily::Quadratic);
  const auto b = fit(energy_sampling_select(pool, 25), ModelFamily::Quadratic);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a.coeffs[i], b.coeffs[i], 1e-12);
}

TEST(EnergySampling, BeatsRandomSubsetOnMeanExact) {
  Rng rng(43);
  std::vector<TrainingSample> pool;
  for (int i = 0; i < 1000; ++i) pool.push_back(sample(rng.uniform(), 0));
  const auto sel = energy_sampling_select(pool, 30);
  double ms = 0, mr = 0;
  for (const auto& s : sel) ms += s.x_exact;
  for (int i = 0; i < 30; ++i) mr += pool[rng.below(pool.size())].x_exact;
  EXPECT_LE(ms, mr);
}

TEST(Nce, TrainingPlan) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(nce_training_plan(18, 1, 4, 40), (P{{1, 18}, {2, 40}, {3, 40}, {4, 40}}));
  EXPECT_EQ(nce_training_plan(27, 1, 6, 1000),
            (P{{1, 27}, {2, 351}, {3, 1000}, {4, 1000}, {5, 1000}, {6, 1000}}));
  EXPECT_THROW(nce_training_plan(18, 0, 4, 10), DomainError);
  EXPECT_THROW(nce_training_plan(18, 2, 18, 10), DomainError);
}

TEST(Pipeline, ZeroNoiseIsIdentity) {
  const auto c = target(2);
  const auto set = generate_training_set(c, 3, 20, CliffordMode::Bias, 7);
  const auto samples = build_samples(set, h4_qubit(), NoiseModel::noiseless());
  const auto m = fit(samples, ModelFamily::Linear);
  const double exact = energy(c, h4_qubit(), c.params());
  const auto rep = mitigate(exact, m, 18, exact);
  EXPECT_LT(rep.abs_error, 1e-8);
}

TEST(Csv, TrainingHeaderAndRows) {
  std::ostringstream os;
  auto s = sample(-3.5, -3.25, 4);
  s.circuit_id = "00000000deadbeef";
  write_training_csv(os, {s});
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "circuit_id,k,x_exact,x_noisy");
  std::getline(is, line);
  EXPECT_EQ(line, "00000000deadbeef,4,-3.5,-3.25");
}

}  // namespace
}  // namespace cdr
