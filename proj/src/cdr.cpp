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

#include "cdr/cdr.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "cdr/errors.hpp"
#include "cdr/random.hpp"
#include "cdr/propagation.hpp"
#include "cdr/stabilizer.hpp"
#include "cdr/statevector.hpp"

namespace cdr {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (c > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

std::string subset_digest(const std::vector<int>& indices) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int v : indices) {
    auto u = static_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

TrainingCircuit make_training_circuit(const Circuit& c,
                                      const std::vector<int>& non_clifford,
                                      const std::vector<int>& kept_pos,
                                      CliffordMode mode) {
  std::vector<char> keep(non_clifford.size(), 0);
  for (int p : kept_pos) keep[p] = 1;
  TrainingCircuit tc;
  for (std::size_t i = 0; i < non_clifford.size(); ++i)
    if (!keep[i]) tc.cliffordized.push_back(non_clifford[i]);
  tc.circuit = cliffordize(c, tc.cliffordized, mode);
  tc.k = static_cast<int>(kept_pos.size());
  tc.circuit_id = subset_digest(tc.cliffordized);
  return tc;
}

}  // namespace

std::vector<TrainingCircuit> generate_training_set(const Circuit& c, int k,
                                                   int N, CliffordMode mode,
                                                   std::uint64_t seed) {
  const std::vector<int> idx = non_clifford_indices(c);
  const int n = static_cast<int>(idx.size());
  if (k < 0 || k > n)
    throw DomainError("k = " + std::to_string(k) + " outside 0.." + std::to_string(n));
  if (N < 1) throw DomainError("training set size must be positive");
  std::vector<TrainingCircuit> out;
  const std::uint64_t total = binomial(n, k);
  if (static_cast<std::uint64_t>(N) >= total) {
    std::vector<int> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      out.push_back(make_training_circuit(c, idx, pos, mode));
      int i = k - 1;
      while (i >= 0 && pos[i] == n - k + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
    return out;
  }
  Rng rng(seed);
  std::set<std::vector<int>> seen;
  std::vector<int> perm(n);
  const long long cap = 50LL * N;
  long long tries = 0;
  while (static_cast<int>(out.size()) < N) {
    if (++tries > cap)
      throw Error("subset sampling exceeded the retry cap of " + std::to_string(cap));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < k; ++i) {
      auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(perm[i], perm[j]);
    }
    std::vector<int> kept(perm.begin(), perm.begin() + k);
    std::sort(kept.begin(), kept.end());
    if (!seen.insert(kept).second) continue;
    out.push_back(make_training_circuit(c, idx, kept, mode));
  }
  return out;
}

TrainingSample exact_sample(const TrainingCircuit& tc, const PauliSum& h) {
  TrainingSample s;
  s.k = tc.k;
  s.circuit_id = tc.circuit_id;
  s.x_noisy = std::numeric_limits<double>::quiet_NaN();
  if (is_clifford_circuit(tc.circuit))
    s.x_exact = expectation(run_stabilizer(tc.circuit), h);
  else
    s.x_exact = expectation(run_ideal(tc.circuit), h);
  return s;
}

void add_noisy(TrainingSample& s, const TrainingCircuit& tc, const PauliSum& h,
               const NoiseModel& nm) {
  try {
    s.x_noisy = noisy_expectation(tc.circuit, nm, h);
  } catch (const Error& e) {
    throw Error("circuit " + tc.circuit_id + ": " + e.what());
  }
}

std::vector<TrainingSample> build_samples(
    const std::vector<TrainingCircuit>& circuits, const PauliSum& h,
    const NoiseModel& nm) {
  std::vector<TrainingSample> out;
  out.reserve(circuits.size());
  for (const auto& tc : circuits) {
    TrainingSample s;
    try {
      s = exact_sample(tc, h);
    } catch (const Error& e) {
      throw Error("circuit " + tc.circuit_id + ": " + e.what());
    }
    add_noisy(s, tc, h, nm);
    out.push_back(s);
  }
  return out;
}

int coefficient_count(ModelFamily f) {
  switch (f) {
    case ModelFamily::Linear: return 2;
    case ModelFamily::Quadratic: return 3;
    case ModelFamily::Nce: return 6;
  }
  return 0;
}

std::vector<double> features(ModelFamily f, double x, int k) {
  const double kk = k;
  switch (f) {
    case ModelFamily::Linear: return {x, 1.0};
    case ModelFamily::Quadratic: return {x * x, x, 1.0};
    case ModelFamily::Nce: return {x * x, kk * kk, kk * x, x, kk, 1.0};
  }
  return {};
}

RegressionModel fit(const std::vector<TrainingSample>& samples,
                    ModelFamily family) {
  const int p = coefficient_count(family);
  const int m = static_cast<int>(samples.size());
  if (m < p)
    throw UnderdeterminedError(std::to_string(m) + " samples for " +
                               std::to_string(p) + " coefficients");
  if (family == ModelFamily::Nce) {
    std::set<int> ks;
    for (const auto& s : samples) ks.insert(s.k);
    if (ks.size() < 2)
      throw DegenerateFeatureError("NCE fit needs at least two distinct k values");
  }
  Eigen::MatrixXd A(m, p);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    auto f = features(family, samples[i].x_noisy, samples[i].k);
    for (int j = 0; j < p; ++j) A(i, j) = f[j];
    y(i) = samples[i].x_exact;
  }
  Eigen::VectorXd a = A.completeOrthogonalDecomposition().solve(y);
  RegressionModel model;
  model.family = family;
  model.coeffs.assign(a.data(), a.data() + p);
  return model;
}

double predict(const RegressionModel& m, double x_noisy, int k) {
  auto f = features(m.family, x_noisy, k);
  if (m.coeffs.size() != f.size())
    throw DimensionError("model coefficient count does not match its family");
  double v = 0;
  for (std::size_t i = 0; i < f.size(); ++i) v += m.coeffs[i] * f[i];
  return v;
}

double residual_sum_of_squares(const RegressionModel& m,
                               const std::vector<TrainingSample>& samples) {
  double rss = 0;
  for (const auto& s : samples) {
    double r = s.x_exact - predict(m, s.x_noisy, s.k);
    rss += r * r;
  }
  return rss;
}

std::vector<TrainingSample> energy_sampling_select(
    std::vector<TrainingSample> pool, int N) {
  if (N < 0 || N > static_cast<int>(pool.size()))
    throw DomainError("energy sampling: N = " + std::to_string(N) +
                      " exceeds pool size " + std::to_string(pool.size()));
  std::stable_sort(pool.begin(), pool.end(),
                   [](const TrainingSample& a, const TrainingSample& b) {
                     if (a.x_exact != b.x_exact) return a.x_exact < b.x_exact;
                     return a.circuit_id < b.circuit_id;
                   });
  pool.resize(N);
  return pool;
}

std::vector<std::pair<int, int>> nce_training_plan(int n, int k_min, int k_max,
                                                   int N) {
  if (!(1 <= k_min && k_min <= k_max && k_max < n))
    throw DomainError("NCE plan needs 1 <= k_min <= k_max < n");
  if (N < 1) throw DomainError("NCE plan needs N >= 1");
  std::vector<std::pair<int, int>> plan;
  for (int k = k_min; k <= k_max; ++k) {
    std::uint64_t c = binomial(n, k);
    plan.emplace_back(k, static_cast<int>(std::min<std::uint64_t>(N, c)));
  }
  return plan;
}

MitigationReport mitigate(double target_x_noisy, const RegressionModel& m, int n,
                          double reference) {
  MitigationReport r;
  r.predicted = predict(m, target_x_noisy, m.family == ModelFamily::Nce ? n : 0);
  r.abs_error = std::abs(r.predicted - reference);
  r.coeffs = m.coeffs;
  return r;
}

void write_training_csv(std::ostream& os,
                        const std::vector<TrainingSample>& samples) {
  os << "circuit_id,k,x_exact,x_noisy\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g\n", s.circuit_id.c_str(),
                  s.k, s.x_exact, s.x_noisy);
    os << buf;
  }
}

const char* family_name(ModelFamily f) {
  switch (f) {
    case ModelFamily::Linear: return "linear";
    case ModelFamily::Quadratic: return "quadratic";
    case ModelFamily::Nce: return "nce";
  }
  return "?";
}

}  // namespace cdr
