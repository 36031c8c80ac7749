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

#include <cmath>
#include <numbers>
#include <sstream>

#include "cdr/circuit.hpp"
#include "cdr/errors.hpp"
#include "cdr/tups.hpp"

namespace cdr {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Circuit, CliffordAnglePredicate) {
  EXPECT_TRUE(is_clifford_angle(kPi / 2));
  EXPECT_FALSE(is_clifford_angle(kPi / 4));
  EXPECT_TRUE(is_clifford_angle(2 * kPi + 1e-13));
  EXPECT_TRUE(is_clifford_angle(-kPi));
  EXPECT_FALSE(is_clifford_angle(1e-7));
}

TEST(Circuit, NearestCliffordAngle) {
  EXPECT_EQ(nearest_clifford_angle(0.3), 0.0);
  EXPECT_NEAR(nearest_clifford_angle(1.2), kPi / 2, 1e-15);
  EXPECT_EQ(nearest_clifford_angle(kPi / 4), 0.0);
  for (double t = -7.0; t < 7.0; t += 0.013)
    EXPECT_TRUE(is_clifford_angle(nearest_clifford_angle(t))) << t;
}

Circuit two_param() {
  Circuit c(2);
  c.ry(0, c.add_param(0.3));
  c.cx(0, 1);
  c.rz(1, c.add_param(1.2));
  return c;
}

TEST(Circuit, CliffordizeModes) {
  const auto c = two_param();
  const auto same = cliffordize(c, {}, CliffordMode::Bias);
  EXPECT_EQ(same.params(), c.params());
  const auto z = cliffordize(c, {1}, CliffordMode::Zero);
  EXPECT_EQ(z.params()[0], 0.3);
  EXPECT_EQ(z.params()[1], 0.0);
  EXPECT_EQ(z.roles()[1], ParamRole::Cliffordized);
  const auto b = cliffordize(c, {0, 1}, CliffordMode::Bias);
  EXPECT_EQ(count_non_clifford(b), 0);
  EXPECT_TRUE(is_clifford_circuit(b));
  EXPECT_NEAR(b.params()[1], kPi / 2, 1e-15);
}

TEST(Circuit, CliffordizeIdempotentAndCounts) {
  auto c = build_tups({4, 2});
  std::vector<double> th(c.n_params());
  for (std::size_t i = 0; i < th.size(); ++i) th[i] = 0.1 + 0.37 * i;
  c.set_params(th);
  const int n = count_non_clifford(c);
  const std::vector<int> S = {0, 3, 5, 11};
  const auto once = cliffordize(c, S, CliffordMode::Bias);
  const auto twice = cliffordize(once, S, CliffordMode::Bias);
  EXPECT_EQ(once.params(), twice.params());
  EXPECT_EQ(count_non_clifford(once), n - 4);
}

TEST(Circuit, Counts) {
  EXPECT_EQ(two_qubit_gate_count(Circuit(3)), 0);
  EXPECT_EQ(count_non_clifford(build_tups({4, 2})), 0);
  EXPECT_EQ(two_qubit_gate_count(build_tups({4, 2})), 120);
  EXPECT_EQ(two_qubit_gate_count(build_tups({4, 3})), 180);
}

TEST(Circuit, RejectsBadGates) {
  Circuit c(2);
  EXPECT_THROW(c.cx(0, 0), DimensionError);
  EXPECT_THROW(c.h(2), DimensionError);
  EXPECT_THROW(c.rz(0, 5), DomainError);
  EXPECT_THROW(cliffordize(c, {3}, CliffordMode::Zero), DomainError);
}

TEST(Circuit, DumpParseRoundTrip) {
  Circuit c(3);
  c.h(0);
  c.cx(0, 2);
  const int p = c.add_param(0.7);
  c.rz(2, p);
  c.ry(1, p, -1);
  c.sdg(1);
  std::stringstream ss;
  dump_circuit(ss, c);
  const auto r = parse_circuit(ss, 3, c.params());
  ASSERT_EQ(r.gates().size(), c.gates().size());
  for (std::size_t i = 0; i < r.gates().size(); ++i) {
    EXPECT_EQ(r.gates()[i].kind, c.gates()[i].kind);
    EXPECT_EQ(r.gates()[i].q0, c.gates()[i].q0);
    EXPECT_EQ(r.gates()[i].q1, c.gates()[i].q1);
    EXPECT_EQ(r.gates()[i].param, c.gates()[i].param);
    EXPECT_EQ(r.gates()[i].sign, c.gates()[i].sign);
  }
  std::stringstream bad("FOO 1\n");
  EXPECT_THROW(parse_circuit(bad, 3, {}), ParseError);
}

}  // namespace
}  // namespace cdr
