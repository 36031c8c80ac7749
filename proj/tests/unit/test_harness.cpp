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
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cdr/errors.hpp"
#include "cdr/harness.hpp"

namespace cdr {
namespace {

namespace fs = std::filesystem;

const std::string kData = CDRKIT_SOURCE_DIR "/data";

std::string base_config(const std::string& extra) {
  return "label = t\nhamiltonian = h4_sto3g.fcidump\nlayers = 2\n"
         "theta.file = theta_L2.txt\nrepeats = 2\nseed = 5\n" + extra;
}

ExperimentConfig cfg(const std::string& extra) {
  return ExperimentConfig::from_kv(KeyValueConfig::parse(base_config(extra)), kData);
}

TEST(KeyValue, SectionsAndComments) {
  const auto kv = KeyValueConfig::parse("# c\na = 1\n[noise]\np1 = 0.5  # trailing\n\n[theta]\nfile = x\n");
  EXPECT_EQ(kv.get("a"), "1");
  EXPECT_EQ(kv.get_double("noise.p1", 0), 0.5);
  EXPECT_EQ(kv.get("theta.file"), "x");
  EXPECT_EQ(kv.get("missing", "d"), "d");
  EXPECT_THROW(kv.get("missing"), ConfigError);
}

TEST(KeyValue, ParseErrorsCarryLines) {
  try {
    KeyValueConfig::parse("a = 1\na = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(KeyValueConfig::parse("novalue\n"), ParseError);
  EXPECT_THROW(KeyValueConfig::parse("[open\n"), ParseError);
  EXPECT_THROW(KeyValueConfig::parse("x = abc\n").get_int("x", 0), ConfigError);
}

TEST(Config, GridAndDefaults) {
  const auto c = cfg("grid = 3:9:3,12,20:22\n");
  EXPECT_EQ(c.grid, (std::vector<int>{3, 6, 9, 12, 20, 21, 22}));
  EXPECT_EQ(c.method, Method::Traditional);
  EXPECT_EQ(c.mode, CliffordMode::Bias);
  EXPECT_EQ(c.scan, ScanVar::N);
  EXPECT_EQ(c.output, "t.csv");
  EXPECT_TRUE(fs::path(c.hamiltonian).is_absolute() || c.hamiltonian.find(kData) == 0);
}

TEST(Config, Rejections) {
  EXPECT_THROW(cfg("grid = 3\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 5,3\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 0\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 3\nmethod = magic\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 3\nnoise.p1 = 2\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 3\nscan = pool_k\nmethod = traditional\n"), ConfigError);
  EXPECT_THROW(cfg("grid = 3\nmethod = nce\nscan = N\nk_min = 3\nk_max = 3\n"), ConfigError);
}

TEST(Config, ValidateAfterEdit) {
  auto c = cfg("grid = 3\n");
  c.repeats = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, NceForcesModel) {
  const auto c = cfg("grid = 10\nmethod = nce\nmodel = linear\nk_min = 1\nk_max = 4\n");
  EXPECT_EQ(c.model, ModelFamily::Nce);
}

TEST(Config, AllRecipesValidate) {
  int n = 0;
  for (const auto& e : fs::recursive_directory_iterator(CDRKIT_SOURCE_DIR "/recipes")) {
    if (e.path().extension() != ".cfg" || e.path().parent_path().filename() == "vqe") continue;
    EXPECT_NO_THROW(ExperimentConfig::load(e.path().string())) << e.path();
    ++n;
  }
  EXPECT_GE(n, 60);
}

TEST(Stats, Spearman) {
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0, 1e-15);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0, 1e-15);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {1, 3, 2, 4}), 0.8, 1e-12);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {1, 1, 2, 2}), 2 * std::sqrt(0.2), 1e-12);
}

TEST(Csv, ResultHeaderAndNan) {
  std::ostringstream os;
  ResultRow r;
  r.scan = 10;
  r.mean_abs_error = 0.125;
  r.std = std::nan("");
  r.mean_predicted = -3.5;
  r.unmitigated_error = 0.25;
  r.repeats = 3;
  write_result_csv(os, {r});
  EXPECT_EQ(os.str(),
            "scan,mean_abs_error,std,mean_predicted,unmitigated_error,repeats\n"
            "10,0.125,nan,-3.5,0.25,3\n");
}

TEST(Harness, WorkerCountFromEnvironment) {
  ::setenv("CDRKIT_WORKERS", "3", 1);
  EXPECT_EQ(worker_count(), 3);
  ::unsetenv("CDRKIT_WORKERS");
  EXPECT_GE(worker_count(), 1);
}

TEST(Harness, ZeroNoiseHasNoError) {
  for (const char* m : {"grid = 10,20\nmethod = traditional\n", "grid = 20\nmethod = es\nM = 20\n",
                        "grid = 10,20\nmethod = nce\nk_min = 1\nk_max = 3\n"}) {
    // ES with N = M; a strict subset of this pool selects only
    // Hartree-Fock-degenerate circuits (identical x), see Regression.RankDeficient.
    const auto c = cfg(std::string("k = 2\n") + m +
                       "noise.p1 = 0\nnoise.p2 = 0\nnoise.readout_flip = 0\n");
    const auto r = run_experiment(c);
    ASSERT_FALSE(r.rows.empty());
    for (const auto& row : r.rows) EXPECT_LT(row.mean_abs_error, 1e-8) << m;
  }
}

TEST(Harness, DeterministicAcrossWorkerCounts) {
  const auto c = cfg("grid = 1,3\nscan = k\nN = 12\n");
  ::setenv("CDRKIT_WORKERS", "1", 1);
  const auto a = run_experiment(c);
  ::setenv("CDRKIT_WORKERS", "3", 1);
  SampleCache cache;
  const auto b = run_experiment(c, &cache);
  const auto d = run_experiment(c, &cache);
  ::unsetenv("CDRKIT_WORKERS");
  EXPECT_GT(cache.size(), 0u);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].mean_abs_error, b.rows[i].mean_abs_error);
    EXPECT_EQ(a.rows[i].std, b.rows[i].std);
    EXPECT_EQ(b.rows[i].mean_predicted, d.rows[i].mean_predicted);
    EXPECT_EQ(a.rows[i].repeats, 2);
  }
  EXPECT_GT(a.target_noisy, a.target_exact);
}

TEST(Harness, CompareRequiresMatchingSetup) {
  const auto a = cfg("grid = 10\n");
  auto b = cfg("grid = 10\nmethod = es\nM = 40\n");
  EXPECT_NO_THROW(check_comparable({a, b}));
  b.grid = {20};
  EXPECT_THROW(check_comparable({a, b}), ConfigError);
}

}  // namespace
}  // namespace cdr
