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
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdr/cdr.hpp"
#include "cdr/circuit.hpp"
#include "cdr/density.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

enum class Method { None, Traditional, Es, Nce };
enum class ScanVar { N, K, M, PoolK };

// Flat "section.key = value" store; "[section]" headers prefix later keys.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& def) const;
  double get_double(const std::string& key, double def) const;
  long long get_int(const std::string& key, long long def) const;
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

struct ExperimentConfig {
  std::string label;
  std::string hamiltonian;
  int layers = 2;
  std::string theta_source = "file";  // file | optimize
  std::string theta_file;
  NoiseModel noise;
  Method method = Method::Traditional;
  ModelFamily model = ModelFamily::Linear;
  CliffordMode mode = CliffordMode::Bias;
  ScanVar scan = ScanVar::N;
  std::vector<int> grid;
  int k = 4;
  int N = 153;
  int M = 1000;
  int k_min = 1;
  int k_max = 4;
  int repeats = 20;
  std::uint64_t seed = 20240607;
  std::string output;
  bool plot = false;

  static ExperimentConfig from_kv(const KeyValueConfig& kv,
                                  const std::string& base_dir = ".");
  static ExperimentConfig load(const std::string& path);
  void validate() const;
};

struct ResultRow {
  int scan = 0;
  double mean_abs_error = 0.0;
  double std = 0.0;
  double mean_predicted = 0.0;
  double unmitigated_error = 0.0;
  int repeats = 0;
  bool flagged = false;
  std::string note;
};

struct PoolRow {
  int k = 0;
  double mean_x_exact = 0.0;
  double mean_x_noisy = 0.0;
  double mean_x_extrapolated = 0.0;
  int samples = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<PoolRow> pool;  // PoolK scans only
  double target_exact = 0.0;
  double target_noisy = 0.0;
  int n_non_clifford = 0;
};

// Number of worker threads: CDRKIT_WORKERS, else hardware concurrency.
int worker_count();

// Memo of circuit evaluations keyed by (context fingerprint, circuit_id).
// Values are pure functions of the key, so sharing it across experiments and
// threads cannot change results.
class SampleCache {
 public:
  double get_or(const std::string& key, const std::function<double()>& f);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, double> map_;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                SampleCache* cache = nullptr);

// Loads the Hamiltonian and builds the ansatz; theta from the angle file or
// from a VQE run started at zero.
struct ExperimentSetup {
  PauliSum hamiltonian;
  Circuit target;
  int n_non_clifford = 0;
};
ExperimentSetup prepare(const ExperimentConfig& cfg);

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_pool_csv(std::ostream& os, const std::vector<PoolRow>& rows);
// Writes the CSV (and companions) under out_dir, returns the CSV path.
std::string save_result(const ExperimentConfig& cfg, const ExperimentResult& r,
                        const std::string& out_dir);

// Aligned table: scan, then <label>_mean_abs_error,<label>_std per config.
void compare_methods(const std::vector<ExperimentConfig>& cfgs,
                     const std::vector<ExperimentResult>& results,
                     std::ostream& os);
void check_comparable(const std::vector<ExperimentConfig>& cfgs);

double spearman(const std::vector<double>& a, const std::vector<double>& b);

const char* method_name(Method m);
const char* scan_name(ScanVar s);

}  // namespace cdr
