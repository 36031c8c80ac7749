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

#include "cdr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "cdr/errors.hpp"
#include "cdr/hamiltonian.hpp"
#include "cdr/propagation.hpp"
#include "cdr/random.hpp"
#include "cdr/statevector.hpp"
#include "cdr/tups.hpp"
#include "cdr/vqe.hpp"

namespace fs = std::filesystem;

namespace cdr {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

long long to_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

std::vector<int> parse_grid(const std::string& text) {
  // "1:10,20:300:10,400"
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("grid: empty entry in '" + text + "'");
    std::vector<long long> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(to_int("grid", trim(p)));
    if (parts.size() == 1) {
      out.push_back(static_cast<int>(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      long long step = parts.size() == 3 ? parts[2] : 1;
      if (step <= 0) throw ConfigError("grid: step must be positive in '" + item + "'");
      for (long long v = parts[0]; v <= parts[1]; v += step)
        out.push_back(static_cast<int>(v));
    } else {
      throw ConfigError("grid: cannot parse '" + item + "'");
    }
  }
  return out;
}

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(worker_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
    });
  for (auto& t : pool) t.join();
}

const std::set<std::string> kKnownKeys = {
    "label",      "hamiltonian", "layers",  "theta.source", "theta.file",
    "noise.p1",   "noise.p2",    "noise.readout_flip",      "method",
    "model",      "mode",        "scan",    "grid",         "k",
    "N",          "M",           "k_min",   "k_max",        "repeats",
    "seed",       "output",      "plot"};

}  // namespace

// ---- key-value files -------------------------------------------------------

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (!section.empty()) key = section + "." + key;
    if (cfg.kv_.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
    cfg.kv_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

std::string KeyValueConfig::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get(const std::string& key,
                                const std::string& def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  char* end = nullptr;
  double v = std::strtod(it->second.c_str(), &end);
  if (it->second.empty() || *end != '\0')
    throw ConfigError(key + ": expected a number, got '" + it->second + "'");
  return v;
}

long long KeyValueConfig::get_int(const std::string& key, long long def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  return to_int(key, it->second);
}

// ---- experiment config -----------------------------------------------------

const char* method_name(Method m) {
  switch (m) {
    case Method::None: return "none";
    case Method::Traditional: return "traditional";
    case Method::Es: return "es";
    case Method::Nce: return "nce";
  }
  return "?";
}

const char* scan_name(ScanVar s) {
  switch (s) {
    case ScanVar::N: return "N";
    case ScanVar::K: return "k";
    case ScanVar::M: return "M";
    case ScanVar::PoolK: return "pool_k";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv,
                                           const std::string& base_dir) {
  for (const auto& [key, value] : kv.entries())
    if (!kKnownKeys.count(key)) throw ConfigError("unknown key '" + key + "'");
  ExperimentConfig c;
  c.label = kv.get("label", "experiment");
  c.hamiltonian = resolve(base_dir, kv.get("hamiltonian"));
  c.layers = static_cast<int>(kv.get_int("layers", c.layers));
  c.theta_source = lower(kv.get("theta.source", c.theta_source));
  c.theta_file = resolve(base_dir, kv.get("theta.file", ""));
  c.noise.p1 = kv.get_double("noise.p1", c.noise.p1);
  c.noise.p2 = kv.get_double("noise.p2", c.noise.p2);
  c.noise.readout_flip = kv.get_double("noise.readout_flip", c.noise.readout_flip);

  const std::string method = lower(kv.get("method", "traditional"));
  if (method == "none") c.method = Method::None;
  else if (method == "traditional") c.method = Method::Traditional;
  else if (method == "es") c.method = Method::Es;
  else if (method == "nce") c.method = Method::Nce;
  else throw ConfigError("method: unknown value '" + method + "'");

  const std::string model = lower(kv.get("model", "linear"));
  if (model == "linear") c.model = ModelFamily::Linear;
  else if (model == "quadratic") c.model = ModelFamily::Quadratic;
  else if (model == "nce") c.model = ModelFamily::Nce;
  else throw ConfigError("model: unknown value '" + model + "'");
  if (c.method == Method::Nce) c.model = ModelFamily::Nce;

  const std::string mode = lower(kv.get("mode", "bias"));
  if (mode == "bias") c.mode = CliffordMode::Bias;
  else if (mode == "zero") c.mode = CliffordMode::Zero;
  else throw ConfigError("mode: unknown value '" + mode + "'");

  const std::string scan = kv.get("scan", "N");
  if (scan == "N" || scan == "Ns" || scan == "N_s") c.scan = ScanVar::N;
  else if (scan == "k") c.scan = ScanVar::K;
  else if (scan == "M") c.scan = ScanVar::M;
  else if (scan == "pool_k") c.scan = ScanVar::PoolK;
  else throw ConfigError("scan: unknown variable '" + scan + "'");

  c.grid = parse_grid(kv.get("grid"));
  c.k = static_cast<int>(kv.get_int("k", c.k));
  c.N = static_cast<int>(kv.get_int("N", c.N));
  c.M = static_cast<int>(kv.get_int("M", c.M));
  c.k_min = static_cast<int>(kv.get_int("k_min", c.k_min));
  c.k_max = static_cast<int>(kv.get_int("k_max", c.k_max));
  c.repeats = static_cast<int>(kv.get_int("repeats", c.repeats));
  const std::string seed = kv.get("seed", "");
  if (!seed.empty()) {
    char* end = nullptr;
    c.seed = std::strtoull(seed.c_str(), &end, 0);
    if (*end != '\0') throw ConfigError("seed: expected an unsigned integer");
  }
  c.output = kv.get("output", c.label + ".csv");
  const std::string plot = lower(kv.get("plot", "false"));
  if (plot == "true" || plot == "1" || plot == "yes") c.plot = true;
  else if (plot == "false" || plot == "0" || plot == "no") c.plot = false;
  else throw ConfigError("plot: expected true or false");
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  auto kv = KeyValueConfig::load(path);
  if (!kv.has("label")) kv.set("label", fs::path(path).stem().string());
  std::string base = fs::path(path).parent_path().string();
  return from_kv(kv, base.empty() ? "." : base);
}

void ExperimentConfig::validate() const {
  if (hamiltonian.empty()) throw ConfigError("hamiltonian path is required");
  if (layers < 1) throw ConfigError("layers must be >= 1");
  if (theta_source != "file" && theta_source != "optimize")
    throw ConfigError("theta.source must be 'file' or 'optimize'");
  if (theta_source == "file" && theta_file.empty())
    throw ConfigError("theta.source = file needs theta.file");
  try {
    noise.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("noise: ") + e.what());
  }
  if (grid.empty()) throw ConfigError("scan grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw ConfigError("grid values must be >= 1");
    if (i && grid[i] <= grid[i - 1])
      throw ConfigError("grid must be strictly increasing");
  }
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (k < 0 || N < 1 || M < 1) throw ConfigError("k >= 0, N >= 1 and M >= 1 required");
  switch (method) {
    case Method::None:
      break;
    case Method::Traditional:
      if (scan != ScanVar::N && scan != ScanVar::K)
        throw ConfigError("traditional CDR scans N or k");
      break;
    case Method::Es:
      if (scan == ScanVar::PoolK) throw ConfigError("es cannot scan pool_k");
      if (scan == ScanVar::N && grid.back() > M)
        throw ConfigError("es: N grid exceeds the pool size M");
      if (scan == ScanVar::M && grid.front() < N)
        throw ConfigError("es: M grid must start at or above N");
      if (scan == ScanVar::K && N > M) throw ConfigError("es: N exceeds M");
      break;
    case Method::Nce:
      if (scan == ScanVar::M) throw ConfigError("nce scans N_s, k or pool_k");
      if (k_min < 1) throw ConfigError("nce: k_min must be >= 1");
      if (scan == ScanVar::K) {
        if (grid.front() <= k_min)
          throw ConfigError("nce: k_max grid must exceed k_min");
      } else if (k_max <= k_min) {
        throw ConfigError("nce: need k_max > k_min for two distinct k values");
      }
      break;
  }
  if (scan == ScanVar::PoolK && method != Method::Nce)
    throw ConfigError("pool_k scans need method = nce (the extrapolation model)");
  if (output.empty()) throw ConfigError("output file name is empty");
}

// ---- running ---------------------------------------------------------------

int worker_count() {
  if (const char* env = std::getenv("CDRKIT_WORKERS")) {
    long long w = to_int("CDRKIT_WORKERS", env);
    if (w < 1) throw ConfigError("CDRKIT_WORKERS must be >= 1");
    return static_cast<int>(w);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

double SampleCache::get_or(const std::string& key,
                           const std::function<double()>& f) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  double v = f();
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(key, v);
  return v;
}

std::size_t SampleCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

ExperimentSetup prepare(const ExperimentConfig& cfg) {
  ExperimentSetup s;
  const auto ints = load_fcidump(cfg.hamiltonian);
  s.hamiltonian = jordan_wigner(ints);
  TupsSpec spec;
  spec.n_orbitals = ints.n_orbitals;
  spec.layers = cfg.layers;
  spec.n_electrons = ints.n_electrons;
  s.target = build_tups(spec);
  std::vector<double> theta;
  if (cfg.theta_source == "file") {
    theta = load_angles(cfg.theta_file);
    if (theta.size() != s.target.n_params())
      throw ConfigError(cfg.theta_file + ": " + std::to_string(theta.size()) +
                        " angles for an ansatz with " +
                        std::to_string(s.target.n_params()) + " parameters");
  } else {
    theta = optimize(s.target, s.hamiltonian).theta_opt;
  }
  s.target.set_params(theta);
  s.n_non_clifford = count_non_clifford(s.target);
  return s;
}

namespace {

struct Runner {
  const ExperimentConfig& cfg;
  const ExperimentSetup& setup;
  SampleCache& cache;
  std::string exact_ctx, noisy_ctx;
  double target_noisy = 0.0;

  std::uint64_t seed(int repeat, int k) const {
    return derive_seed(cfg.seed, {static_cast<std::uint64_t>(repeat),
                                  static_cast<std::uint64_t>(k)});
  }

  std::vector<TrainingCircuit> circuits(int repeat, int k, int count) const {
    return generate_training_set(setup.target, k, count, cfg.mode, seed(repeat, k));
  }

  double exact(const TrainingCircuit& tc) {
    return cache.get_or(exact_ctx + tc.circuit_id, [&] {
      return exact_sample(tc, setup.hamiltonian).x_exact;
    });
  }
  double noisy(const TrainingCircuit& tc) {
    return cache.get_or(noisy_ctx + tc.circuit_id, [&] {
      return noisy_expectation(tc.circuit, cfg.noise, setup.hamiltonian);
    });
  }
  TrainingSample sample(const TrainingCircuit& tc) {
    TrainingSample s;
    s.k = tc.k;
    s.circuit_id = tc.circuit_id;
    s.x_exact = exact(tc);
    s.x_noisy = noisy(tc);
    return s;
  }

  // One repeat of the pipeline at one scan value; returns the prediction.
  double predicted(int v, int r) {
    switch (cfg.method) {
      case Method::None:
        return target_noisy;
      case Method::Traditional: {
        const int k = cfg.scan == ScanVar::K ? v : cfg.k;
        const int N = cfg.scan == ScanVar::N ? v : cfg.N;
        std::vector<TrainingSample> samples;
        for (const auto& tc : circuits(r, k, N)) samples.push_back(sample(tc));
        return predict(fit(samples, cfg.model), target_noisy);
      }
      case Method::Es: {
        const int k = cfg.scan == ScanVar::K ? v : cfg.k;
        const int N = cfg.scan == ScanVar::N ? v : cfg.N;
        const int M = cfg.scan == ScanVar::M ? v : cfg.M;
        auto pool = circuits(r, k, M);
        std::vector<TrainingSample> ranked;
        std::map<std::string, const TrainingCircuit*> by_id;
        for (const auto& tc : pool) {
          TrainingSample s;
          s.k = tc.k;
          s.circuit_id = tc.circuit_id;
          s.x_exact = exact(tc);
          s.x_noisy = std::numeric_limits<double>::quiet_NaN();
          ranked.push_back(s);
          by_id[tc.circuit_id] = &tc;
        }
        auto chosen = energy_sampling_select(std::move(ranked), N);
        for (auto& s : chosen) s.x_noisy = noisy(*by_id.at(s.circuit_id));
        return predict(fit(chosen, cfg.model), target_noisy);
      }
      case Method::Nce: {
        const int k_max = cfg.scan == ScanVar::K ? v : cfg.k_max;
        const int Ns = cfg.scan == ScanVar::N ? v : cfg.N;
        std::vector<TrainingSample> samples;
        for (auto [k, count] :
             nce_training_plan(setup.n_non_clifford, cfg.k_min, k_max, Ns))
          for (const auto& tc : circuits(r, k, count)) samples.push_back(sample(tc));
        return predict(fit(samples, ModelFamily::Nce), target_noisy,
                       setup.n_non_clifford);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

struct Outcome {
  bool ok = false;
  double value = 0.0;
  std::string error;
};

struct PoolOutcome {
  bool ok = false;
  std::string error;
  std::vector<PoolRow> rows;  // per grid point
};

ResultRow aggregate(int scan, const std::vector<Outcome>& outs, double reference,
                    double unmitigated) {
  ResultRow row;
  row.scan = scan;
  row.unmitigated_error = unmitigated;
  std::vector<double> err, pred;
  for (const auto& o : outs) {
    if (!o.ok) {
      row.flagged = true;
      if (row.note.empty()) row.note = o.error;
      continue;
    }
    pred.push_back(o.value);
    err.push_back(std::abs(o.value - reference));
  }
  row.repeats = static_cast<int>(err.size());
  if (err.empty()) {
    row.mean_abs_error = row.std = row.mean_predicted =
        std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  const double m = err.size();
  row.mean_abs_error = std::accumulate(err.begin(), err.end(), 0.0) / m;
  row.mean_predicted = std::accumulate(pred.begin(), pred.end(), 0.0) / m;
  double ss = 0;
  for (double e : err) ss += (e - row.mean_abs_error) * (e - row.mean_abs_error);
  row.std = err.size() > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
  return row;
}

std::string context_key(const ExperimentConfig& cfg, const ExperimentSetup& s,
                        bool with_noise) {
  std::ostringstream os;
  os.precision(17);
  os << fs::absolute(cfg.hamiltonian).lexically_normal().string() << '|'
     << cfg.layers << '|' << static_cast<int>(cfg.mode) << '|';
  for (double t : s.target.params()) os << t << ',';
  if (with_noise)
    os << '|' << cfg.noise.p1 << ',' << cfg.noise.p2 << ',' << cfg.noise.readout_flip;
  return fnv_hex(os.str()) + (with_noise ? ":n:" : ":e:");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, SampleCache* cache) {
  cfg.validate();
  const ExperimentSetup setup = prepare(cfg);
  SampleCache local;
  Runner run{cfg, setup, cache ? *cache : local, context_key(cfg, setup, false),
             context_key(cfg, setup, true)};

  ExperimentResult res;
  res.n_non_clifford = setup.n_non_clifford;
  res.target_exact = expectation(run_ideal(setup.target), setup.hamiltonian);
  res.target_noisy = noisy_expectation(setup.target, cfg.noise, setup.hamiltonian);
  run.target_noisy = res.target_noisy;
  const double unmitigated = std::abs(res.target_noisy - res.target_exact);
  const int R = cfg.repeats;

  if (cfg.scan != ScanVar::PoolK) {
    const std::size_t G = cfg.grid.size();
    std::vector<Outcome> outs(G * R);
    parallel_for(G * R, [&](std::size_t t) {
      const std::size_t g = t / R;
      const int r = static_cast<int>(t % R);
      try {
        outs[t].value = run.predicted(cfg.grid[g], r);
        outs[t].ok = true;
      } catch (const Error& e) {
        outs[t].error = e.what();
      }
    });
    for (std::size_t g = 0; g < G; ++g) {
      std::vector<Outcome> row(outs.begin() + g * R, outs.begin() + (g + 1) * R);
      res.rows.push_back(aggregate(cfg.grid[g], row, res.target_exact, unmitigated));
    }
    return res;
  }

  // Pool statistics per k, with the NCE model trained on the k_min..k_max
  // pools of the same repeat.
  const int n = setup.n_non_clifford;
  std::vector<PoolOutcome> pools(R);
  parallel_for(R, [&](std::size_t ri) {
    const int r = static_cast<int>(ri);
    auto& out = pools[ri];
    try {
      std::map<int, std::vector<TrainingSample>> by_k;
      auto pool_of = [&](int k) -> const std::vector<TrainingSample>& {
        auto it = by_k.find(k);
        if (it != by_k.end()) return it->second;
        std::vector<TrainingSample> v;
        for (const auto& tc : run.circuits(r, k, cfg.M)) v.push_back(run.sample(tc));
        return by_k.emplace(k, std::move(v)).first->second;
      };
      std::vector<TrainingSample> train;
      for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const auto& p = pool_of(k);
        train.insert(train.end(), p.begin(), p.end());
      }
      const auto model = fit(train, ModelFamily::Nce);
      for (int k : cfg.grid) {
        if (k > n)
          throw DomainError("pool k = " + std::to_string(k) + " exceeds n = " +
                            std::to_string(n));
        const auto& p = pool_of(k);
        PoolRow row;
        row.k = k;
        row.samples = static_cast<int>(p.size());
        for (const auto& s : p) {
          row.mean_x_exact += s.x_exact;
          row.mean_x_noisy += s.x_noisy;
          row.mean_x_extrapolated += predict(model, s.x_noisy, k);
        }
        row.mean_x_exact /= row.samples;
        row.mean_x_noisy /= row.samples;
        row.mean_x_extrapolated /= row.samples;
        out.rows.push_back(row);
      }
      out.ok = true;
    } catch (const Error& e) {
      out.error = e.what();
    }
  });
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    std::vector<Outcome> outs(R);
    PoolRow agg;
    agg.k = cfg.grid[g];
    int used = 0;
    for (int r = 0; r < R; ++r) {
      if (!pools[r].ok) {
        outs[r].error = pools[r].error;
        continue;
      }
      const PoolRow& p = pools[r].rows[g];
      outs[r].ok = true;
      outs[r].value = p.mean_x_extrapolated;
      agg.mean_x_exact += p.mean_x_exact;
      agg.mean_x_noisy += p.mean_x_noisy;
      agg.mean_x_extrapolated += p.mean_x_extrapolated;
      agg.samples = p.samples;
      ++used;
    }
    if (used) {
      agg.mean_x_exact /= used;
      agg.mean_x_noisy /= used;
      agg.mean_x_extrapolated /= used;
    }
    res.pool.push_back(agg);
    // Row error: extrapolated pool mean against that repeat's exact pool mean.
    std::vector<Outcome> shifted = outs;
    for (int r = 0; r < R; ++r)
      if (shifted[r].ok) shifted[r].value -= pools[r].rows[g].mean_x_exact;
    ResultRow row = aggregate(cfg.grid[g], shifted, 0.0, unmitigated);
    row.mean_predicted = used ? agg.mean_x_extrapolated
                              : std::numeric_limits<double>::quiet_NaN();
    res.rows.push_back(row);
  }
  return res;
}

// ---- output ----------------------------------------------------------------

void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "scan,mean_abs_error,std,mean_predicted,unmitigated_error,repeats\n";
  for (const auto& r : rows)
    os << r.scan << ',' << fmt(r.mean_abs_error) << ',' << fmt(r.std) << ','
       << fmt(r.mean_predicted) << ',' << fmt(r.unmitigated_error) << ','
       << r.repeats << '\n';
}

void write_pool_csv(std::ostream& os, const std::vector<PoolRow>& rows) {
  os << "k,mean_x_exact,mean_x_noisy,mean_x_extrapolated,samples\n";
  for (const auto& r : rows)
    os << r.k << ',' << fmt(r.mean_x_exact) << ',' << fmt(r.mean_x_noisy) << ','
       << fmt(r.mean_x_extrapolated) << ',' << r.samples << '\n';
}

std::string save_result(const ExperimentConfig& cfg, const ExperimentResult& r,
                        const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path csv = fs::path(out_dir) / cfg.output;
  const std::string stem = csv.stem().string();
  {
    std::ofstream f(csv);
    if (!f) throw Error("cannot write " + csv.string());
    write_result_csv(f, r.rows);
  }
  if (cfg.scan == ScanVar::PoolK) {
    std::ofstream f(fs::path(out_dir) / (stem + "_pool.csv"));
    write_pool_csv(f, r.pool);
  }
  if (cfg.plot) {
    std::ofstream f(fs::path(out_dir) / (stem + ".gp"));
    f << "set datafile separator ','\n"
      << "set terminal pngcairo size 800,600\n"
      << "set output '" << stem << ".png'\n"
      << "set xlabel '" << scan_name(cfg.scan) << "'\n";
    if (cfg.scan == ScanVar::PoolK) {
      f << "set ylabel 'energy (Ha)'\n"
        << "plot '" << stem << "_pool.csv' using 1:2 with linespoints title 'exact', \\\n"
        << "     '' using 1:3 with linespoints title 'noisy', \\\n"
        << "     '' using 1:4 with linespoints title 'extrapolated'\n";
    } else {
      f << "set ylabel 'mean abs error (Ha)'\n"
        << "plot '" << csv.filename().string()
        << "' using 1:2:3 with yerrorlines title '" << cfg.label << "'\n";
    }
  }
  return csv.string();
}

void check_comparable(const std::vector<ExperimentConfig>& cfgs) {
  if (cfgs.empty()) throw ConfigError("compare needs at least one config");
  const auto& a = cfgs.front();
  for (const auto& b : cfgs) {
    auto fail = [&](const std::string& what) {
      throw ConfigError("compare: " + b.label + " differs from " + a.label +
                        " in " + what);
    };
    if (fs::absolute(a.hamiltonian).lexically_normal() !=
        fs::absolute(b.hamiltonian).lexically_normal())
      fail("hamiltonian");
    if (a.layers != b.layers) fail("layers");
    if (a.theta_source != b.theta_source || a.theta_file != b.theta_file)
      fail("theta source");
    if (a.noise.p1 != b.noise.p1 || a.noise.p2 != b.noise.p2 ||
        a.noise.readout_flip != b.noise.readout_flip)
      fail("noise");
    if (a.seed != b.seed) fail("seed");
    if (a.scan != b.scan) fail("scan variable");
    if (a.grid != b.grid) fail("grid");
  }
}

void compare_methods(const std::vector<ExperimentConfig>& cfgs,
                     const std::vector<ExperimentResult>& results,
                     std::ostream& os) {
  check_comparable(cfgs);
  if (cfgs.size() != results.size())
    throw DimensionError("compare: one result per config required");
  os << "scan";
  for (const auto& c : cfgs) os << ',' << c.label << "_mean_abs_error," << c.label << "_std";
  os << '\n';
  for (std::size_t g = 0; g < cfgs.front().grid.size(); ++g) {
    os << cfgs.front().grid[g];
    for (const auto& r : results)
      os << ',' << fmt(r.rows[g].mean_abs_error) << ',' << fmt(r.rows[g].std);
    os << '\n';
  }
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("spearman: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

}  // namespace cdr
