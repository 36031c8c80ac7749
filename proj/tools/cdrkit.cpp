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

// cdrkit command line: run, compare, vqe and validate experiment configs.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cdr/errors.hpp"
#include "cdr/harness.hpp"
#include "cdr/hamiltonian.hpp"
#include "cdr/tups.hpp"
#include "cdr/vqe.hpp"

namespace {

struct Overrides {
  std::uint64_t seed = 0;
  int repeats = 0;
  bool has_seed = false;
};

cdr::ExperimentConfig load(const std::string& path, const Overrides& o) {
  auto cfg = cdr::ExperimentConfig::load(path);
  if (o.has_seed) cfg.seed = o.seed;
  if (o.repeats > 0) cfg.repeats = o.repeats;
  cfg.validate();
  return cfg;
}

void report_flags(const cdr::ExperimentConfig& cfg, const cdr::ExperimentResult& r) {
  for (const auto& row : r.rows)
    if (row.flagged)
      std::fprintf(stderr, "warning: %s scan=%d used %d of %d repeats: %s\n",
                   cfg.label.c_str(), row.scan, row.repeats, cfg.repeats,
                   row.note.c_str());
}

int cmd_run(const std::string& path, const Overrides& o, const std::string& out) {
  auto cfg = load(path, o);
  auto r = cdr::run_experiment(cfg);
  report_flags(cfg, r);
  std::string csv = cdr::save_result(cfg, r, out);
  std::printf("%s: n=%d exact=%.10f noisy=%.10f -> %s\n", cfg.label.c_str(),
              r.n_non_clifford, r.target_exact, r.target_noisy, csv.c_str());
  return 0;
}

int cmd_compare(const std::vector<std::string>& paths, const Overrides& o,
                const std::string& out) {
  std::vector<cdr::ExperimentConfig> cfgs;
  for (const auto& p : paths) cfgs.push_back(load(p, o));
  cdr::check_comparable(cfgs);
  cdr::SampleCache cache;
  std::vector<cdr::ExperimentResult> results;
  for (const auto& c : cfgs) {
    results.push_back(cdr::run_experiment(c, &cache));
    report_flags(c, results.back());
    if (!out.empty()) cdr::save_result(c, results.back(), out);
  }
  cdr::compare_methods(cfgs, results, std::cout);
  return 0;
}

int cmd_vqe(const std::string& path) {
  auto cfg = cdr::ExperimentConfig::load(path);
  if (cfg.theta_file.empty())
    throw cdr::ConfigError("vqe: config has no theta.file to write");
  const auto ints = cdr::load_fcidump(cfg.hamiltonian);
  const auto h = cdr::jordan_wigner(ints);
  cdr::TupsSpec spec;
  spec.n_orbitals = ints.n_orbitals;
  spec.layers = cfg.layers;
  spec.n_electrons = ints.n_electrons;
  auto c = cdr::build_tups(spec);
  auto res = cdr::optimize(c, h);
  c.set_params(res.theta_opt);
  std::filesystem::path f(cfg.theta_file);
  if (f.has_parent_path()) std::filesystem::create_directories(f.parent_path());
  cdr::save_angles(cfg.theta_file, res.theta_opt);
  std::printf("L=%d E=%.10f sweeps=%d grad_steps=%d |g|=%.2e converged=%s "
              "non_clifford=%d -> %s\n",
              cfg.layers, res.energy, res.sweeps, res.grad_steps, res.grad_norm,
              res.converged ? "yes" : "no", cdr::count_non_clifford(c),
              cfg.theta_file.c_str());
  return 0;
}

int cmd_validate(const std::string& path) {
  auto cfg = cdr::ExperimentConfig::load(path);
  int n = -1;
  if (cfg.theta_source == "file") {
    n = cdr::prepare(cfg).n_non_clifford;
  } else {
    cdr::load_fcidump(cfg.hamiltonian).validate();
  }
  std::printf("%s: ok (method=%s scan=%s points=%zu repeats=%d n=%d)\n",
              cfg.label.c_str(), cdr::method_name(cfg.method),
              cdr::scan_name(cfg.scan), cfg.grid.size(), cfg.repeats, n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford data regression experiments"};
  app.require_subcommand(1);

  Overrides o;
  std::string config, out = "results";
  std::vector<std::string> configs;

  auto* run = app.add_subcommand("run", "run one experiment config");
  run->add_option("config", config, "config file")->required();
  auto* seed_opt = run->add_option("--seed", o.seed, "master seed");
  run->add_option("--repeats", o.repeats, "repeats per grid point")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out, "output directory");

  auto* cmp = app.add_subcommand("compare", "run configs and align their rows");
  cmp->add_option("configs", configs, "config files")->required();
  auto* cmp_seed = cmp->add_option("--seed", o.seed, "master seed");
  cmp->add_option("--repeats", o.repeats, "repeats per grid point")
      ->check(CLI::PositiveNumber);
  std::string cmp_out;
  cmp->add_option("--out", cmp_out, "also write each CSV here");

  auto* vqe = app.add_subcommand("vqe", "optimise the ansatz and write theta.file");
  vqe->add_option("config", config, "config file")->required();

  auto* val = app.add_subcommand("validate", "check a config without running it");
  val->add_option("config", config, "config file")->required();

  CLI11_PARSE(app, argc, argv);
  o.has_seed = seed_opt->count() > 0 || cmp_seed->count() > 0;

  try {
    if (run->parsed()) return cmd_run(config, o, out);
    if (cmp->parsed()) return cmd_compare(configs, o, cmp_out);
    if (vqe->parsed()) return cmd_vqe(config);
    if (val->parsed()) return cmd_validate(config);
  } catch (const cdr::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const cdr::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
