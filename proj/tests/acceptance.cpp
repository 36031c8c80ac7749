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

// Acceptance report: one PASS/FAIL line per criterion.
//
//   acceptance [--ci] [--only LIST] [--allow-fail LIST] [--report FILE]
//
// --ci runs the trend suite with 3 repeats instead of 20. The exit status
// counts FAIL lines whose ids are not listed in --allow-fail.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cdr/cdr.hpp"
#include "cdr/circuit.hpp"
#include "cdr/density.hpp"
#include "cdr/hamiltonian.hpp"
#include "cdr/harness.hpp"
#include "cdr/propagation.hpp"
#include "cdr/random.hpp"
#include "cdr/stabilizer.hpp"
#include "cdr/statevector.hpp"
#include "cdr/tups.hpp"
#include "cdr/vqe.hpp"
#include "support/oracles.hpp"

using namespace cdr;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kRoot = CDRKIT_SOURCE_DIR;
const std::string kFcidump = kRoot + "/data/h4_sto3g.fcidump";

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::set<std::string> split_list(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

struct Report {
  std::set<std::string> allowed;
  std::vector<std::string> lines;
  int unexpected = 0;
  int failed = 0;

  void line(const std::string& id, bool pass, const std::string& text) {
    char buf[1024];
    const bool known = !pass && allowed.count(id);
    std::snprintf(buf, sizeof buf, "%s %-3s %s%s", pass ? "PASS" : "FAIL",
                  id.c_str(), text.c_str(), known ? "  [known deviation]" : "");
    std::printf("%s\n", buf);
    std::fflush(stdout);
    lines.push_back(buf);
    if (!pass) {
      ++failed;
      if (!known) ++unexpected;
    }
  }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---- 1 ---------------------------------------------------------------------

void simulator_cross_oracle(Report& rep) {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(7, {1}));
  double worst = 0;
  bool values_ok = true;
  long checks = 0;
  for (int i = 0; i < 100; ++i) {
    const Circuit c = oracle::random_clifford_circuit(8, 40, rng);
    const Tableau t = run_stabilizer(c);
    const StateVector sv = run_ideal(c);
    std::vector<PauliTerm> probes;
    for (int q = 0; q < 8; ++q) probes.push_back(PauliTerm::single(8, q, 'Z'));
    for (int r = 0; r < 8; ++r) probes.push_back(t.row(8 + static_cast<int>(rng.below(8))));
    for (int r = 0; r < 24; ++r) probes.push_back(oracle::random_pauli(8, rng));
    for (const auto& p : probes) {
      const PauliTerm h = p.with_phase(p.phase() & 2);
      const int a = pauli_expectation(t, h);
      const double b = expectation(sv, h);
      worst = std::max(worst, std::abs(a - b));
      values_ok = values_ok && (a == -1 || a == 0 || a == 1);
      ++checks;
    }
  }
  const double secs = seconds_since(t0);
  rep.line("1", worst < 1e-9 && values_ok && secs < 10.0,
           fmt("stabilizer vs statevector, 100 random Clifford circuits (8 qubits, "
               "depth 40), %ld Pauli probes: max |diff| = %.2e (< 1e-9), values in "
               "{-1,0,1}: %s, %.2f s (< 10 s)",
               checks, worst, values_ok ? "yes" : "no", secs));
}

// ---- 2 ---------------------------------------------------------------------

void jw_correctness(Report& rep) {
  const auto ints = load_fcidump(kFcidump);
  const auto h = jordan_wigner(ints);
  const Eigen::MatrixXcd Hq = oracle::dense_pauli_sum(h);
  const Eigen::MatrixXd Hf = oracle::fermionic_hamiltonian(ints);
  const double eq = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Hq).eigenvalues()(0);
  const double ef = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Hf).eigenvalues()(0);
  const double diff = std::abs(eq - ef);
  rep.line("2", diff < 1e-9,
           fmt("JW ground energy %.12f vs fermionic-operator matrix %.12f: "
               "|diff| = %.2e (< 1e-9)",
               eq, ef, diff));
}

// ---- 3 ---------------------------------------------------------------------

double fci_energy(const MolecularIntegrals& ints) {
  // Ground state in the n_electrons, Sz = 0 sector of the fermionic matrix.
  const Eigen::MatrixXd H = oracle::fermionic_hamiltonian(ints);
  std::vector<int> idx;
  for (int b = 0; b < H.rows(); ++b) {
    int na = 0, nb = 0;
    for (int p = 0; p < ints.n_orbitals; ++p) {
      na += (b >> (2 * p)) & 1;
      nb += (b >> (2 * p + 1)) & 1;
    }
    if (na + nb == ints.n_electrons && na == nb) idx.push_back(b);
  }
  Eigen::MatrixXd S(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) S(i, j) = H(idx[i], idx[j]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues()(0);
}

void vqe_reproduction(Report& rep) {
  const auto ints = load_fcidump(kFcidump);
  const auto h = jordan_wigner(ints);
  const double efci = fci_energy(ints);
  const double published[2] = {-3.712209, -3.712497};
  const auto t0 = Clock::now();
  double e[2];
  for (int i = 0; i < 2; ++i) {
    TupsSpec spec;
    spec.n_orbitals = ints.n_orbitals;
    spec.layers = i + 2;
    spec.n_electrons = ints.n_electrons;
    e[i] = optimize(build_tups(spec), h).energy;
  }
  const double secs = seconds_since(t0);
  for (int i = 0; i < 2; ++i) {
    const double d = std::abs(e[i] - published[i]);
    rep.line(i == 0 ? "3a" : "3b", d <= 5e-5 && secs < 300.0,
             fmt("VQE L=%d from theta=0: E = %.7f vs published %.6f, |diff| = %.2e "
                 "(<= 5e-5); |E - E_FCI| = %.2e with E_FCI = %.7f; both depths "
                 "%.1f s (< 300 s)",
                 i + 2, e[i], published[i], d, std::abs(e[i] - efci), efci, secs));
  }
}

// ---- 4 ---------------------------------------------------------------------

void structural_counts(Report& rep) {
  bool ok = true;
  std::string detail;
  for (int L : {1, 2, 3}) {
    TupsSpec spec;
    spec.layers = L;
    Circuit c = build_tups(spec);
    const int params = static_cast<int>(c.n_params());
    const int cx = two_qubit_gate_count(c);
    int nc = -1;
    if (L > 1) {
      c.set_params(load_angles(kRoot + "/data/theta_L" + std::to_string(L) + ".txt"));
      nc = count_non_clifford(c);
    }
    const int want_p = 9 * L, want_cx = 60 * L;
    ok = ok && params == want_p && cx == want_cx && (L == 1 || nc == want_p);
    detail += fmt("L=%d params %d/%d cx %d/%d", L, params, want_p, cx, want_cx);
    if (L > 1) detail += fmt(" non-Clifford at optimum %d/%d", nc, want_p);
    detail += "; ";
  }
  TupsSpec spec;
  spec.layers = 2;
  Circuit c = build_tups(spec);
  c.set_params(load_angles(kRoot + "/data/theta_L2.txt"));
  const auto set = generate_training_set(c, 2, 1000, CliffordMode::Bias, 1);
  std::set<std::string> ids;
  for (const auto& tc : set) ids.insert(tc.circuit_id);
  ok = ok && set.size() == 153 && ids.size() == 153;
  detail += fmt("k=2 training set %zu circuits, %zu distinct (153)", set.size(), ids.size());
  rep.line("4", ok, detail);
}

// ---- 5 ---------------------------------------------------------------------

void regression_identities(Report& rep) {
  const auto t0 = Clock::now();
  const auto h = jordan_wigner(load_fcidump(kFcidump));
  TupsSpec spec;
  spec.layers = 2;
  Circuit c = build_tups(spec);
  c.set_params(load_angles(kRoot + "/data/theta_L2.txt"));
  const NoiseModel quiet = NoiseModel::noiseless();
  const auto set = generate_training_set(c, 4, 40, CliffordMode::Bias, 11);
  const auto samples = build_samples(set, h, quiet);
  const auto model = fit(samples, ModelFamily::Linear);
  const double fit_dev = std::max(std::abs(model.coeffs[0] - 1.0), std::abs(model.coeffs[1]));
  const double exact = expectation(run_ideal(c), h);
  const double noisy = noisy_expectation(c, quiet, h);
  const double e2e = mitigate(noisy, model, 18, exact).abs_error;

  // NCE round trip on a random full-rank design.
  Rng rng(derive_seed(5, {5}));
  const std::vector<double> a0 = {0.3, -0.02, 0.05, 1.1, -0.4, 0.7};
  std::vector<TrainingSample> syn;
  for (int i = 0; i < 60; ++i) {
    TrainingSample s;
    s.k = 1 + static_cast<int>(rng.below(6));
    s.x_noisy = -3.0 + rng.uniform();
    const auto f = features(ModelFamily::Nce, s.x_noisy, s.k);
    s.x_exact = std::inner_product(f.begin(), f.end(), a0.begin(), 0.0);
    syn.push_back(s);
  }
  const auto nce = fit(syn, ModelFamily::Nce);
  double nce_dev = 0;
  for (int i = 0; i < 6; ++i) nce_dev = std::max(nce_dev, std::abs(nce.coeffs[i] - a0[i]));
  const double secs = seconds_since(t0);
  rep.line("5", fit_dev < 1e-10 && e2e < 1e-8 && nce_dev < 1e-8 && secs < 1.0,
           fmt("noise-free linear fit |a - (1,0)| = %.2e (< 1e-10), end-to-end "
               "error %.2e (< 1e-8), NCE round trip %.2e (< 1e-8), %.2f s (< 1 s)",
               fit_dev, e2e, nce_dev, secs));
}

// ---- 6 ---------------------------------------------------------------------

struct Trend {
  int repeats;
  SampleCache cache;

  ExperimentConfig base(int L) const {
    ExperimentConfig c;
    c.label = "acceptance";
    c.output = "acceptance.csv";
    c.hamiltonian = kFcidump;
    c.layers = L;
    c.theta_source = "file";
    c.theta_file = kRoot + "/data/theta_L" + std::to_string(L) + ".txt";
    c.noise = NoiseModel{};
    c.repeats = repeats;
    c.seed = 20240607;
    c.k = L == 2 ? 4 : 6;
    return c;
  }
  std::vector<ResultRow> run(const ExperimentConfig& c) {
    return run_experiment(c, &cache).rows;
  }
  double single(ExperimentConfig c, ScanVar scan, int value) {
    c.scan = scan;
    c.grid = {value};
    return run(c).front().mean_abs_error;
  }
};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

void trend_suite(Report& rep, int repeats, const std::set<std::string>& only) {
  Trend t{repeats, {}};
  const auto want = [&](const std::string& id) { return only.empty() || only.count(id); };
  const auto t0 = Clock::now();

  if (want("6a")) {
    std::string d;
    bool ok = true;
    for (int L : {2, 3}) {
      auto c = t.base(L);
      c.method = Method::Traditional;
      c.N = 153;
      c.mode = CliffordMode::Bias;
      const double bias = t.single(c, ScanVar::N, 153);
      c.mode = CliffordMode::Zero;
      const double zero = t.single(c, ScanVar::N, 153);
      ok = ok && bias < zero;
      d += fmt("L=%d k=%d: bias %.4f vs zero %.4f; ", L, c.k, bias, zero);
    }
    rep.line("6a", ok, "biasing beats zeroing at N=153 (R=" + std::to_string(repeats) + "): " + d);
  }
  if (want("6b")) {
    auto c = t.base(2);
    c.method = Method::Traditional;
    c.N = 153;
    c.scan = ScanVar::K;
    c.grid = {2, 4, 6, 8, 12, 16};
    const auto rows = t.run(c);
    std::vector<double> ks, err;
    std::string d;
    for (const auto& r : rows) {
      ks.push_back(r.scan);
      err.push_back(r.mean_abs_error);
      d += fmt("%d:%.4f ", r.scan, r.mean_abs_error);
    }
    const double rho = spearman(ks, err);
    rep.line("6b", rho <= -0.7,
             fmt("Spearman(k, error) = %.3f (<= -0.7), L=2 bias linear N=153 (R=%d): %s",
                 rho, repeats, d.c_str()));
  }
  if (want("6c")) {
    std::string d;
    bool ok = true;
    for (int L : {2, 3}) {
      auto c = t.base(L);
      c.method = Method::Es;
      c.M = 153;
      const double es = t.single(c, ScanVar::N, 30);
      c.method = Method::Traditional;
      const double tr = t.single(c, ScanVar::N, 30);
      ok = ok && es <= tr;
      d += fmt("L=%d: ES %.4f vs traditional %.4f; ", L, es, tr);
    }
    rep.line("6c", ok, "ES(N=30 of M=153) <= traditional(N=30) (R=" +
                           std::to_string(repeats) + "): " + d);
  }
  if (want("6d")) {
    std::string d;
    bool ok = true;
    for (int L : {2, 3})
      for (int N : {30, 50, 80}) {
        auto c = t.base(L);
        c.method = Method::Es;
        c.N = N;
        c.scan = ScanVar::M;
        c.grid = {N, 1000};
        const auto rows = t.run(c);
        ok = ok && rows[1].mean_abs_error < rows[0].mean_abs_error;
        d += fmt("L=%d N=%d: M=1000 %.4f vs M=N %.4f; ", L, N, rows[1].mean_abs_error,
                 rows[0].mean_abs_error);
      }
    rep.line("6d", ok, "ES error at M=1000 < at M=N (R=" + std::to_string(repeats) + "): " + d);
  }
  if (want("6e")) {
    std::string d;
    bool ok = true;
    for (int L : {2, 3}) {
      auto c = t.base(L);
      c.method = Method::Nce;
      c.scan = ScanVar::PoolK;
      c.grid = {1, 2, 3, 4, 5, 6};
      c.M = 1000;
      c.k_min = 1;
      c.k_max = 4;
      c.repeats = 1;
      const auto res = run_experiment(c, &t.cache);
      std::vector<double> k, ex, no;
      for (const auto& p : res.pool) {
        k.push_back(p.k);
        ex.push_back(p.mean_x_exact);
        no.push_back(p.mean_x_noisy);
      }
      const double se = slope(k, ex), sn = slope(k, no);
      ok = ok && se < 0 && std::abs(se) > 3 * std::abs(sn);
      d += fmt("L=%d: slope exact %.4f, noisy %.4f (ratio %.1f); ", L, se, sn,
               std::abs(se) / std::abs(sn));
    }
    rep.line("6e", ok, "pools k=1..6 (up to 1000 circuits each): exact slope < 0 and > 3x noisy: " + d);
  }
  if (want("6f")) {
    auto c = t.base(2);
    c.method = Method::Nce;
    c.k_min = 1;
    c.k_max = 4;
    const double nce = t.single(c, ScanVar::N, 1000);
    c.method = Method::Traditional;
    c.k = 4;
    const double tr = t.single(c, ScanVar::N, 1000);
    rep.line("6f", nce < tr,
             fmt("L=2 NCE(k=1..4, N_s<=1000) %.4f < traditional(k=4, N=1000) %.4f (R=%d)",
                 nce, tr, repeats));
  }
  std::printf("# trend suite %.1f s, %zu cached evaluations\n", seconds_since(t0),
              t.cache.size());
}

// ---- 7 ---------------------------------------------------------------------

void determinism(Report& rep) {
  auto render = [](const std::string& path, const char* workers) {
    setenv("CDRKIT_WORKERS", workers, 1);
    auto cfg = ExperimentConfig::load(path);
    cfg.repeats = 3;
    std::ostringstream os;
    write_result_csv(os, run_experiment(cfg).rows);
    return os.str();
  };
  bool ok = true;
  std::string d;
  for (const char* rel : {"/recipes/fig4/L2_es_linear.cfg", "/recipes/fig7/L2_nce.cfg"}) {
    const std::string path = kRoot + rel;
    auto cfg = ExperimentConfig::load(path);
    const std::string a = render(path, "1");
    const std::string b = render(path, "1");
    const std::string c = render(path, "3");
    const bool same = a == b && a == c;
    ok = ok && same;
    d += fmt("%s %s (%zu bytes); ", cfg.label.c_str(), same ? "identical" : "DIFFERENT",
             a.size());
  }
  unsetenv("CDRKIT_WORKERS");
  rep.line("7", ok, "rerun and 1 vs 3 workers give byte-identical CSV: " + d);
}

}  // namespace

int main(int argc, char** argv) {
  Report rep;
  int repeats = 20;
  std::set<std::string> only;
  std::string report_path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--ci") repeats = 3;
    else if (a == "--only" && i + 1 < argc) only = split_list(argv[++i]);
    else if (a == "--allow-fail" && i + 1 < argc) rep.allowed = split_list(argv[++i]);
    else if (a == "--report" && i + 1 < argc) report_path = argv[++i];
    else {
      std::fprintf(stderr, "usage: acceptance [--ci] [--only LIST] [--allow-fail LIST] [--report FILE]\n");
      return 2;
    }
  }
  const auto want = [&](const std::string& id) {
    if (only.empty()) return true;
    for (const auto& o : only)
      if (o.rfind(id, 0) == 0) return true;
    return false;
  };
  std::printf("# acceptance (trend repeats R=%d)\n", repeats);
  try {
    if (want("1")) simulator_cross_oracle(rep);
    if (want("2")) jw_correctness(rep);
    if (want("3")) vqe_reproduction(rep);
    if (want("4")) structural_counts(rep);
    if (want("5")) regression_identities(rep);
    if (want("6")) {
      std::set<std::string> sub;
      for (const auto& o : only)
        if (o.size() > 1 && o[0] == '6') sub.insert(o);
      trend_suite(rep, repeats, sub);
    }
    if (want("7")) determinism(rep);
  } catch (const std::exception& e) {
    std::printf("FAIL ERR %s\n", e.what());
    return 1;
  }
  std::printf("# %d of %zu criteria failed, %d unexpected\n", rep.failed,
              rep.lines.size(), rep.unexpected);
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    for (const auto& l : rep.lines) f << l << '\n';
  }
  return rep.unexpected == 0 ? 0 : 1;
}
