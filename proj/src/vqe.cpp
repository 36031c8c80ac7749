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

#include "cdr/vqe.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cdr/errors.hpp"
#include "cdr/statevector.hpp"

namespace cdr {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double t) {
  t = std::remainder(t, 2 * kPi);
  return t <= -kPi ? t + 2 * kPi : t;
}

// Trigonometric polynomial a0 + sum_l a_l cos(l t) + b_l sin(l t).
struct TrigPoly {
  double a0 = 0;
  std::vector<double> a, b;

  double value(double t) const {
    double v = a0;
    for (std::size_t l = 0; l < a.size(); ++l)
      v += a[l] * std::cos((l + 1) * t) + b[l] * std::sin((l + 1) * t);
    return v;
  }
  double d1(double t) const {
    double v = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
      double k = l + 1.0;
      v += k * (-a[l] * std::sin(k * t) + b[l] * std::cos(k * t));
    }
    return v;
  }
  double d2(double t) const {
    double v = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
      double k = l + 1.0;
      v -= k * k * (a[l] * std::cos(k * t) + b[l] * std::sin(k * t));
    }
    return v;
  }
};

// Exact interpolation from 2d+1 equispaced samples at t0 + 2 pi j / (2d+1).
TrigPoly reconstruct(double t0, const std::vector<double>& f) {
  const int m = static_cast<int>(f.size());
  const int d = (m - 1) / 2;
  TrigPoly p;
  p.a.assign(d, 0.0);
  p.b.assign(d, 0.0);
  for (int j = 0; j < m; ++j) p.a0 += f[j] / m;
  for (int l = 1; l <= d; ++l)
    for (int j = 0; j < m; ++j) {
      double t = t0 + 2 * kPi * j / m;
      p.a[l - 1] += 2.0 / m * f[j] * std::cos(l * t);
      p.b[l - 1] += 2.0 / m * f[j] * std::sin(l * t);
    }
  return p;
}

double global_argmin(const TrigPoly& p) {
  const int d = static_cast<int>(p.a.size());
  const int grid = 64 * d;
  double best_t = 0, best_v = p.value(0);
  for (int i = 1; i < grid; ++i) {
    double t = -kPi + 2 * kPi * i / grid;
    double v = p.value(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double t = best_t;
  for (int it = 0; it < 50; ++it) {
    double h = p.d2(t);
    if (h <= 0) break;
    double step = p.d1(t) / h;
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return p.value(t) <= best_v ? wrap_pi(t) : best_t;
}

Circuit with_theta(const Circuit& c, const std::vector<double>& theta) {
  Circuit cc = c;
  cc.set_params(theta);
  return cc;
}

}  // namespace

double energy(const Circuit& c, const PauliSum& h,
              const std::vector<double>& theta) {
  return expectation(run_ideal(with_theta(c, theta)), h);
}

std::vector<int> param_multiplicity(const Circuit& c) {
  std::vector<int> m(c.n_params(), 0);
  for (const auto& g : c.gates())
    if (is_rotation(g.kind)) ++m[g.param];
  return m;
}

std::vector<double> parameter_shift_gradient(const Circuit& c,
                                             const PauliSum& h,
                                             const std::vector<double>& theta) {
  Circuit cc = with_theta(c, theta);
  std::vector<double> grad(c.n_params(), 0.0);
  const auto& gates = cc.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    if (!is_rotation(g.kind)) continue;
    double ep = expectation(run_ideal_shifted(cc, i, kPi / 2), h);
    double em = expectation(run_ideal_shifted(cc, i, -kPi / 2), h);
    grad[g.param] += g.sign * 0.5 * (ep - em);
  }
  return grad;
}

std::vector<double> rotosolve_sweep(const Circuit& c, const PauliSum& h,
                                    const std::vector<double>& theta_in,
                                    std::vector<double>* energies) {
  std::vector<double> theta = theta_in;
  const auto mult = param_multiplicity(c);
  double e_cur = energy(c, h, theta);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const int d = mult[j];
    if (d == 0) continue;
    const double t0 = theta[j];
    auto eval = [&](double t) {
      theta[j] = t;
      double e = energy(c, h, theta);
      theta[j] = t0;
      return e;
    };
    double cand;
    if (d == 1) {
      double ep = eval(t0 + kPi / 2), em = eval(t0 - kPi / 2);
      cand = t0 - kPi / 2 - std::atan2(2 * e_cur - ep - em, ep - em);
    } else {
      const int m = 2 * d + 1;
      std::vector<double> f(m);
      f[0] = e_cur;
      for (int k = 1; k < m; ++k) f[k] = eval(t0 + 2 * kPi * k / m);
      cand = global_argmin(reconstruct(t0, f));
    }
    cand = wrap_pi(cand);
    double e_new = eval(cand);
    if (e_new <= e_cur) {
      theta[j] = cand;
      e_cur = e_new;
    }
    if (energies) energies->push_back(e_cur);
  }
  return theta;
}

VqeResult optimize(const Circuit& c, const PauliSum& h, const VqeOptions& opts) {
  return optimize_from(c, h, std::vector<double>(c.n_params(), 0.0), opts);
}

VqeResult optimize_from(const Circuit& c, const PauliSum& h,
                        std::vector<double> theta, const VqeOptions& opts) {
  if (theta.size() != c.n_params())
    throw DimensionError("initial parameter vector has the wrong length");
  VqeResult res;
  double e = energy(c, h, theta);
  res.trace.push_back(e);
  for (res.sweeps = 0; res.sweeps < opts.max_sweeps;) {
    theta = rotosolve_sweep(c, h, theta);
    ++res.sweeps;
    double e_new = energy(c, h, theta);
    res.trace.push_back(e_new);
    if (opts.verbose)
      std::fprintf(stderr, "rotosolve sweep %d  E = %.12f\n", res.sweeps, e_new);
    bool done = e - e_new < opts.tol_rotosolve;
    e = e_new;
    if (done) break;
  }

  // Quasi-Newton refinement (BFGS with backtracking line search).
  const int n = static_cast<int>(theta.size());
  using Vec = Eigen::VectorXd;
  auto to_vec = [](const std::vector<double>& v) {
    return Vec(Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  auto to_std = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  Vec x = to_vec(theta);
  Vec g = to_vec(parameter_shift_gradient(c, h, theta));
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  res.grad_norm = n ? g.cwiseAbs().maxCoeff() : 0.0;
  for (res.grad_steps = 0;
       res.grad_steps < opts.max_grad_steps && res.grad_norm >= opts.tol_grad;) {
    Vec p = -hinv * g;
    if (g.dot(p) >= 0) {
      hinv.setIdentity();
      p = -g;
    }
    double alpha = 1.0, e_try = e;
    Vec x_try = x;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_try = x + alpha * p;
      e_try = energy(c, h, to_std(x_try));
      if (e_try <= e + 1e-4 * alpha * g.dot(p)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++res.grad_steps;
    if (!accepted) {
      if (hinv.isIdentity()) break;
      hinv.setIdentity();
      continue;
    }
    Vec g_new = to_vec(parameter_shift_gradient(c, h, to_std(x_try)));
    Vec s = x_try - x, y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-14) {
      double rho = 1.0 / sy;
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      hinv = (I - rho * s * y.transpose()) * hinv * (I - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    x = x_try;
    g = g_new;
    e = e_try;
    res.trace.push_back(e);
    res.grad_norm = g.cwiseAbs().maxCoeff();
    if (opts.verbose)
      std::fprintf(stderr, "bfgs step %d  E = %.12f  |g| = %.3e\n", res.grad_steps,
                   e, res.grad_norm);
  }
  res.theta_opt = to_std(x);
  for (auto& t : res.theta_opt) t = wrap_pi(t);
  res.energy = energy(c, h, res.theta_opt);
  res.iterations = res.sweeps + res.grad_steps;
  res.converged = res.grad_norm < opts.tol_grad;
  return res;
}

void save_angles(const std::string& path, const std::vector<double>& theta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write angle file '" + path + "'");
  char buf[64];
  for (double t : theta) {
    std::snprintf(buf, sizeof buf, "%.17g\n", t);
    out << buf;
  }
}

std::vector<double> load_angles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open angle file '" + path + "'");
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v;
    if (!(ls >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("bad angle", lineno);
    }
    std::string rest;
    if (ls >> rest) throw ParseError("one angle per line expected", lineno);
    if (!std::isfinite(v)) throw ParseError("non-finite angle", lineno);
    out.push_back(v);
  }
  return out;
}

}  // namespace cdr
