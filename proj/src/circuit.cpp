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

#include "cdr/circuit.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

constexpr double kQuarter = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;

void check_finite(double theta) {
  if (!std::isfinite(theta)) throw DomainError("non-finite angle");
}

double wrap_2pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

}  // namespace

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::X: return "X";
    case GateKind::CX: return "CX";
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
    case GateKind::RX: return "RX";
  }
  return "?";
}

bool is_rotation(GateKind k) {
  return k == GateKind::RZ || k == GateKind::RY || k == GateKind::RX;
}

int Circuit::add_param(double value) {
  params_.push_back(value);
  roles_.push_back(ParamRole::Free);
  return static_cast<int>(params_.size()) - 1;
}

void Circuit::set_param(std::size_t i, double value) {
  if (i >= params_.size()) throw DomainError("parameter index out of range");
  params_[i] = value;
}

void Circuit::set_params(const std::vector<double>& values) {
  if (values.size() != params_.size())
    throw DimensionError("expected " + std::to_string(params_.size()) +
                         " parameters, got " + std::to_string(values.size()));
  params_ = values;
}

void Circuit::set_role(std::size_t i, ParamRole r) {
  if (i >= roles_.size()) throw DomainError("parameter index out of range");
  roles_[i] = r;
}

void Circuit::push(const Gate& g) {
  auto bad = [&](int q) { return q < 0 || q >= n_; };
  if (bad(g.q0)) throw DimensionError("gate qubit out of range");
  if (g.kind == GateKind::CX) {
    if (bad(g.q1) || g.q1 == g.q0) throw DimensionError("bad CX qubits");
  } else if (g.q1 != -1) {
    throw DimensionError("single-qubit gate with a second qubit");
  }
  if (is_rotation(g.kind)) {
    if (g.param < 0 || g.param >= static_cast<int>(params_.size()))
      throw DomainError("rotation parameter reference does not resolve");
    if (g.sign != 1 && g.sign != -1) throw DomainError("rotation sign must be +-1");
  } else if (g.param != -1) {
    throw DomainError("fixed gate with a parameter reference");
  }
  gates_.push_back(g);
}

bool is_clifford_angle(double theta, double tol) {
  check_finite(theta);
  double t = wrap_2pi(theta) / kQuarter;
  double d = std::abs(t - std::round(t)) * kQuarter;
  return d <= tol;
}

double nearest_clifford_angle(double theta) {
  check_finite(theta);
  double t = wrap_2pi(theta) / kQuarter;
  double m = std::floor(t);
  if (t - m > 0.5) m += 1;
  int q = static_cast<int>(m) % 4;
  return q * kQuarter;
}

int clifford_quarter_turns(double theta, double tol) {
  if (!is_clifford_angle(theta, tol))
    throw UnsupportedGateError("angle is not a multiple of pi/2");
  double t = wrap_2pi(theta) / kQuarter;
  return static_cast<int>(std::llround(t)) % 4;
}

Circuit cliffordize(const Circuit& c, const std::vector<int>& indices,
                    CliffordMode mode) {
  Circuit out = c;
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(c.n_params()))
      throw DomainError("cliffordize: index " + std::to_string(i) +
                        " out of range");
    double v = mode == CliffordMode::Zero ? 0.0
                                          : nearest_clifford_angle(c.params()[i]);
    out.set_param(i, v);
    out.set_role(i, ParamRole::Cliffordized);
  }
  return out;
}

int count_non_clifford(const Circuit& c) {
  return static_cast<int>(non_clifford_indices(c).size());
}

std::vector<int> non_clifford_indices(const Circuit& c) {
  std::vector<int> out;
  for (std::size_t i = 0; i < c.n_params(); ++i)
    if (!is_clifford_angle(c.params()[i])) out.push_back(static_cast<int>(i));
  return out;
}

int two_qubit_gate_count(const Circuit& c) {
  int n = 0;
  for (const auto& g : c.gates()) n += g.arity() == 2;
  return n;
}

bool is_clifford_circuit(const Circuit& c) {
  for (const auto& g : c.gates())
    if (is_rotation(g.kind) && !is_clifford_angle(c.angle(g))) return false;
  return true;
}

void dump_circuit(std::ostream& os, const Circuit& c) {
  for (const auto& g : c.gates()) {
    os << gate_name(g.kind) << ' ' << g.q0;
    if (g.q1 >= 0) os << ' ' << g.q1;
    if (g.param >= 0) os << ' ' << (g.sign < 0 ? "-" : "") << g.param;
    os << '\n';
  }
}

Circuit parse_circuit(std::istream& is, int n_qubits,
                      const std::vector<double>& params) {
  Circuit c(n_qubits);
  for (double p : params) c.add_param(p);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    Gate g;
    bool found = false;
    for (GateKind k : {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X,
                       GateKind::CX, GateKind::RZ, GateKind::RY, GateKind::RX}) {
      if (name == gate_name(k)) {
        g.kind = k;
        found = true;
      }
    }
    if (!found) throw ParseError("unknown gate '" + name + "'", lineno);
    if (!(ls >> g.q0)) throw ParseError("missing qubit", lineno);
    if (g.kind == GateKind::CX && !(ls >> g.q1))
      throw ParseError("missing target qubit", lineno);
    if (is_rotation(g.kind)) {
      std::string ref;
      if (!(ls >> ref) || ref.empty()) throw ParseError("missing parameter", lineno);
      if (ref[0] == '-') {
        g.sign = -1;
        ref.erase(0, 1);
      }
      try {
        std::size_t used = 0;
        g.param = std::stoi(ref, &used);
        if (used != ref.size()) throw std::invalid_argument(ref);
      } catch (const std::exception&) {
        throw ParseError("bad parameter reference", lineno);
      }
    }
    try {
      c.push(g);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return c;
}

}  // namespace cdr
