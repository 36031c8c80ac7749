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

#include "cdr/statevector.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "cdr/errors.hpp"
#include "cdr/kernels/kernels.hpp"

namespace cdr {

namespace {

const cplx kI{0.0, 1.0};

cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void apply_cx(std::vector<cplx>& v, int c, int t) {
  const std::uint64_t cm = std::uint64_t{1} << c, tm = std::uint64_t{1} << t;
  for (std::uint64_t i = 0; i < v.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(v[i], v[i | tm]);
}

}  // namespace

void gate_matrix(GateKind k, double angle, cplx m[4]) {
  const double r = 1.0 / std::sqrt(2.0);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (k) {
    case GateKind::H: m[0] = r; m[1] = r; m[2] = r; m[3] = -r; return;
    case GateKind::S: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = kI; return;
    case GateKind::Sdg: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = -kI; return;
    case GateKind::X: m[0] = 0; m[1] = 1; m[2] = 1; m[3] = 0; return;
    case GateKind::RZ:
      m[0] = {c, -s}; m[1] = 0; m[2] = 0; m[3] = {c, s}; return;
    case GateKind::RY: m[0] = c; m[1] = -s; m[2] = s; m[3] = c; return;
    case GateKind::RX:
      m[0] = c; m[1] = {0, -s}; m[2] = {0, -s}; m[3] = c; return;
    case GateKind::CX: break;
  }
  throw UnsupportedGateError("gate_matrix: not a single-qubit gate");
}

StateVector::StateVector(int n_qubits, std::uint64_t basis) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxDenseQubits)
    throw CapacityError("statevector width out of range");
  std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (basis >= dim) throw DimensionError("initial basis state out of range");
  amp_.assign(dim, 0.0);
  amp_[basis] = 1.0;
}

double StateVector::norm2() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

void StateVector::apply_matrix(int q, const cplx* m) {
  kernels::active().apply_1q(amp_.data(), n_, q, m);
}

void StateVector::apply(const Gate& g, double angle) {
  if (g.q0 >= n_ || g.q1 >= n_) throw DimensionError("gate outside register");
  if (g.kind == GateKind::CX) {
    apply_cx(amp_, g.q0, g.q1);
    return;
  }
  cplx m[4];
  gate_matrix(g.kind, angle, m);
  apply_matrix(g.q0, m);
}

StateVector run_ideal(const Circuit& c, std::uint64_t initial) {
  StateVector s(c.n_qubits(), initial);
  for (const auto& g : c.gates())
    s.apply(g, is_rotation(g.kind) ? c.angle(g) : 0.0);
  return s;
}

StateVector run_ideal_shifted(const Circuit& c, std::size_t gate_index,
                              double shift, std::uint64_t initial) {
  StateVector s(c.n_qubits(), initial);
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    double a = is_rotation(g.kind) ? c.angle(g) : 0.0;
    if (i == gate_index) a += shift;
    s.apply(g, a);
  }
  return s;
}

double expectation(const StateVector& s, const PauliTerm& p) {
  if (p.n_qubits() != s.n_qubits())
    throw DimensionError("expectation: width mismatch");
  const auto& v = s.amplitudes();
  const std::uint64_t x = p.x(), z = p.z();
  cplx acc = 0;
  for (std::uint64_t b = 0; b < v.size(); ++b) {
    cplx t = std::conj(v[b ^ x]) * v[b];
    acc += (std::popcount(b & z) & 1) ? -t : t;
  }
  acc *= i_pow(p.phase() + std::popcount(x & z));
  return acc.real();
}

double expectation(const StateVector& s, const PauliSum& o) {
  if (o.n_qubits != s.n_qubits())
    throw DimensionError("expectation: width mismatch");
  const auto& v = s.amplitudes();
  // Group terms sharing an X mask so the overlap vector is built once.
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < o.terms.size(); ++i)
    groups[o.terms[i].second.x()].push_back(i);
  std::vector<cplx> w(v.size());
  double total = 0;
  for (const auto& [x, idx] : groups) {
    for (std::uint64_t b = 0; b < v.size(); ++b) w[b] = std::conj(v[b ^ x]) * v[b];
    for (std::size_t i : idx) {
      const auto& [coef, p] = o.terms[i];
      const std::uint64_t z = p.z();
      cplx acc = 0;
      for (std::uint64_t b = 0; b < w.size(); ++b)
        acc += (std::popcount(b & z) & 1) ? -w[b] : w[b];
      total += coef * (acc * i_pow(p.phase() + std::popcount(x & z))).real();
    }
  }
  return total;
}

}  // namespace cdr
