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

#include "cdr/stabilizer.hpp"

#include "cdr/errors.hpp"

namespace cdr {

namespace {

using u64 = std::uint64_t;

// Rewrites (x, z, sign) of every row; Y is represented as x = z = 1.
template <class F>
void update_rows(std::vector<PauliTerm>& rows, int n, F f) {
  for (auto& row : rows) {
    u64 x = row.x(), z = row.z();
    int r = row.phase() >> 1;
    f(x, z, r);
    row = PauliTerm(n, x, z, 2 * (r & 1));
  }
}

}  // namespace

Tableau::Tableau(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxPauliQubits)
    throw DimensionError("tableau width out of range");
  rows_.reserve(2 * n_);
  for (int i = 0; i < n_; ++i) rows_.emplace_back(n_, u64{1} << i, 0, 0);
  for (int i = 0; i < n_; ++i) rows_.emplace_back(n_, 0, u64{1} << i, 0);
}

PauliTerm Tableau::row(int i) const { return rows_.at(i); }

void Tableau::h(int q) {
  const u64 m = u64{1} << q;
  update_rows(rows_, n_, [&](u64& x, u64& z, int& r) {
    int xq = (x & m) != 0, zq = (z & m) != 0;
    r ^= xq & zq;
    x = (x & ~m) | (zq ? m : 0);
    z = (z & ~m) | (xq ? m : 0);
  });
}

void Tableau::s(int q) {
  const u64 m = u64{1} << q;
  update_rows(rows_, n_, [&](u64& x, u64& z, int& r) {
    int xq = (x & m) != 0, zq = (z & m) != 0;
    r ^= xq & zq;
    if (xq) z ^= m;
  });
}

void Tableau::sdg(int q) {
  const u64 m = u64{1} << q;
  update_rows(rows_, n_, [&](u64& x, u64& z, int& r) {
    int xq = (x & m) != 0, zq = (z & m) != 0;
    r ^= xq & (zq ^ 1);
    if (xq) z ^= m;
  });
}

void Tableau::x(int q) {
  const u64 m = u64{1} << q;
  update_rows(rows_, n_, [&](u64&, u64& z, int& r) { r ^= (z & m) != 0; });
}

void Tableau::z(int q) {
  const u64 m = u64{1} << q;
  update_rows(rows_, n_, [&](u64& x, u64&, int& r) { r ^= (x & m) != 0; });
}

void Tableau::cx(int c, int t) {
  const u64 mc = u64{1} << c, mt = u64{1} << t;
  update_rows(rows_, n_, [&](u64& x, u64& z, int& r) {
    int xc = (x & mc) != 0, zc = (z & mc) != 0;
    int xt = (x & mt) != 0, zt = (z & mt) != 0;
    r ^= xc & zt & (xt ^ zc ^ 1);
    if (xc) x ^= mt;
    if (zt) z ^= mc;
  });
}


void Tableau::apply(const Gate& g, double angle) {
  if (g.q0 < 0 || g.q0 >= n_ || g.q1 >= n_)
    throw DimensionError("gate outside tableau");
  auto rz = [&](int q, int turns) {
    switch (turns) {
      case 1: s(q); break;
      case 2: z(q); break;
      case 3: sdg(q); break;
      default: break;
    }
  };
  switch (g.kind) {
    case GateKind::H: h(g.q0); return;
    case GateKind::S: s(g.q0); return;
    case GateKind::Sdg: sdg(g.q0); return;
    case GateKind::X: x(g.q0); return;
    case GateKind::CX: cx(g.q0, g.q1); return;
    default: break;
  }
  int turns = 0;
  try {
    turns = clifford_quarter_turns(angle);
  } catch (const UnsupportedGateError&) {
    throw UnsupportedGateError(std::string("non-Clifford ") + gate_name(g.kind) +
                               " on qubit " + std::to_string(g.q0));
  }
  switch (g.kind) {
    case GateKind::RZ:
      rz(g.q0, turns);
      return;
    case GateKind::RX:
      h(g.q0);
      rz(g.q0, turns);
      h(g.q0);
      return;
    case GateKind::RY:
      sdg(g.q0);
      h(g.q0);
      rz(g.q0, turns);
      h(g.q0);
      s(g.q0);
      return;
    default:
      throw UnsupportedGateError("unsupported gate");
  }
}

bool Tableau::invariants_hold() const {
  for (int i = 0; i < 2 * n_; ++i) {
    if (rows_[i].phase() % 2) return false;
    for (int j = i + 1; j < 2 * n_; ++j) {
      bool should_anticommute = (j == i + n_) && i < n_;
      if (rows_[i].commutes_with(rows_[j]) == should_anticommute) return false;
    }
  }
  return true;
}

Tableau run_stabilizer(const Circuit& c) {
  Tableau t(c.n_qubits());
  for (const auto& g : c.gates())
    t.apply(g, is_rotation(g.kind) ? c.angle(g) : 0.0);
  return t;
}

int pauli_expectation(const Tableau& t, const PauliTerm& p) {
  const int n = t.n_qubits();
  if (p.n_qubits() != n) throw DimensionError("pauli_expectation: width mismatch");
  if (p.phase() % 2) throw DomainError("pauli_expectation: non-Hermitian term");
  const auto& rows = t.rows();
  for (int i = 0; i < n; ++i)
    if (!rows[n + i].commutes_with(p)) return 0;
  // p commutes with the whole stabilizer group, so it equals +-(product of
  // the stabilizers whose paired destabilizer anticommutes with p).
  PauliTerm q(n);
  for (int i = 0; i < n; ++i)
    if (!rows[i].commutes_with(p)) q = multiply(q, rows[n + i]);
  if (!q.same_letters(p)) throw Error("tableau inconsistency");
  return q.phase() == p.phase() ? 1 : -1;
}

double expectation(const Tableau& t, const PauliSum& o) {
  double e = 0;
  for (const auto& [coef, p] : o.terms) e += coef * pauli_expectation(t, p);
  return e;
}

}  // namespace cdr
