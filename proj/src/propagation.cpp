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

#include "cdr/propagation.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

struct Term {
  std::uint32_t x, z;
  double c;
};

// Letter code on one qubit: 0 I, 1 X, 2 Y, 3 Z.
int letter_at(const Term& t, int q) {
  int xb = (t.x >> q) & 1, zb = (t.z >> q) & 1;
  return xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
}

void set_letter(Term& t, int q, int l) {
  std::uint32_t m = std::uint32_t{1} << q;
  t.x &= ~m;
  t.z &= ~m;
  if (l == 1 || l == 2) t.x |= m;
  if (l == 2 || l == 3) t.z |= m;
}

// Levi-Civita sign for letters (a, b, third) with a != b, both non-identity.
int eps(int a, int b) { return ((b - a + 3) % 3 == 1) ? 1 : -1; }

class Propagator {
 public:
  Propagator(int n, std::size_t cap) : n_(n), cap_(cap) {
    slot_.assign(std::size_t{1} << (2 * n), -1);
  }

  std::vector<Term>& terms() { return terms_; }

  void damp(std::uint32_t support, double keep) {
    if (keep == 1.0) return;
    for (auto& t : terms_)
      if ((t.x | t.z) & support) t.c *= keep;
  }

  // P -> U^dag P U for the Clifford gates.
  void clifford(GateKind k, int a, int b) {
    const std::uint32_t ma = std::uint32_t{1} << a;
    for (auto& t : terms_) {
      bool xa = t.x & ma, za = t.z & ma;
      switch (k) {
        case GateKind::H:
          if (xa && za) t.c = -t.c;
          if (xa != za) {
            t.x ^= ma;
            t.z ^= ma;
          }
          break;
        case GateKind::S:  // X -> -Y, Y -> X
          if (xa) {
            if (!za) t.c = -t.c;
            t.z ^= ma;
          }
          break;
        case GateKind::Sdg:  // X -> Y, Y -> -X
          if (xa) {
            if (za) t.c = -t.c;
            t.z ^= ma;
          }
          break;
        case GateKind::X:
          if (za) t.c = -t.c;
          break;
        case GateKind::CX: {
          const std::uint32_t mb = std::uint32_t{1} << b;
          bool xb = t.x & mb, zb = t.z & mb;
          if (xa && zb && (xb == za)) t.c = -t.c;
          if (xa) t.x ^= mb;
          if (zb) t.z ^= ma;
          break;
        }
        default:
          throw UnsupportedGateError("not a Clifford gate");
      }
    }
  }

  // exp(i t A/2) P exp(-i t A/2) = cos t P + sin t (-i P A) for P anticommuting
  // with the axis A on qubit q.
  bool rotate(int axis, int q, double theta) {
    double co, si;
    if (is_clifford_angle(theta)) {
      static const double kc[4] = {1, 0, -1, 0}, ks[4] = {0, 1, 0, -1};
      int t = clifford_quarter_turns(theta);
      co = kc[t];
      si = ks[t];
    } else {
      co = std::cos(theta);
      si = std::sin(theta);
    }
    if (si == 0.0) {
      if (co != 1.0)
        for (auto& t : terms_) {
          int l = letter_at(t, q);
          if (l != 0 && l != axis) t.c = -t.c;
        }
      return true;
    }
    if (co == 0.0) {
      for (auto& t : terms_) {
        int l = letter_at(t, q);
        if (l == 0 || l == axis) continue;
        t.c *= si * eps(l, axis);
        set_letter(t, q, 6 - l - axis);
      }
      return true;
    }
    // Partners of anticommuting strings anticommute too, so scale first and
    // add the sine parts from a copy.
    const std::size_t live = terms_.size();
    orig_.assign(terms_.begin(), terms_.end());
    for (std::size_t i = 0; i < live; ++i) {
      slot_[key(terms_[i])] = int(i);
      int l = letter_at(terms_[i], q);
      if (l != 0 && l != axis) terms_[i].c *= co;
    }
    for (std::size_t i = 0; i < live; ++i) {
      Term u = orig_[i];
      int l = letter_at(u, q);
      if (l == 0 || l == axis) continue;
      u.c *= si * eps(l, axis);
      set_letter(u, q, 6 - l - axis);
      int& s = slot_[key(u)];
      if (s >= 0) {
        terms_[s].c += u.c;
      } else {
        s = int(terms_.size());
        terms_.push_back(u);
      }
    }
    for (const auto& t : terms_) slot_[key(t)] = -1;
    return terms_.size() <= cap_;
  }

 private:
  std::size_t key(const Term& t) const { return t.x | (std::size_t(t.z) << n_); }

  int n_;
  std::size_t cap_;
  std::vector<Term> terms_;
  std::vector<Term> orig_;
  std::vector<int> slot_;
};

int axis_of(GateKind k) {
  switch (k) {
    case GateKind::RX: return 1;
    case GateKind::RY: return 2;
    default: return 3;
  }
}

}  // namespace

std::optional<double> propagate_expectation(const Circuit& c,
                                            const NoiseModel& nm,
                                            const PauliSum& o,
                                            std::size_t term_cap) {
  nm.validate();
  const int n = c.n_qubits();
  if (o.n_qubits != n) throw DimensionError("propagate: width mismatch");
  if (n > kMaxPropagationQubits)
    throw CapacityError("Pauli propagation limited to " +
                        std::to_string(kMaxPropagationQubits) + " qubits");
  Propagator prop(n, term_cap);
  auto& terms = prop.terms();
  const double f = 1.0 - 2.0 * nm.readout_flip;
  for (const auto& [coef, p] : o.terms) {
    if (p.phase() & 1) throw DomainError("propagate: non-Hermitian term");
    double v = (p.phase() == 2 ? -coef : coef) * std::pow(f, p.weight());
    terms.push_back({std::uint32_t(p.x()), std::uint32_t(p.z()), v});
  }
  const auto& gates = c.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    const Gate& g = *it;
    if (g.kind == GateKind::CX) {
      prop.damp((std::uint32_t{1} << g.q0) | (std::uint32_t{1} << g.q1),
                1.0 - nm.p2);
      prop.clifford(g.kind, g.q0, g.q1);
    } else {
      prop.damp(std::uint32_t{1} << g.q0, 1.0 - nm.p1);
      if (is_rotation(g.kind)) {
        if (!prop.rotate(axis_of(g.kind), g.q0, c.angle(g))) return std::nullopt;
      } else {
        prop.clifford(g.kind, g.q0, -1);
      }
    }
  }
  double e = 0;
  for (const auto& t : terms)
    if (t.x == 0) e += t.c;
  return e;
}

double noisy_expectation(const Circuit& c, const NoiseModel& nm,
                         const PauliSum& o) {
  if (c.n_qubits() <= kMaxPropagationQubits)
    if (auto v = propagate_expectation(c, nm, o)) return *v;
  return expectation_noisy(run_noisy(c, nm), o);
}

}  // namespace cdr
