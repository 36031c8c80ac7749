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

#include "cdr/density.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>

#include "cdr/errors.hpp"
#include "cdr/kernels/kernels.hpp"
#include "cdr/statevector.hpp"

namespace cdr {

namespace {

using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Superoperator of rho -> D^m(U rho U^dag), index row | col << 1.
Mat4 superop(const Mat2& u, int m, double p1) {
  Mat4 s{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int rp = 0; rp < 2; ++rp)
        for (int cp = 0; cp < 2; ++cp)
          s[(r | c << 1) * 4 + (rp | cp << 1)] =
              u[2 * r + rp] * std::conj(u[2 * c + cp]);
  double mu = std::pow(1.0 - p1, m);
  if (mu == 1.0) return s;
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = mu * s[4 * i + j];
  double half = (1.0 - mu) / 2.0;
  for (int i : {0, 3})
    for (int j = 0; j < 4; ++j) out[4 * i + j] += half * (s[j] + s[12 + j]);
  return out;
}

void check_width(const Circuit& c, int max_qubits) {
  if (c.n_qubits() > max_qubits || c.n_qubits() > kMaxDenseQubits / 2)
    throw CapacityError("density simulation limited to " +
                        std::to_string(max_qubits) + " qubits, circuit has " +
                        std::to_string(c.n_qubits()));
}

void apply_pauli_conj(std::vector<cplx>& rho, int n, int q, int letter) {
  // letter: 1 = X, 2 = Y, 3 = Z
  static const Mat2 kP[4] = {{1, 0, 0, 1},
                             {0, 1, 1, 0},
                             {0, cplx(0, -1), cplx(0, 1), 0},
                             {1, 0, 0, -1}};
  const auto& k = kernels::scalar();
  Mat2 p = kP[letter], pc;
  for (int i = 0; i < 4; ++i) pc[i] = std::conj(p[i]);
  k.apply_1q(rho.data(), 2 * n, q, p.data());
  k.apply_1q(rho.data(), 2 * n, q + n, pc.data());
}

void depolarize_reference(std::vector<cplx>& rho, int n,
                          const std::vector<int>& qubits, double p) {
  if (p == 0) return;
  const std::size_t terms = std::size_t{1} << (2 * qubits.size());
  std::vector<cplx> acc(rho.size(), 0.0);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<cplx> tmp = rho;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      int letter = (t >> (2 * j)) & 3;
      if (letter) apply_pauli_conj(tmp, n, qubits[j], letter);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += tmp[i];
  }
  const double w = p / static_cast<double>(terms);
  for (std::size_t i = 0; i < rho.size(); ++i)
    rho[i] = (1.0 - p) * rho[i] + w * acc[i];
}

}  // namespace

void NoiseModel::validate() const {
  for (double p : {p1, p2, readout_flip})
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("noise probabilities must lie in [0, 1]");
}

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || 2 * n_qubits > kMaxDenseQubits)
    throw CapacityError("density matrix width out of range");
  rho_.assign(std::size_t{1} << (2 * n_qubits), 0.0);
  rho_[0] = 1.0;
}

double DensityMatrix::trace() const {
  double t = 0;
  for (std::size_t i = 0; i < (std::size_t{1} << n_); ++i) t += at(i, i).real();
  return t;
}

DensityMatrix run_noisy(const Circuit& c, const NoiseModel& nm, int max_qubits) {
  nm.validate();
  check_width(c, max_qubits);
  const int n = c.n_qubits();
  DensityMatrix dm(n);
  dm.set_readout_flip(nm.readout_flip);
  auto& rho = dm.data();
  const auto& k = kernels::active();

  // Single-qubit gates are held per qubit until a CX touches the qubit. The
  // depolarizing channel commutes with any unitary on its own qubit, so m
  // gates collapse into one unitary followed by the channel raised to m.
  std::vector<Mat2> pend(n, Mat2{1, 0, 0, 1});
  std::vector<int> count(n, 0);
  auto take = [&](int q, Mat4& out) -> const cplx* {
    if (count[q] == 0) return nullptr;
    out = superop(pend[q], count[q], nm.p1);
    pend[q] = {1, 0, 0, 1};
    count[q] = 0;
    return out.data();
  };

  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::CX) {
      Mat4 sc, st;
      const cplx* pc = take(g.q0, sc);
      const cplx* pt = take(g.q1, st);
      k.cx_depol(rho.data(), n, g.q0, g.q1, pc, pt, nm.p2);
    } else {
      Mat2 u;
      gate_matrix(g.kind, is_rotation(g.kind) ? c.angle(g) : 0.0, u.data());
      pend[g.q0] = mul(u, pend[g.q0]);
      ++count[g.q0];
    }
  }
  for (int q = 0; q < n; ++q) {
    Mat4 s;
    if (take(q, s)) k.apply_2bit(rho.data(), 2 * n, q, q + n, s.data());
  }
  return dm;
}

DensityMatrix run_noisy_unfused(const Circuit& c, const NoiseModel& nm,
                                int max_qubits) {
  nm.validate();
  check_width(c, max_qubits);
  const int n = c.n_qubits();
  DensityMatrix dm(n);
  dm.set_readout_flip(nm.readout_flip);
  auto& rho = dm.data();
  const auto& k = kernels::scalar();
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::CX) {
      const cplx cx[16] = {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0};
      k.apply_2bit(rho.data(), 2 * n, g.q0, g.q1, cx);
      k.apply_2bit(rho.data(), 2 * n, g.q0 + n, g.q1 + n, cx);
      depolarize_reference(rho, n, {g.q0, g.q1}, nm.p2);
    } else {
      Mat2 u, uc;
      gate_matrix(g.kind, is_rotation(g.kind) ? c.angle(g) : 0.0, u.data());
      for (int i = 0; i < 4; ++i) uc[i] = std::conj(u[i]);
      k.apply_1q(rho.data(), 2 * n, g.q0, u.data());
      k.apply_1q(rho.data(), 2 * n, g.q0 + n, uc.data());
      depolarize_reference(rho, n, {g.q0}, nm.p1);
    }
  }
  return dm;
}

double expectation_noisy(const DensityMatrix& dm, const PauliTerm& p) {
  const int n = dm.n_qubits();
  if (p.n_qubits() != n) throw DimensionError("expectation: width mismatch");
  const auto& rho = dm.data();
  const std::uint64_t x = p.x(), z = p.z(), dim = std::uint64_t{1} << n;
  cplx acc = 0;
  for (std::uint64_t c = 0; c < dim; ++c) {
    cplx t = rho[c | ((c ^ x) << n)];
    acc += (std::popcount(c & z) & 1) ? -t : t;
  }
  acc *= i_pow(p.phase() + std::popcount(x & z));
  double atten = std::pow(1.0 - 2.0 * dm.readout_flip(), p.weight());
  return acc.real() * atten;
}

double expectation_noisy(const DensityMatrix& dm, const PauliSum& o) {
  const int n = dm.n_qubits();
  if (o.n_qubits != n) throw DimensionError("expectation: width mismatch");
  const auto& rho = dm.data();
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < o.terms.size(); ++i)
    groups[o.terms[i].second.x()].push_back(i);
  std::vector<cplx> w(dim);
  const double f = 1.0 - 2.0 * dm.readout_flip();
  double total = 0;
  for (const auto& [x, idx] : groups) {
    for (std::uint64_t c = 0; c < dim; ++c) w[c] = rho[c | ((c ^ x) << n)];
    for (std::size_t i : idx) {
      const auto& [coef, p] = o.terms[i];
      const std::uint64_t z = p.z();
      cplx acc = 0;
      for (std::uint64_t c = 0; c < dim; ++c)
        acc += (std::popcount(c & z) & 1) ? -w[c] : w[c];
      double v = (acc * i_pow(p.phase() + std::popcount(x & z))).real();
      total += coef * v * std::pow(f, p.weight());
    }
  }
  return total;
}

}  // namespace cdr
