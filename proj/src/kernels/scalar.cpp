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

#include <cstdint>

#include "bits.hpp"
#include "cdr/kernels/kernels.hpp"

namespace cdr::kernels {

namespace {

using detail::BitInserter;

void apply_1q(c64* v, int nbits, int q, const c64* m) {
  const std::uint64_t dim = std::uint64_t{1} << nbits;
  const std::uint64_t s = std::uint64_t{1} << q;
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * s) {
    for (std::uint64_t lo = 0; lo < s; ++lo) {
      c64* p = v + hi + lo;
      c64 a = p[0], b = p[s];
      p[0] = m[0] * a + m[1] * b;
      p[s] = m[2] * a + m[3] * b;
    }
  }
}

void apply_2bit(c64* v, int nbits, int a, int b, const c64* m) {
  BitInserter<2> ins({a, b});
  const std::uint64_t off[4] = {0, std::uint64_t{1} << a, std::uint64_t{1} << b,
                                (std::uint64_t{1} << a) | (std::uint64_t{1} << b)};
  const std::uint64_t blocks = std::uint64_t{1} << (nbits - 2);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    std::uint64_t base = ins(i);
    c64 x[4];
    for (int j = 0; j < 4; ++j) x[j] = v[base + off[j]];
    for (int r = 0; r < 4; ++r) {
      c64 acc = 0;
      for (int j = 0; j < 4; ++j) acc += m[4 * r + j] * x[j];
      v[base + off[r]] = acc;
    }
  }
}

void superop_on_block(c64* x, int which, const c64* s) {
  for (int other = 0; other < 4; ++other) {
    c64 in[4];
    for (int j = 0; j < 4; ++j) in[j] = x[detail::pre_index(which, other, j)];
    for (int r = 0; r < 4; ++r) {
      c64 acc = 0;
      for (int j = 0; j < 4; ++j) acc += s[4 * r + j] * in[j];
      x[detail::pre_index(which, other, r)] = acc;
    }
  }
}

void cx_depol(c64* rho, int n, int ctl, int tgt, const c64* pre_ctl,
              const c64* pre_tgt, double lam) {
  const int nbits = 2 * n;
  BitInserter<4> ins({ctl, tgt, ctl + n, tgt + n});
  std::uint64_t off[16];
  for (int l = 0; l < 16; ++l) {
    off[l] = ((l & 1) ? std::uint64_t{1} << ctl : 0) |
             ((l & 2) ? std::uint64_t{1} << tgt : 0) |
             ((l & 4) ? std::uint64_t{1} << (ctl + n) : 0) |
             ((l & 8) ? std::uint64_t{1} << (tgt + n) : 0);
  }
  const double keep = 1.0 - lam;
  const double mix = lam / 4.0;
  const std::uint64_t blocks = std::uint64_t{1} << (nbits - 4);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    std::uint64_t base = ins(i);
    c64 x[16], y[16];
    for (int l = 0; l < 16; ++l) x[l] = rho[base + off[l]];
    if (pre_ctl) superop_on_block(x, 0, pre_ctl);
    if (pre_tgt) superop_on_block(x, 1, pre_tgt);
    for (int l = 0; l < 16; ++l) y[detail::cx_perm(l)] = x[l];
    c64 tr = y[detail::kDiag[0]] + y[detail::kDiag[1]] + y[detail::kDiag[2]] +
             y[detail::kDiag[3]];
    for (int l = 0; l < 16; ++l) y[l] *= keep;
    for (int d : detail::kDiag) y[d] += mix * tr;
    for (int l = 0; l < 16; ++l) rho[base + off[l]] = y[l];
  }
}

const Table kScalar{"scalar", apply_1q, apply_2bit, cx_depol};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace cdr::kernels
