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

#include <immintrin.h>

#include <cstdint>

#include "bits.hpp"
#include "cdr/kernels/kernels.hpp"

namespace cdr::kernels {

namespace {

using detail::BitInserter;
using V = __m256d;

struct Bc {
  V re, im;
};

inline Bc bcast(c64 m) { return {_mm256_set1_pd(m.real()), _mm256_set1_pd(m.imag())}; }

inline V load2(const c64* a, const c64* b) {
  return _mm256_insertf128_pd(
      _mm256_castpd128_pd256(_mm_loadu_pd(reinterpret_cast<const double*>(a))),
      _mm_loadu_pd(reinterpret_cast<const double*>(b)), 1);
}

inline void store2(c64* a, c64* b, V v) {
  _mm_storeu_pd(reinterpret_cast<double*>(a), _mm256_castpd256_pd128(v));
  _mm_storeu_pd(reinterpret_cast<double*>(b), _mm256_extractf128_pd(v, 1));
}

inline V swap_ri(V x) { return _mm256_permute_pd(x, 0x5); }

// sum_j m[j] * x[j]; xs[j] is x[j] with real and imaginary parts swapped.
template <int N>
inline V row(const Bc* m, const V* x, const V* xs) {
  V a = _mm256_mul_pd(x[0], m[0].re);
  V b = _mm256_mul_pd(xs[0], m[0].im);
  for (int j = 1; j < N; ++j) {
    a = _mm256_fmadd_pd(x[j], m[j].re, a);
    b = _mm256_fmadd_pd(xs[j], m[j].im, b);
  }
  return _mm256_addsub_pd(a, b);
}

void apply_1q(c64* v, int nbits, int q, const c64* m) {
  if (nbits < 2) return scalar().apply_1q(v, nbits, q, m);
  BitInserter<1> ins({q});
  const std::uint64_t s = std::uint64_t{1} << q;
  Bc mb[4];
  for (int j = 0; j < 4; ++j) mb[j] = bcast(m[j]);
  const std::uint64_t count = std::uint64_t{1} << (nbits - 1);
  for (std::uint64_t i = 0; i < count; i += 2) {
    std::uint64_t b0 = ins(i), b1 = ins(i + 1);
    V x[2] = {load2(v + b0, v + b1), load2(v + b0 + s, v + b1 + s)};
    V xs[2] = {swap_ri(x[0]), swap_ri(x[1])};
    V y0 = row<2>(mb, x, xs);
    V y1 = row<2>(mb + 2, x, xs);
    store2(v + b0, v + b1, y0);
    store2(v + b0 + s, v + b1 + s, y1);
  }
}

void apply_2bit(c64* v, int nbits, int a, int b, const c64* m) {
  if (nbits < 3) return scalar().apply_2bit(v, nbits, a, b, m);
  BitInserter<2> ins({a, b});
  const std::uint64_t off[4] = {0, std::uint64_t{1} << a, std::uint64_t{1} << b,
                                (std::uint64_t{1} << a) | (std::uint64_t{1} << b)};
  Bc mb[16];
  for (int j = 0; j < 16; ++j) mb[j] = bcast(m[j]);
  const std::uint64_t count = std::uint64_t{1} << (nbits - 2);
  for (std::uint64_t i = 0; i < count; i += 2) {
    std::uint64_t b0 = ins(i), b1 = ins(i + 1);
    V x[4], xs[4];
    for (int j = 0; j < 4; ++j) {
      x[j] = load2(v + b0 + off[j], v + b1 + off[j]);
      xs[j] = swap_ri(x[j]);
    }
    for (int r = 0; r < 4; ++r)
      store2(v + b0 + off[r], v + b1 + off[r], row<4>(mb + 4 * r, x, xs));
  }
}

inline void superop_on_block(V* x, int which, const Bc* s) {
  for (int other = 0; other < 4; ++other) {
    int idx[4];
    V in[4], ins[4];
    for (int j = 0; j < 4; ++j) {
      idx[j] = detail::pre_index(which, other, j);
      in[j] = x[idx[j]];
      ins[j] = swap_ri(in[j]);
    }
    for (int r = 0; r < 4; ++r) x[idx[r]] = row<4>(s + 4 * r, in, ins);
  }
}

void cx_depol(c64* rho, int n, int ctl, int tgt, const c64* pre_ctl,
              const c64* pre_tgt, double lam) {
  const int nbits = 2 * n;
  if (nbits < 5) return scalar().cx_depol(rho, n, ctl, tgt, pre_ctl, pre_tgt, lam);
  BitInserter<4> ins({ctl, tgt, ctl + n, tgt + n});
  std::uint64_t off[16];
  for (int l = 0; l < 16; ++l) {
    off[l] = ((l & 1) ? std::uint64_t{1} << ctl : 0) |
             ((l & 2) ? std::uint64_t{1} << tgt : 0) |
             ((l & 4) ? std::uint64_t{1} << (ctl + n) : 0) |
             ((l & 8) ? std::uint64_t{1} << (tgt + n) : 0);
  }
  Bc sc[16], st[16];
  if (pre_ctl)
    for (int j = 0; j < 16; ++j) sc[j] = bcast(pre_ctl[j]);
  if (pre_tgt)
    for (int j = 0; j < 16; ++j) st[j] = bcast(pre_tgt[j]);
  const V keep = _mm256_set1_pd(1.0 - lam);
  const V mix = _mm256_set1_pd(lam / 4.0);
  // Output slot l receives input slot perm^-1(l); the CX permutation is an
  // involution on this layout.
  int src[16];
  for (int l = 0; l < 16; ++l) src[detail::cx_perm(l)] = l;
  const std::uint64_t count = std::uint64_t{1} << (nbits - 4);
  for (std::uint64_t i = 0; i < count; i += 2) {
    std::uint64_t b0 = ins(i), b1 = ins(i + 1);
    V x[16];
    for (int l = 0; l < 16; ++l) x[l] = load2(rho + b0 + off[l], rho + b1 + off[l]);
    if (pre_ctl) superop_on_block(x, 0, sc);
    if (pre_tgt) superop_on_block(x, 1, st);
    V tr = _mm256_add_pd(
        _mm256_add_pd(x[src[detail::kDiag[0]]], x[src[detail::kDiag[1]]]),
        _mm256_add_pd(x[src[detail::kDiag[2]]], x[src[detail::kDiag[3]]]));
    V add = _mm256_mul_pd(mix, tr);
    for (int l = 0; l < 16; ++l) {
      V y = _mm256_mul_pd(keep, x[src[l]]);
      if (l == detail::kDiag[0] || l == detail::kDiag[1] ||
          l == detail::kDiag[2] || l == detail::kDiag[3])
        y = _mm256_add_pd(y, add);
      store2(rho + b0 + off[l], rho + b1 + off[l], y);
    }
  }
}

const Table kAvx2{"avx2", apply_1q, apply_2bit, cx_depol};

}  // namespace

namespace detail {
const Table* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace cdr::kernels
