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

#pragma once

#include <complex>

namespace cdr::kernels {

using c64 = std::complex<double>;

// All kernels act on a vector of 2^nbits amplitudes. Density matrices are
// stored row-major-by-bit: entry (r, c) lives at r | (c << n).
struct Table {
  const char* name;
  // 2x2 matrix {m00, m01, m10, m11} on bit q.
  void (*apply_1q)(c64* v, int nbits, int q, const c64* m);
  // 4x4 matrix on bits (a, b); local index = bit_a | bit_b << 1.
  void (*apply_2bit)(c64* v, int nbits, int a, int b, const c64* m);
  // Density-matrix CX on (ctl, tgt) of an n-qubit state, optionally preceded
  // by 4x4 superoperators on (ctl, ctl+n) and (tgt, tgt+n), followed by a
  // two-qubit depolarizing channel of strength lam.
  void (*cx_depol)(c64* rho, int n, int ctl, int tgt, const c64* pre_ctl,
                   const c64* pre_tgt, double lam);
};

const Table& scalar();
// nullptr when the CPU or the build lacks AVX2/FMA.
const Table* avx2();
// Chosen once per process; CDRKIT_FORCE_SCALAR=1 selects the scalar table.
const Table& active();

}  // namespace cdr::kernels
