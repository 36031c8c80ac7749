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

#include <algorithm>
#include <array>
#include <cstdint>

namespace cdr::kernels::detail {

// Maps a compressed index onto the full index with zeros at the given bit
// positions (ascending).
template <int K>
struct BitInserter {
  std::array<int, K> pos{};

  explicit BitInserter(std::array<int, K> bits) : pos(bits) {
    std::sort(pos.begin(), pos.end());
  }
  std::uint64_t operator()(std::uint64_t i) const {
    for (int b : pos) {
      std::uint64_t low = i & ((std::uint64_t{1} << b) - 1);
      i = ((i >> b) << (b + 1)) | low;
    }
    return i;
  }
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (int b : pos) m |= std::uint64_t{1} << b;
    return m;
  }
};

// Local index layout of the 16-entry block used by cx_depol:
// bit 0 row ctl, bit 1 row tgt, bit 2 col ctl, bit 3 col tgt.
inline int cx_perm(int l) {
  int rc = l & 1, rt = (l >> 1) & 1, cc = (l >> 2) & 1, ct = (l >> 3) & 1;
  rt ^= rc;
  ct ^= cc;
  return rc | (rt << 1) | (cc << 2) | (ct << 3);
}

// Entries of the 16-block touched by a superoperator on the ctl (which = 0)
// or tgt (which = 1) qubit, for a fixed value of the other qubit's row/col
// bits (other = r | c << 1). Superoperator index is row | col << 1.
inline int pre_index(int which, int other, int j) {
  int r = j & 1, c = (j >> 1) & 1;
  int orr = other & 1, oc = (other >> 1) & 1;
  if (which == 0) return r | (orr << 1) | (c << 2) | (oc << 3);
  return orr | (r << 1) | (oc << 2) | (c << 3);
}

inline constexpr int kDiag[4] = {0, 1 | 4, 2 | 8, 1 | 2 | 4 | 8};

}  // namespace cdr::kernels::detail
