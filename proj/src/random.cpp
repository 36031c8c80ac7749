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

#include "cdr/random.hpp"

#include <limits>

namespace cdr {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> counters) {
  std::uint64_t state = master;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t c : counters) {
    state = out ^ (c + 0x632be59bd9b4e019ULL);
    out = splitmix64(state);
  }
  return out;
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t lim = max - max % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= lim);
  return x % n;
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

}  // namespace cdr
