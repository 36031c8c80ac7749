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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cdr {

std::uint64_t splitmix64(std::uint64_t& state);

// Substream seed: splitmix64 chained over the master seed and the counters.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> counters);

// std::mt19937_64 plus a bounded draw that does not depend on the standard
// library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  double uniform();  // [0, 1)

 private:
  std::mt19937_64 eng_;
};

}  // namespace cdr
