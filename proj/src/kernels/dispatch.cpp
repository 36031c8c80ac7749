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

#include <cstdlib>
#include <cstring>

#include "cdr/kernels/kernels.hpp"

namespace cdr::kernels {

#ifdef CDRKIT_HAVE_AVX2
namespace detail {
const Table* avx2_table();
}
#endif

const Table* avx2() {
#ifdef CDRKIT_HAVE_AVX2
  static const bool ok =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table* chosen = [] {
    const char* force = std::getenv("CDRKIT_FORCE_SCALAR");
    bool scalar_only = force && *force && std::strcmp(force, "0") != 0;
    const Table* t = scalar_only ? nullptr : avx2();
    return t ? t : &scalar();
  }();
  return *chosen;
}

}  // namespace cdr::kernels
