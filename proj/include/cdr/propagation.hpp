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

#include <cstddef>
#include <optional>

#include "cdr/circuit.hpp"
#include "cdr/density.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

inline constexpr int kMaxPropagationQubits = 10;
inline constexpr std::size_t kDefaultTermCap = std::size_t{1} << 15;

// Heisenberg-picture evaluation of Tr(O E(|0><0|)) under the gate-level
// depolarizing model: the observable is pulled back through the adjoint
// channels one gate at a time. Exact; Clifford gates permute Pauli strings
// and each off-grid rotation at most doubles the live terms. Returns nullopt
// once the live term count exceeds term_cap.
std::optional<double> propagate_expectation(const Circuit& c,
                                            const NoiseModel& nm,
                                            const PauliSum& o,
                                            std::size_t term_cap = kDefaultTermCap);

// Same quantity as expectation_noisy(run_noisy(c, nm), o); tries the Pauli
// propagation first and falls back to the density matrix.
double noisy_expectation(const Circuit& c, const NoiseModel& nm,
                         const PauliSum& o);

}  // namespace cdr
