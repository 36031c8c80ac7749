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

#include "cdr/circuit.hpp"

namespace cdr {

struct TupsSpec {
  int n_orbitals = 4;
  int layers = 1;
  // Negative means half filling (n_orbitals electrons).
  int n_electrons = -1;

  void validate() const;
  int electrons() const { return n_electrons < 0 ? n_orbitals : n_electrons; }
  int blocks_per_layer() const { return n_orbitals / 2 + (n_orbitals - 1) / 2; }
};

// Bit pattern with the n_electrons lowest spin-orbitals occupied.
std::uint64_t hf_reference(int n_orbitals, int n_electrons);

// Each block on spatial orbitals (p, p+1) owns three consecutive parameters
// (a, b, c) and implements exp(a K) exp(4 b T) exp(c K), where K is the
// singlet orbital rotation E_pq - E_qp and T the pair exchange
// a+_{p,a} a+_{p,b} a_{q,b} a_{q,a} - h.c. (rightmost factor acts first).
// Each layer is a brick: odd pairs (1,2),(3,4),... then even pairs
// (0,1),(2,3),...
Circuit build_tups(const TupsSpec& spec);

// Single block on a 4-qubit register, parameters (a, b, c).
Circuit tups_block_circuit();

}  // namespace cdr
