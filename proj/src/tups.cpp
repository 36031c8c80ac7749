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

#include "cdr/tups.hpp"

#include "cdr/errors.hpp"
#include "cdr/pauli.hpp"

namespace cdr {

namespace {

using K = GateKind;

struct BlockOp {
  K kind;
  int q0, q1;
  int slot;  // 0 = a, 1 = b, 2 = c
  int sign;
};

// exp(a K) exp(4 b T) exp(c K) on local qubits 0 = (p,a), 1 = (p,b),
// 2 = (q,a), 3 = (q,b). Exact up to a global phase; 20 CX, 16 rotations.
const BlockOp kBlock[] = {
    {K::H, 2, -1, -1, 0}, {K::CX, 1, 2, -1, 0}, {K::H, 0, -1, -1, 0},
    {K::H, 2, -1, -1, 0}, {K::CX, 0, 2, -1, 0}, {K::H, 1, -1, -1, 0},
    {K::CX, 1, 3, -1, 0}, {K::RY, 3, -1, 2, -1}, {K::H, 1, -1, -1, 0},
    {K::RY, 1, -1, 2, 1}, {K::RY, 2, -1, 2, -1}, {K::H, 0, -1, -1, 0},
    {K::RY, 0, -1, 2, 1}, {K::S, 0, -1, -1, 0}, {K::H, 0, -1, -1, 0},
    {K::H, 2, -1, -1, 0}, {K::CX, 0, 2, -1, 0}, {K::H, 0, -1, -1, 0},
    {K::Sdg, 0, -1, -1, 0}, {K::H, 0, -1, -1, 0}, {K::S, 3, -1, -1, 0},
    {K::CX, 0, 3, -1, 0}, {K::H, 1, -1, -1, 0}, {K::Sdg, 3, -1, -1, 0},
    {K::CX, 1, 3, -1, 0}, {K::H, 0, -1, -1, 0}, {K::RZ, 0, -1, 1, 1},
    {K::H, 1, -1, -1, 0}, {K::CX, 1, 0, -1, 0}, {K::RZ, 0, -1, 1, -1},
    {K::H, 2, -1, -1, 0}, {K::S, 2, -1, -1, 0}, {K::H, 2, -1, -1, 0},
    {K::CX, 2, 0, -1, 0}, {K::RZ, 0, -1, 1, 1}, {K::CX, 1, 0, -1, 0},
    {K::RZ, 0, -1, 1, -1}, {K::CX, 3, 0, -1, 0}, {K::RZ, 0, -1, 1, -1},
    {K::CX, 1, 0, -1, 0}, {K::RZ, 0, -1, 1, 1}, {K::CX, 2, 0, -1, 0},
    {K::RZ, 0, -1, 1, -1}, {K::CX, 1, 0, -1, 0}, {K::RZ, 0, -1, 1, 1},
    {K::CX, 3, 0, -1, 0}, {K::H, 1, -1, -1, 0}, {K::CX, 1, 3, -1, 0},
    {K::H, 0, -1, -1, 0}, {K::S, 3, -1, -1, 0}, {K::CX, 0, 3, -1, 0},
    {K::H, 0, -1, -1, 0}, {K::S, 0, -1, -1, 0}, {K::H, 0, -1, -1, 0},
    {K::H, 2, -1, -1, 0}, {K::Sdg, 2, -1, -1, 0}, {K::H, 2, -1, -1, 0},
    {K::CX, 0, 2, -1, 0}, {K::Sdg, 3, -1, -1, 0}, {K::RY, 3, -1, 0, -1},
    {K::H, 1, -1, -1, 0}, {K::RY, 1, -1, 0, 1}, {K::H, 2, -1, -1, 0},
    {K::RY, 2, -1, 0, -1}, {K::H, 0, -1, -1, 0}, {K::Sdg, 0, -1, -1, 0},
    {K::RY, 0, -1, 0, 1}, {K::H, 1, -1, -1, 0}, {K::CX, 1, 3, -1, 0},
    {K::H, 0, -1, -1, 0}, {K::CX, 0, 2, -1, 0}, {K::H, 1, -1, -1, 0},
    {K::H, 2, -1, -1, 0}, {K::CX, 1, 2, -1, 0}, {K::H, 0, -1, -1, 0},
    {K::H, 2, -1, -1, 0},
};

void append_block(Circuit& c, int first_qubit, int first_param) {
  for (const auto& op : kBlock) {
    Gate g{op.kind, first_qubit + op.q0, op.q1 < 0 ? -1 : first_qubit + op.q1};
    if (is_rotation(op.kind)) {
      g.param = first_param + op.slot;
      g.sign = op.sign;
    }
    c.push(g);
  }
}

}  // namespace

void TupsSpec::validate() const {
  if (n_orbitals < 2) throw DomainError("tUPS needs at least two orbitals");
  if (layers < 1) throw DomainError("tUPS needs at least one layer");
  if (electrons() < 0 || electrons() > 2 * n_orbitals)
    throw DomainError("electron count out of range");
  if (electrons() % 2)
    throw UnsupportedConfigurationError("open-shell references are not supported");
  if (2 * n_orbitals > kMaxPauliQubits) throw DimensionError("too many orbitals");
}

std::uint64_t hf_reference(int n_orbitals, int n_electrons) {
  if (n_electrons % 2)
    throw UnsupportedConfigurationError("odd electron count");
  if (n_electrons < 0 || n_electrons > 2 * n_orbitals)
    throw DomainError("electron count out of range");
  return n_electrons == 64 ? ~std::uint64_t{0}
                           : (std::uint64_t{1} << n_electrons) - 1;
}

Circuit tups_block_circuit() {
  Circuit c(4);
  for (int i = 0; i < 3; ++i) c.add_param(0.0);
  append_block(c, 0, 0);
  return c;
}

Circuit build_tups(const TupsSpec& spec) {
  spec.validate();
  const int n = spec.n_orbitals;
  Circuit c(2 * n);
  for (int q = 0; q < spec.electrons(); ++q) c.x(q);
  for (int layer = 0; layer < spec.layers; ++layer) {
    // odd column first; an even column applied directly to HF only mixes
    // occupied with occupied and virtual with virtual at half filling
    for (int start : {1, 0})
      for (int p = start; p + 1 < n; p += 2) {
        int first = static_cast<int>(c.n_params());
        for (int i = 0; i < 3; ++i) c.add_param(0.0);
        append_block(c, 2 * p, first);
      }
  }
  return c;
}

}  // namespace cdr
