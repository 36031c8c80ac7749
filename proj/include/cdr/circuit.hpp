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
#include <iosfwd>
#include <string>
#include <vector>

namespace cdr {

inline constexpr double kCliffordAngleTol = 1e-9;

enum class GateKind : std::uint8_t { H, S, Sdg, X, CX, RZ, RY, RX };

const char* gate_name(GateKind k);
bool is_rotation(GateKind k);

// Rotations are exp(-i * angle / 2 * P) with angle = sign * params[param].
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  int param = -1;
  int sign = 1;

  int arity() const { return kind == GateKind::CX ? 2 : 1; }
};

enum class ParamRole : std::uint8_t { Free, Cliffordized };

enum class CliffordMode : std::uint8_t { Zero, Bias };

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<ParamRole>& roles() const { return roles_; }
  std::size_t n_params() const { return params_.size(); }

  int add_param(double value);
  void set_param(std::size_t i, double value);
  void set_params(const std::vector<double>& values);
  void set_role(std::size_t i, ParamRole r);

  void h(int q) { push({GateKind::H, q}); }
  void s(int q) { push({GateKind::S, q}); }
  void sdg(int q) { push({GateKind::Sdg, q}); }
  void x(int q) { push({GateKind::X, q}); }
  void cx(int c, int t) { push({GateKind::CX, c, t}); }
  void rz(int q, int param, int sign = 1) { push({GateKind::RZ, q, -1, param, sign}); }
  void ry(int q, int param, int sign = 1) { push({GateKind::RY, q, -1, param, sign}); }
  void rx(int q, int param, int sign = 1) { push({GateKind::RX, q, -1, param, sign}); }
  void push(const Gate& g);

  double angle(const Gate& g) const { return g.sign * params_[g.param]; }

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
  std::vector<double> params_;
  std::vector<ParamRole> roles_;
};

bool is_clifford_angle(double theta, double tol = kCliffordAngleTol);
double nearest_clifford_angle(double theta);
// Multiple of pi/2 in {0,1,2,3} for a Clifford angle.
int clifford_quarter_turns(double theta, double tol = kCliffordAngleTol);

Circuit cliffordize(const Circuit& c, const std::vector<int>& indices,
                    CliffordMode mode);
int count_non_clifford(const Circuit& c);
std::vector<int> non_clifford_indices(const Circuit& c);
int two_qubit_gate_count(const Circuit& c);
bool is_clifford_circuit(const Circuit& c);

// One gate per line: "GATE q0 [q1] [param_index]". A negated parameter
// reference is written with a leading '-', e.g. "RZ 3 -5".
void dump_circuit(std::ostream& os, const Circuit& c);
Circuit parse_circuit(std::istream& is, int n_qubits,
                      const std::vector<double>& params);

}  // namespace cdr
