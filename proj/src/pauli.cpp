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

#include "cdr/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

void check_width(int n) {
  if (n < 0 || n > kMaxPauliQubits)
    throw DimensionError("pauli width out of range: " + std::to_string(n));
}

std::uint64_t width_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Exponent of i picked up by one qubit of P1 * P2 (Aaronson-Gottesman g).
int g_phase(int x1, int z1, int x2, int z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return z2 - x2;
  if (x1) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

int letter_rank(int x, int z) {
  // I < X < Y < Z
  if (!x && !z) return 0;
  if (x && !z) return 1;
  if (x && z) return 2;
  return 3;
}

}  // namespace

PauliTerm::PauliTerm(int n_qubits) : n_(n_qubits) { check_width(n_qubits); }

PauliTerm::PauliTerm(int n_qubits, std::uint64_t x, std::uint64_t z, int phase)
    : n_(n_qubits), x_(x), z_(z), phase_(((phase % 4) + 4) % 4) {
  check_width(n_qubits);
  if (((x | z) & ~width_mask(n_qubits)) != 0)
    throw DimensionError("pauli mask exceeds width");
}

PauliTerm PauliTerm::from_letters(const std::string& letters, int phase) {
  int n = static_cast<int>(letters.size());
  check_width(n);
  std::uint64_t x = 0, z = 0;
  for (int i = 0; i < n; ++i) {
    int q = n - 1 - i;
    switch (letters[i]) {
      case 'I': break;
      case 'X': x |= std::uint64_t{1} << q; break;
      case 'Y': x |= std::uint64_t{1} << q; z |= std::uint64_t{1} << q; break;
      case 'Z': z |= std::uint64_t{1} << q; break;
      default:
        throw DomainError(std::string("bad pauli letter '") + letters[i] + "'");
    }
  }
  return {n, x, z, phase};
}

PauliTerm PauliTerm::single(int n_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= n_qubits) throw DimensionError("qubit out of range");
  std::string s(n_qubits, 'I');
  s[n_qubits - 1 - qubit] = letter;
  return from_letters(s);
}

char PauliTerm::letter(int q) const {
  int x = (x_ >> q) & 1, z = (z_ >> q) & 1;
  return "IXZY"[x | (z << 1)];
}

std::string PauliTerm::letters() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[n_ - 1 - q] = letter(q);
  return s;
}

int PauliTerm::weight() const { return std::popcount(x_ | z_); }

bool PauliTerm::commutes_with(const PauliTerm& o) const {
  return (std::popcount((x_ & o.z_) ^ (z_ & o.x_)) & 1) == 0;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_qubits() != b.n_qubits())
    throw DimensionError("pauli multiply: width mismatch");
  int ph = a.phase() + b.phase();
  std::uint64_t touched = (a.x() | a.z()) & (b.x() | b.z());
  while (touched) {
    int q = std::countr_zero(touched);
    touched &= touched - 1;
    ph += g_phase((a.x() >> q) & 1, (a.z() >> q) & 1, (b.x() >> q) & 1,
                  (b.z() >> q) & 1);
  }
  return {a.n_qubits(), a.x() ^ b.x(), a.z() ^ b.z(), ph};
}

bool letters_less(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_qubits() != b.n_qubits()) return a.n_qubits() < b.n_qubits();
  for (int q = a.n_qubits() - 1; q >= 0; --q) {
    int ra = letter_rank((a.x() >> q) & 1, (a.z() >> q) & 1);
    int rb = letter_rank((b.x() >> q) & 1, (b.z() >> q) & 1);
    if (ra != rb) return ra < rb;
  }
  return false;
}

void PauliSum::add(double coef, const PauliTerm& p) {
  if (p.n_qubits() != n_qubits)
    throw DimensionError("pauli sum: width mismatch");
  if (p.phase() % 2 != 0)
    throw DomainError("pauli sum terms must be Hermitian");
  terms.emplace_back(p.phase() == 2 ? -coef : coef, p.with_phase(0));
}

double PauliSum::identity_coefficient() const {
  double c = 0.0;
  for (const auto& [coef, p] : terms)
    if (p.is_identity()) c += coef;
  return c;
}

PauliSum canonicalize(const PauliSum& s, double drop_threshold) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc;
  for (const auto& [coef, p] : s.terms) {
    double c = p.phase() == 2 ? -coef : coef;
    acc[{p.x(), p.z()}] += c;
  }
  PauliSum out(s.n_qubits);
  for (const auto& [key, coef] : acc)
    if (std::abs(coef) >= drop_threshold)
      out.terms.emplace_back(coef, PauliTerm(s.n_qubits, key.first, key.second));
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& a, const auto& b) {
              return letters_less(a.second, b.second);
            });
  return out;
}

void write_pauli_text(std::ostream& os, const PauliSum& s) {
  auto old = os.precision(17);
  for (const auto& [coef, p] : s.terms) os << coef << ' ' << p.letters() << '\n';
  os.precision(old);
}

PauliSum read_pauli_text(std::istream& is) {
  PauliSum out;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double coef;
    std::string letters;
    if (!(ls >> coef)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected coefficient", lineno);
    }
    if (!(ls >> letters)) throw ParseError("expected pauli letters", lineno);
    std::string rest;
    if (ls >> rest) throw ParseError("trailing token '" + rest + "'", lineno);
    PauliTerm p;
    try {
      p = PauliTerm::from_letters(letters);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
    if (first) {
      out.n_qubits = p.n_qubits();
      first = false;
    } else if (p.n_qubits() != out.n_qubits) {
      throw ParseError("inconsistent term width", lineno);
    }
    out.add(coef, p);
  }
  return out;
}

}  // namespace cdr
