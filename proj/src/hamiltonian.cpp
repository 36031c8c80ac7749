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

#include "cdr/hamiltonian.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "cdr/errors.hpp"

namespace cdr {

namespace {

using cplx = std::complex<double>;
using Op = std::vector<std::pair<cplx, PauliTerm>>;

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

int header_int(const std::string& header, const std::string& key, bool required,
               int def) {
  std::smatch m;
  std::regex re("(^|[^A-Z0-9_])" + key + "\\s*=\\s*(-?[0-9]+)");
  if (std::regex_search(header, m, re)) return std::stoi(m[2].str());
  if (required) throw ParseError("FCIDUMP header lacks " + key, 1);
  return def;
}

// Jordan-Wigner image of a (dagger = false) or a^dagger (dagger = true).
Op ladder(int n, int j, bool dagger) {
  std::uint64_t zs = (std::uint64_t{1} << j) - 1;
  std::uint64_t bit = std::uint64_t{1} << j;
  PauliTerm xj(n, bit, zs), yj(n, bit, zs | bit);
  return {{0.5, xj}, {cplx(0, dagger ? -0.5 : 0.5), yj}};
}

Op product(const Op& a, const Op& b) {
  Op out;
  out.reserve(a.size() * b.size());
  for (const auto& [ca, pa] : a)
    for (const auto& [cb, pb] : b) {
      PauliTerm p = multiply(pa, pb);
      cplx ph[4] = {1, cplx(0, 1), -1, cplx(0, -1)};
      out.emplace_back(ca * cb * ph[p.phase()], p.with_phase(0));
    }
  return out;
}

}  // namespace

void MolecularIntegrals::validate(double tol) const {
  const int n = n_orbitals;
  if (n < 1) throw ValidationError("no orbitals");
  if (static_cast<int>(h.size()) != n * n || static_cast<int>(g.size()) != n * n * n * n)
    throw ValidationError("integral tensor size mismatch");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (std::abs(one(p, q) - one(q, p)) > tol)
        throw ValidationError("h is not symmetric");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = two(p, q, r, s);
          for (double w : {two(q, p, r, s), two(p, q, s, r), two(q, p, s, r),
                           two(r, s, p, q), two(s, r, p, q), two(r, s, q, p),
                           two(s, r, q, p)})
            if (std::abs(v - w) > tol)
              throw ValidationError("g lacks 8-fold permutational symmetry");
        }
}

MolecularIntegrals load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open FCIDUMP '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fcidump(ss.str());
}

MolecularIntegrals parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  std::string line, header;
  int lineno = 0;
  bool in_header = false, header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string u = upper(line);
    if (!in_header) {
      if (u.find("&FCI") == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected '&FCI' namelist header", lineno);
      }
      in_header = true;
    }
    header += u + " ";
    auto end = u.find("&END");
    if (end != std::string::npos || u.find('/') != std::string::npos) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("unterminated FCIDUMP header", lineno);

  MolecularIntegrals m;
  m.n_orbitals = header_int(header, "NORB", true, 0);
  m.n_electrons = header_int(header, "NELEC", true, 0);
  m.ms2 = header_int(header, "MS2", false, 0);
  const int n = m.n_orbitals;
  if (n < 1 || n > kMaxPauliQubits / 2)
    throw ValidationError("NORB out of supported range");
  m.h.assign(n * n, 0.0);
  m.g.assign(n * n * n * n, 0.0);
  auto G = [&](int p, int q, int r, int s) -> double& {
    return m.g[((p * n + q) * n + r) * n + s];
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string vs;
    double v;
    int i, j, k, l;
    if (!(ls >> vs)) continue;
    for (auto& ch : vs)
      if (ch == 'D' || ch == 'd') ch = 'E';
    try {
      std::size_t used = 0;
      v = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument(vs);
    } catch (const std::exception&) {
      throw ParseError("bad integral value '" + vs + "'", lineno);
    }
    if (!(ls >> i >> j >> k >> l)) throw ParseError("expected four indices", lineno);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
    for (int idx : {i, j, k, l})
      if (idx < 0 || idx > n)
        throw ValidationError("line " + std::to_string(lineno) + ": orbital index " +
                              std::to_string(idx) + " outside 1.." +
                              std::to_string(n));
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      m.e_core = v;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      m.h[(i - 1) * n + (j - 1)] = v;
      m.h[(j - 1) * n + (i - 1)] = v;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record, not needed
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      for (auto [a, b, c, d] : {std::array<int, 4>{p, q, r, s}, {q, p, r, s},
                                {p, q, s, r}, {q, p, s, r}, {r, s, p, q},
                                {s, r, p, q}, {r, s, q, p}, {s, r, q, p}})
        G(a, b, c, d) = v;
    } else {
      throw ParseError("unrecognised index pattern", lineno);
    }
  }
  m.validate();
  return m;
}

PauliSum jordan_wigner(const MolecularIntegrals& m, double drop_threshold) {
  m.validate();
  const int n = m.n_orbitals;
  const int nq = 2 * n;
  std::vector<Op> cre(nq), ann(nq);
  for (int j = 0; j < nq; ++j) {
    cre[j] = ladder(nq, j, true);
    ann[j] = ladder(nq, j, false);
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> acc;
  auto add = [&](const Op& op, double scale) {
    for (const auto& [c, p] : op) acc[{p.x(), p.z()}] += scale * c;
  };
  acc[{0, 0}] += m.e_core;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double hpq = m.one(p, q);
      if (hpq == 0.0) continue;
      for (int sg = 0; sg < 2; ++sg)
        add(product(cre[spin_orbital_qubit(p, sg)], ann[spin_orbital_qubit(q, sg)]),
            hpq);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = m.two(p, q, r, s);
          if (v == 0.0) continue;
          for (int sg = 0; sg < 2; ++sg)
            for (int tau = 0; tau < 2; ++tau) {
              int P = spin_orbital_qubit(p, sg), Q = spin_orbital_qubit(q, sg);
              int R = spin_orbital_qubit(r, tau), S = spin_orbital_qubit(s, tau);
              if (P == R || Q == S) continue;
              Op op = product(product(cre[P], cre[R]), product(ann[S], ann[Q]));
              add(op, 0.5 * v);
            }
        }
  PauliSum out(nq);
  for (const auto& [key, c] : acc) {
    if (std::abs(c.imag()) > 1e-10)
      throw Error("Jordan-Wigner produced a non-Hermitian term");
    out.terms.emplace_back(c.real(), PauliTerm(nq, key.first, key.second));
  }
  return canonicalize(out, drop_threshold);
}

PauliSum number_operator(int n_qubits) {
  PauliSum s(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    s.add(0.5, PauliTerm(n_qubits));
    s.add(-0.5, PauliTerm::single(n_qubits, q, 'Z'));
  }
  return canonicalize(s);
}

PauliSum sz_operator(int n_qubits) {
  PauliSum s(n_qubits);
  for (int q = 0; q < n_qubits; ++q)
    s.add(q % 2 == 0 ? -0.25 : 0.25, PauliTerm::single(n_qubits, q, 'Z'));
  return canonicalize(s);
}

}  // namespace cdr
