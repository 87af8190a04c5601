// Copyright 2026 The twirlzne authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twirlzne/pauli.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <istream>
#include <sstream>

namespace twirlzne {

namespace {

constexpr int kMaxQubits = 64;

void check_qubit_count(int n) {
  if (n <= 0 || n > kMaxQubits)
    throw DimensionError("qubit count must be in [1, 64], got " +
                         std::to_string(n));
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// rank -> (x bit, z bit)
constexpr uint64_t kXBit[4] = {0, 1, 1, 0};
constexpr uint64_t kZBit[4] = {0, 0, 1, 1};

// Single-qubit products: kMulRank[a][b] is the rank of P_a P_b and
// kMulPhase[a][b] the exponent e with P_a P_b = i^e P_(ab).
constexpr int kMulPhase[4][4] = {
    {0, 0, 0, 0},  // I*
    {0, 0, 1, 3},  // X*: XY=iZ, XZ=-iY
    {0, 3, 0, 1},  // Y*: YX=-iZ, YZ=iX
    {0, 1, 3, 0},  // Z*: ZX=iY, ZY=-iX
};

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString::PauliString(int n_qubits, uint64_t x_mask, uint64_t z_mask)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
  check_qubit_count(n_qubits);
  if (n_qubits < 64 && ((x_mask | z_mask) >> n_qubits) != 0)
    throw DimensionError("Pauli mask has bits beyond qubit count");
}

PauliString PauliString::from_text(const std::string& letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (size_t q = 0; q < letters.size(); ++q)
    p.set_letter(static_cast<int>(q), letters[q]);
  return p;
}

int PauliString::rank(int q) const {
  static constexpr int kRankFromXZ[4] = {0, 1, 3, 2};  // (x + 2z) -> rank
  const uint64_t xb = (x_ >> q) & 1, zb = (z_ >> q) & 1;
  return kRankFromXZ[xb + 2 * zb];
}

char PauliString::letter(int q) const { return kLetters[rank(q)]; }

void PauliString::set_letter(int q, char l) {
  int r;
  switch (l) {
    case 'I': r = 0; break;
    case 'X': r = 1; break;
    case 'Y': r = 2; break;
    case 'Z': r = 3; break;
    default:
      throw ParseError(std::string("invalid Pauli letter '") + l + "'");
  }
  x_ = (x_ & ~(1ULL << q)) | (kXBit[r] << q);
  z_ = (z_ & ~(1ULL << q)) | (kZBit[r] << q);
}

std::vector<int> PauliString::support() const {
  std::vector<int> qs;
  uint64_t m = x_ | z_;
  for (int q = 0; q < n_; ++q)
    if ((m >> q) & 1) qs.push_back(q);
  return qs;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::string PauliString::text() const {
  std::string s(static_cast<size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<size_t>(q)] = letter(q);
  return s;
}

bool PauliString::operator<(const PauliString& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (int q = 0; q < n_; ++q) {
    const int a = rank(q), b = o.rank(q);
    if (a != b) return a < b;
  }
  return false;
}

std::pair<cplx, PauliString> pauli_mul(const PauliString& p,
                                       const PauliString& q) {
  if (p.n_qubits() != q.n_qubits())
    throw DimensionError("pauli_mul: operands act on different qubit counts");
  int e = 0;
  const uint64_t active = (p.x_mask() | p.z_mask()) & (q.x_mask() | q.z_mask());
  for (uint64_t m = active; m != 0; m &= m - 1) {
    const int qbit = std::countr_zero(m);
    e += kMulPhase[p.rank(qbit)][q.rank(qbit)];
  }
  static const cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  PauliString r(p.n_qubits(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask());
  return {kPhases[e & 3], r};
}

int commutation_sign(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits())
    throw DimensionError("commutation_sign: qubit counts differ");
  const int anti = std::popcount(p.x_mask() & q.z_mask()) +
                   std::popcount(p.z_mask() & q.x_mask());
  return (anti & 1) ? -1 : 1;
}

void PauliSum::add(const PauliString& word, cplx coeff) {
  if (n_ == 0) n_ = word.n_qubits();
  if (word.n_qubits() != n_)
    throw DimensionError("PauliSum::add: term qubit count mismatch");
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) it->second += coeff;
}

cplx PauliSum::coefficient(const PauliString& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? cplx(0, 0) : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (!other.empty() && !empty() && other.n_ != n_)
    throw DimensionError("PauliSum::+=: qubit count mismatch");
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_ && !a.empty() && !b.empty())
    throw DimensionError("PauliSum::*: qubit count mismatch");
  PauliSum out(a.n_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      auto [phase, w] = pauli_mul(wa, wb);
      out.add(w, phase * ca * cb);
    }
  out.simplify();
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [w, c] : terms_) out.add(w, std::conj(c));
  return out;
}

void PauliSum::simplify(double prune_eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= prune_eps)
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool PauliSum::is_hermitian(double tol) const { return max_abs_imag() <= tol; }

double PauliSum::max_abs_imag() const {
  double m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

PauliSum PauliSum::parse(std::istream& in) {
  PauliSum out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string coeff_tok, word_tok, extra;
    if (!(ls >> coeff_tok >> word_tok) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected '<coeff> <letters>'");
    cplx c;
    PauliString w;
    try {
      c = parse_complex(coeff_tok);
      w = PauliString::from_text(word_tok);
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (out.n_ != 0 && w.n_qubits() != out.n_)
      throw ParseError("line " + std::to_string(lineno) +
                       ": inconsistent qubit count");
    out.add(w, c);
  }
  if (out.n_ == 0) throw ParseError("no terms found");
  out.simplify();
  return out;
}

PauliSum PauliSum::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

std::string PauliSum::to_text() const {
  std::string s;
  for (const auto& [w, c] : terms_) {
    s += format_complex(c);
    s += ' ';
    s += w.text();
    s += '\n';
  }
  return s;
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string s = format_double(v.real());
  if (v.imag() >= 0 || std::isnan(v.imag())) s += '+';
  s += format_double(v.imag());
  s += 'j';
  return s;
}

cplx parse_complex(const std::string& token) {
  if (token.empty()) throw ParseError("empty number");
  std::string t = token;
  // strip python-style parentheses: (a+bj)
  if (t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  const bool has_j = !t.empty() && (t.back() == 'j' || t.back() == 'i');

  auto parse_real = [](const std::string& s) -> double {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;  // from_chars rejects '+'
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (begin == end || ec != std::errc() || ptr != end)
      throw ParseError("bad number '" + s + "'");
    return v;
  };

  if (!has_j) return cplx(parse_real(t), 0);

  t.pop_back();  // drop j
  // find the sign splitting real and imaginary parts (skip exponent signs)
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    if (t.empty() || t == "+") return cplx(0, 1);
    if (t == "-") return cplx(0, -1);
    return cplx(0, parse_real(t));
  }
  const std::string re = t.substr(0, split);
  std::string im = t.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return cplx(parse_real(re), parse_real(im));
}

}  // namespace twirlzne
