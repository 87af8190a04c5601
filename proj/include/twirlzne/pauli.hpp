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

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "twirlzne/errors.hpp"

namespace twirlzne {

using cplx = std::complex<double>;

/// n-qubit Pauli word, bit-pair encoded: the x and z masks hold one bit per
/// qubit, so products are XOR plus phase bookkeeping. Qubit 0 is the leftmost
/// letter of the text form ("XIZY" puts X on qubit 0).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, uint64_t x_mask, uint64_t z_mask);

  static PauliString from_text(const std::string& letters);

  int n_qubits() const { return n_; }
  uint64_t x_mask() const { return x_; }
  uint64_t z_mask() const { return z_; }

  // letter rank: I=0, X=1, Y=2, Z=3
  int rank(int q) const;
  char letter(int q) const;
  void set_letter(int q, char l);

  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::vector<int> support() const;
  int weight() const;

  std::string text() const;

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  // Lexicographic by text form (I < X < Y < Z, qubit 0 first); total order
  // used for deterministic term iteration everywhere.
  bool operator<(const PauliString& o) const;

 private:
  int n_ = 0;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
};

/// matrix(p)·matrix(q) = phase · matrix(r), phase in {1, -1, i, -i}.
std::pair<cplx, PauliString> pauli_mul(const PauliString& p,
                                       const PauliString& q);

/// +1 if p and q commute, -1 if they anticommute.
int commutation_sign(const PauliString& p, const PauliString& q);

/// Weighted sum of Pauli words sharing one qubit count. Terms with
/// |coefficient| <= prune_eps are dropped on simplify(); iteration order is
/// the PauliString lexicographic order.
class PauliSum {
 public:
  static constexpr double kPruneEps = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::map<PauliString, cplx>& terms() const { return terms_; }

  void add(const PauliString& word, cplx coeff);
  cplx coefficient(const PauliString& word) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx scalar);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;
  void simplify(double prune_eps = kPruneEps);

  /// Hermitian on the self-adjoint storage form <=> all coefficients real.
  bool is_hermitian(double tol = 1e-10) const;
  double max_abs_imag() const;

  // Text form: one term per line, "<complex coeff> <letters>".
  // The parser accepts a+bj and plain reals; duplicate lines sum.
  static PauliSum parse(std::istream& in);
  static PauliSum parse_text(const std::string& text);
  std::string to_text() const;

 private:
  int n_ = 0;
  std::map<PauliString, cplx> terms_;
};

// Complex scalar text form used by the PauliSum format: "1.5", "-2j",
// "0.25-0.75j". Shortest round-trip digits on output.
cplx parse_complex(const std::string& token);
std::string format_complex(cplx v);
std::string format_double(double v);

}  // namespace twirlzne
