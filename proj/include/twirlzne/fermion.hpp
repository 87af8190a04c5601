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

#include <map>
#include <utility>
#include <vector>

#include "twirlzne/pauli.hpp"

namespace twirlzne {

/// One ladder-operator factor: spin-orbital index and creation flag.
struct LadderOp {
  int orbital;
  bool is_creation;

  auto operator<=>(const LadderOp&) const = default;
};

using FermionTerm = std::vector<LadderOp>;

/// Weighted sum of ladder-operator products, stored exactly as written
/// (normal ordering is not assumed or imposed).
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(int n_orbitals) : n_orbitals_(n_orbitals) {}

  int n_orbitals() const { return n_orbitals_; }
  const std::map<FermionTerm, cplx>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  void add(const FermionTerm& term, cplx coeff);

  FermionOperator adjoint() const;
  FermionOperator& operator+=(const FermionOperator& other);

 private:
  int n_orbitals_ = 0;
  std::map<FermionTerm, cplx> terms_;
};

/// Jordan-Wigner transform: a_k -> 1/2 Z_0..Z_{k-1} (X_k + iY_k) and
/// a_k+ -> 1/2 Z_0..Z_{k-1} (X_k - iY_k); products expanded and simplified.
/// Qubit i corresponds to spin-orbital i, occupied = |1>.
PauliSum jordan_wigner(const FermionOperator& f);

}  // namespace twirlzne
