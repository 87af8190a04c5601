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

#include "twirlzne/fermion.hpp"

#include <algorithm>

namespace twirlzne {

void FermionOperator::add(const FermionTerm& term, cplx coeff) {
  for (const auto& op : term)
    if (op.orbital < 0 || op.orbital >= n_orbitals_)
      throw DimensionError("ladder operator index " +
                           std::to_string(op.orbital) + " out of range");
  auto [it, inserted] = terms_.try_emplace(term, coeff);
  if (!inserted) it->second += coeff;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_orbitals_);
  for (const auto& [term, coeff] : terms_) {
    FermionTerm rev(term.rbegin(), term.rend());
    for (auto& op : rev) op.is_creation = !op.is_creation;
    out.add(rev, std::conj(coeff));
  }
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  if (other.n_orbitals_ != n_orbitals_)
    throw DimensionError("FermionOperator::+=: orbital count mismatch");
  for (const auto& [term, coeff] : other.terms_) add(term, coeff);
  return *this;
}

namespace {

// 1/2 Z..Z (X -+ iY) on qubit p, as a two-term PauliSum.
PauliSum jw_factor(int p, bool is_creation, int n) {
  PauliString zx(n), zy(n);
  for (int q = 0; q < p; ++q) {
    zx.set_letter(q, 'Z');
    zy.set_letter(q, 'Z');
  }
  zx.set_letter(p, 'X');
  zy.set_letter(p, 'Y');
  PauliSum out(n);
  out.add(zx, 0.5);
  out.add(zy, is_creation ? cplx(0, -0.5) : cplx(0, 0.5));
  return out;
}

}  // namespace

PauliSum jordan_wigner(const FermionOperator& f) {
  const int n = f.n_orbitals();
  PauliSum total(n);
  for (const auto& [term, coeff] : f.terms()) {
    PauliSum acc(n);
    acc.add(PauliString(n), coeff);  // identity word
    for (const auto& op : term)
      acc = acc * jw_factor(op.orbital, op.is_creation, n);
    total += acc;
  }
  total.simplify();
  return total;
}

}  // namespace twirlzne
