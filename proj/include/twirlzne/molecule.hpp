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

#include <filesystem>
#include <string>

#include "twirlzne/dense.hpp"
#include "twirlzne/fermion.hpp"

namespace twirlzne {

struct MoleculeSpec {
  std::string name;
  double geometry = 0;  // bond length label in Angstrom
  int n_electrons = 0;
  int n_spin_orbitals = 0;
  double nuclear_repulsion = 0;  // Hartree; added to all reported energies
};

struct IntegralProblem {
  MoleculeSpec spec;
  FermionOperator hamiltonian;
};

// Integral file format:
//   norb <N> nelec <M> enuc <E>
//   1 p q value          ->  value * a_p a_q+
//   2 p q r s value      ->  value * a_p a_q a_r+ a_s+
// 0-based indices, values in Hartree. The operator is assembled verbatim in
// the written order (annihilation factors left of creation factors).
IntegralProblem load_integrals(const std::filesystem::path& path);

PauliSum load_pauli_sum(const std::filesystem::path& path);
void save_pauli_sum(const std::filesystem::path& path, const PauliSum& sum);

/// Computational basis state with the n_electrons lowest-indexed
/// spin-orbitals occupied (occupied <=> qubit in |1>).
DenseState hartree_fock_state(const MoleculeSpec& spec);

}  // namespace twirlzne
