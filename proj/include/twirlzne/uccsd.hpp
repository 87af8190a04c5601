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

#include <array>
#include <span>

#include "twirlzne/circuit.hpp"
#include "twirlzne/molecule.hpp"

namespace twirlzne {

/// Cluster operator structure: which excitations carry parameter slots.
/// Spin of orbital i is i % 2 (interleaved alpha/beta ordering); only
/// spin-allowed excitations are enumerated.
struct ClusterSpec {
  int n_spin_orbitals = 0;
  std::vector<int> occupied;                // Hartree-Fock occupied set
  std::vector<int> virtuals;                // the rest
  std::vector<std::array<int, 2>> singles;  // (i in virt, k in occ)
  std::vector<std::array<int, 4>> doubles;  // (i < j in virt, k < l in occ)

  int n_params() const {
    return static_cast<int>(singles.size() + doubles.size());
  }
};

/// All spin-allowed singles and doubles over the HF occupation of `spec`,
/// in deterministic lexicographic order. Slot s corresponds to
/// singles[s] for s < |singles| and doubles[s - |singles|] after.
ClusterSpec build_cluster(const MoleculeSpec& spec);

/// Jordan-Wigner image of T(theta) - T(theta)^dagger; all coefficients are
/// purely imaginary.
PauliSum antihermitian_generator(const ClusterSpec& cluster,
                                 std::span<const double> theta);

/// Staircase compilation of exp(-i * angle * word) with
/// angle = constant + scale * theta[slot]: basis-change layer (H for X,
/// Rx(pi/2) for Y), CNOT ladder onto the last acted qubit, Rz(2*angle),
/// mirrored uncompute. One CNOT per hard cycle.
CircuitTemplate compile_exp_pauli(const PauliString& word, int n_qubits,
                                  int slot, double scale, double constant = 0);

/// Single first-order Trotter step over the generator terms, singles block
/// then doubles block, words in lexicographic order within each block.
CircuitTemplate trotterize(const ClusterSpec& cluster);

}  // namespace twirlzne
