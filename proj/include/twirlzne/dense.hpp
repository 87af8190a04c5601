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

#include <Eigen/Dense>

#include "twirlzne/pauli.hpp"

namespace twirlzne {

/// Dense operators are refused above this qubit count (16M complex entries
/// at n = 12 covers H2 comfortably and LiH as a stretch).
constexpr int kDenseLimit = 12;

/// Either a statevector (2^n amplitudes) or a density matrix (2^n x 2^n).
/// Qubit q maps to bit q of the basis index, so |1100> (qubit 0 leftmost)
/// is basis index 3.
struct DenseState {
  enum class Kind { statevector, density_matrix };

  Kind kind = Kind::statevector;
  Eigen::VectorXcd vec;
  Eigen::MatrixXcd rho;
  int n_qubits = 0;

  static DenseState basis_state(int n_qubits, uint64_t bits);
  static DenseState from_vector(Eigen::VectorXcd v);
  static DenseState from_density(Eigen::MatrixXcd m);

  bool is_density() const { return kind == Kind::density_matrix; }
  /// The state as a density matrix (projector when a statevector).
  Eigen::MatrixXcd density() const;

  /// Norm / trace / Hermiticity invariants; throws IntegrityError.
  void validate(double tol = 1e-10) const;
};

/// |<a|b>|^2 between states of any kind mix (density inputs allowed).
double fidelity(const DenseState& a, const DenseState& b);

// Dense 2^n x 2^n realizations; qubit 0 is the least significant index bit.
Eigen::MatrixXcd to_matrix(const PauliString& word);
Eigen::MatrixXcd to_matrix(const PauliSum& sum, int dense_limit = kDenseLimit);

/// Sum_j a_j tr(rho P_j) (or <psi|P_j|psi>). Requires Hermitian obs; an
/// imaginary residue above 1e-9 raises IntegrityError, below it is dropped.
double expectation(const DenseState& state, const PauliSum& obs);
cplx expectation_term(const DenseState& state, const PauliString& word);

struct GroundState {
  double energy;
  Eigen::VectorXcd eigenvector;
};

/// Smallest eigenvalue of to_matrix(h) with its normalized eigenvector
/// (dense Hermitian diagonalization; the FCI oracle of the toolkit).
GroundState ground_energy_exact(const PauliSum& h,
                                int dense_limit = kDenseLimit);

}  // namespace twirlzne
