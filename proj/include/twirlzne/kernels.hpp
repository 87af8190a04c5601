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

// Low-level application kernels shared by the statevector and Pauli-vector
// simulation paths. Qubit q is bit q of the computational index; in the
// Pauli-vector representation qubit q is base-4 digit q with letter ranks
// I=0, X=1, Y=2, Z=3.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace twirlzne::kernels {

using cplx = std::complex<double>;

// ---- statevector ----------------------------------------------------------

void apply_1q(Eigen::VectorXcd& psi, int qubit, const Eigen::Matrix2cd& u);
void apply_cnot(Eigen::VectorXcd& psi, int control, int target);

/// Applies a 2^k x 2^k unitary on the given (ascending) qubit subset;
/// local qubit j of the operator is support[j].
void apply_local_unitary(Eigen::VectorXcd& psi, const std::vector<int>& support,
                         const Eigen::MatrixXcd& u);

/// Dense embedding of a local operator into an n-qubit register.
Eigen::MatrixXcd embed_unitary(const Eigen::MatrixXcd& u,
                               const std::vector<int>& support, int n_qubits);

// ---- Pauli-vector (density matrices as 4^n real coefficient vectors) ------

/// v[a] = tr(P_a rho), identity entry v[0] = 1 for unit trace.
struct PauliVec {
  int n_qubits = 0;
  std::vector<double> v;
};

PauliVec pauli_vec_from_statevector(const Eigen::VectorXcd& psi);
PauliVec pauli_vec_from_density(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd pauli_vec_to_density(const PauliVec& pv);

void apply_ptm_1q(PauliVec& pv, int qubit, const Eigen::Matrix4d& r);
void apply_ptm_local(PauliVec& pv, const std::vector<int>& support,
                     const Eigen::MatrixXd& r);
void apply_diag_local(PauliVec& pv, const std::vector<int>& support,
                      const Eigen::VectorXd& diag);

/// PTM of the CNOT clock-cycle pairs applied directly in the Pauli basis.
void apply_cnot_ptm(PauliVec& pv, int control, int target);

/// 4x4 PTM of a single-qubit unitary.
Eigen::Matrix4d ptm_of_1q_unitary(const Eigen::Matrix2cd& u);

}  // namespace twirlzne::kernels
