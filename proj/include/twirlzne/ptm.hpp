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
#include <vector>

#include "twirlzne/pauli.hpp"

namespace twirlzne {

/// Pauli-transfer-matrix representation of a channel on a small noise
/// support (1 to 4 qubits): R[a][b] = tr(P_a Lambda(P_b)) / 2^n, with basis
/// index digits base 4 per qubit (I=0, X=1, Y=2, Z=3), digit 0 least
/// significant. Trace preservation puts (1, 0, ..., 0) in the first row;
/// channels diagonal in this basis are stochastic Pauli channels.
class ChannelPTM {
 public:
  static constexpr int kMaxSupport = 4;

  ChannelPTM(int n_qubits, Eigen::MatrixXd matrix);

  static ChannelPTM identity(int n_qubits);
  static ChannelPTM from_unitary(const Eigen::MatrixXcd& u);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// this after other (matrix product this * other).
  ChannelPTM compose_after(const ChannelPTM& other) const;

  bool is_diagonal(double tol = 1e-12) const;
  double max_off_diagonal() const;

  /// Row-1 trace preservation plus Choi positivity; throws IntegrityError.
  void check_cptp(double tol = 1e-10) const;

 private:
  int n_;
  Eigen::MatrixXd matrix_;
};

/// Dense 2^n matrix of the local Pauli word with basis index a.
Eigen::MatrixXcd pauli_basis_matrix(size_t index, int n_qubits);

/// Normalized Choi matrix C = (1/4^n) sum_ab R[a][b] (P_b^T kron P_a).
Eigen::MatrixXcd ptm_to_choi(const ChannelPTM& ptm);
ChannelPTM choi_to_ptm(const Eigen::MatrixXcd& choi, int n_qubits);

/// Average gate infidelity to the identity: 1 - (tr R + d) / (d (d + 1)).
double infidelity(const ChannelPTM& ptm);

}  // namespace twirlzne
