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

#include "twirlzne/ptm.hpp"

#include <bit>

#include "twirlzne/errors.hpp"

namespace twirlzne {

namespace {

constexpr uint64_t kXBit[4] = {0, 1, 1, 0};
constexpr uint64_t kZBit[4] = {0, 0, 1, 1};

cplx column_phase(uint64_t x, uint64_t z, uint64_t i) {
  static const cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx ph = kI[std::popcount(x & z) & 3];
  return (std::popcount(z & i) & 1) ? -ph : ph;
}

void masks_of_index(size_t a, int n, uint64_t& x, uint64_t& z) {
  x = z = 0;
  for (int q = 0; q < n; ++q) {
    const size_t r = (a >> (2 * q)) & 3;
    x |= kXBit[r] << q;
    z |= kZBit[r] << q;
  }
}

// tr(P_a M) evaluated sparsely via the permutation structure of P_a.
cplx pauli_trace(size_t a, int n, const Eigen::MatrixXcd& m) {
  uint64_t x, z;
  masks_of_index(a, n, x, z);
  const auto dim = static_cast<uint64_t>(m.rows());
  cplx acc(0, 0);
  for (uint64_t i = 0; i < dim; ++i)
    acc += column_phase(x, z, i) *
           m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ x));
  return acc;
}

}  // namespace

ChannelPTM::ChannelPTM(int n_qubits, Eigen::MatrixXd matrix)
    : n_(n_qubits), matrix_(std::move(matrix)) {
  if (n_ < 1 || n_ > kMaxSupport)
    throw DimensionError("ChannelPTM supports 1 to 4 qubits");
  const Eigen::Index want = Eigen::Index(1) << (2 * n_);
  if (matrix_.rows() != want || matrix_.cols() != want)
    throw DimensionError("PTM matrix size does not match qubit count");
}

ChannelPTM ChannelPTM::identity(int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << (2 * n_qubits);
  return ChannelPTM(n_qubits, Eigen::MatrixXd::Identity(dim, dim));
}

ChannelPTM ChannelPTM::from_unitary(const Eigen::MatrixXcd& u) {
  const auto d = static_cast<uint64_t>(u.rows());
  if (d == 0 || (d & (d - 1)) != 0 || u.rows() != u.cols())
    throw DimensionError("unitary dimension must be a power of two");
  const int n = std::countr_zero(d);
  if (n < 1 || n > kMaxSupport)
    throw DimensionError("ChannelPTM supports 1 to 4 qubits");
  const Eigen::Index dim4 = Eigen::Index(1) << (2 * n);
  Eigen::MatrixXd r(dim4, dim4);
  const double scale = 1.0 / static_cast<double>(d);
  for (Eigen::Index b = 0; b < dim4; ++b) {
    const Eigen::MatrixXcd pb = pauli_basis_matrix(static_cast<size_t>(b), n);
    const Eigen::MatrixXcd m = u * pb * u.adjoint();
    for (Eigen::Index a = 0; a < dim4; ++a)
      r(a, b) = (pauli_trace(static_cast<size_t>(a), n, m) * scale).real();
  }
  return ChannelPTM(n, std::move(r));
}

ChannelPTM ChannelPTM::compose_after(const ChannelPTM& other) const {
  if (other.n_ != n_)
    throw DimensionError("compose_after: support size mismatch");
  return ChannelPTM(n_, matrix_ * other.matrix_);
}

bool ChannelPTM::is_diagonal(double tol) const {
  return max_off_diagonal() <= tol;
}

double ChannelPTM::max_off_diagonal() const {
  double m = 0;
  for (Eigen::Index a = 0; a < matrix_.rows(); ++a)
    for (Eigen::Index b = 0; b < matrix_.cols(); ++b)
      if (a != b) m = std::max(m, std::abs(matrix_(a, b)));
  return m;
}

void ChannelPTM::check_cptp(double tol) const {
  if (std::abs(matrix_(0, 0) - 1.0) > tol)
    throw IntegrityError("PTM is not trace preserving (R[I][I] != 1)");
  for (Eigen::Index b = 1; b < matrix_.cols(); ++b)
    if (std::abs(matrix_(0, b)) > tol)
      throw IntegrityError("PTM is not trace preserving (first row)");
  const Eigen::MatrixXcd choi = ptm_to_choi(*this);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(choi);
  if (solver.eigenvalues()(0) < -tol)
    throw IntegrityError("Choi matrix has negative eigenvalue " +
                         format_double(solver.eigenvalues()(0)));
}

Eigen::MatrixXcd pauli_basis_matrix(size_t index, int n_qubits) {
  uint64_t x, z;
  masks_of_index(index, n_qubits, x, z);
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t i = 0; i < static_cast<uint64_t>(dim); ++i)
    m(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i)) =
        column_phase(x, z, i);
  return m;
}

Eigen::MatrixXcd ptm_to_choi(const ChannelPTM& ptm) {
  const int n = ptm.n_qubits();
  const Eigen::Index d = Eigen::Index(1) << n;
  const Eigen::Index dim4 = d * d;
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(dim4, dim4);
  const double scale = 1.0 / static_cast<double>(dim4);
  for (Eigen::Index a = 0; a < dim4; ++a) {
    const Eigen::MatrixXcd pa = pauli_basis_matrix(static_cast<size_t>(a), n);
    for (Eigen::Index b = 0; b < dim4; ++b) {
      const double w = ptm.matrix()(a, b);
      if (w == 0.0) continue;
      const Eigen::MatrixXcd pbt =
          pauli_basis_matrix(static_cast<size_t>(b), n).transpose();
      // kron(P_b^T, P_a) with the second factor on the low qubits
      for (Eigen::Index r1 = 0; r1 < d; ++r1)
        for (Eigen::Index c1 = 0; c1 < d; ++c1) {
          const cplx f = pbt(r1, c1);
          if (f == cplx(0, 0)) continue;
          choi.block(r1 * d, c1 * d, d, d) += (w * scale) * f * pa;
        }
    }
  }
  return choi;
}

ChannelPTM choi_to_ptm(const Eigen::MatrixXcd& choi, int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  const Eigen::Index dim4 = d * d;
  if (choi.rows() != dim4 || choi.cols() != dim4)
    throw DimensionError("Choi matrix size does not match qubit count");
  Eigen::MatrixXd r(dim4, dim4);
  for (Eigen::Index b = 0; b < dim4; ++b) {
    const Eigen::MatrixXcd pbt =
        pauli_basis_matrix(static_cast<size_t>(b), n_qubits).transpose();
    for (Eigen::Index a = 0; a < dim4; ++a) {
      const Eigen::MatrixXcd pa =
          pauli_basis_matrix(static_cast<size_t>(a), n_qubits);
      // R[a][b] = tr(C * (P_b^T kron P_a))
      Eigen::MatrixXcd k(dim4, dim4);
      for (Eigen::Index r1 = 0; r1 < d; ++r1)
        for (Eigen::Index c1 = 0; c1 < d; ++c1)
          k.block(r1 * d, c1 * d, d, d) = pbt(r1, c1) * pa;
      r(a, b) = (choi * k).trace().real();
    }
  }
  return ChannelPTM(n_qubits, std::move(r));
}

double infidelity(const ChannelPTM& ptm) {
  const double d = static_cast<double>(Eigen::Index(1) << ptm.n_qubits());
  return 1.0 - (ptm.matrix().trace() + d) / (d * (d + 1.0));
}

}  // namespace twirlzne
