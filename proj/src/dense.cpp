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

#include "twirlzne/dense.hpp"

#include <bit>

namespace twirlzne {

namespace {

int qubit_count_of_dim(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0)
    throw DimensionError("state dimension must be a power of two");
  return std::countr_zero(static_cast<uint64_t>(dim));
}

// P |i> = phase(i) |i ^ x_mask>; phase(i) = i^{#Y} * (-1)^{popcount(z & i)}.
cplx column_phase(const PauliString& p, uint64_t i) {
  static const cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int ny = std::popcount(p.x_mask() & p.z_mask());
  const int zpar = std::popcount(p.z_mask() & i) & 1;
  cplx ph = kI[ny & 3];
  return zpar ? -ph : ph;
}

}  // namespace

DenseState DenseState::basis_state(int n_qubits, uint64_t bits) {
  DenseState s;
  s.kind = Kind::statevector;
  s.n_qubits = n_qubits;
  s.vec = Eigen::VectorXcd::Zero(Eigen::Index(1) << n_qubits);
  s.vec(static_cast<Eigen::Index>(bits)) = 1.0;
  return s;
}

DenseState DenseState::from_vector(Eigen::VectorXcd v) {
  DenseState s;
  s.kind = Kind::statevector;
  s.n_qubits = qubit_count_of_dim(v.size());
  s.vec = std::move(v);
  return s;
}

DenseState DenseState::from_density(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols())
    throw DimensionError("density matrix must be square");
  DenseState s;
  s.kind = Kind::density_matrix;
  s.n_qubits = qubit_count_of_dim(m.rows());
  s.rho = std::move(m);
  return s;
}

Eigen::MatrixXcd DenseState::density() const {
  if (is_density()) return rho;
  return vec * vec.adjoint();
}

void DenseState::validate(double tol) const {
  if (is_density()) {
    const double tr_err = std::abs(rho.trace() - cplx(1, 0));
    if (tr_err > tol)
      throw IntegrityError("density trace deviates from 1 by " +
                           format_double(tr_err));
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol)
      throw IntegrityError("density matrix not Hermitian: " +
                           format_double(herm));
  } else {
    const double norm_err = std::abs(vec.norm() - 1.0);
    if (norm_err > tol)
      throw IntegrityError("statevector norm deviates from 1 by " +
                           format_double(norm_err));
  }
}

double fidelity(const DenseState& a, const DenseState& b) {
  if (a.n_qubits != b.n_qubits)
    throw DimensionError("fidelity: qubit counts differ");
  if (!a.is_density() && !b.is_density()) {
    const cplx ov = a.vec.adjoint() * b.vec;
    return std::norm(ov);
  }
  if (!a.is_density()) return fidelity(b, a);
  if (!b.is_density()) {
    const cplx v = (b.vec.adjoint() * a.rho * b.vec)(0, 0);
    return v.real();
  }
  // tr(rho sigma); exact overlap for at-most-one-mixed arguments, adequate
  // as the closeness figure used in tests.
  return (a.rho * b.rho).trace().real();
}

Eigen::MatrixXcd to_matrix(const PauliString& word) {
  if (word.n_qubits() > kDenseLimit)
    throw CapacityError("dense Pauli matrix beyond " +
                        std::to_string(kDenseLimit) + " qubits");
  const Eigen::Index dim = Eigen::Index(1) << word.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto i = static_cast<uint64_t>(col);
    m(static_cast<Eigen::Index>(i ^ word.x_mask()), col) =
        column_phase(word, i);
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliSum& sum, int dense_limit) {
  if (sum.n_qubits() > dense_limit)
    throw CapacityError("dense operator beyond " +
                        std::to_string(dense_limit) + " qubits");
  const Eigen::Index dim = Eigen::Index(1) << sum.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : sum.terms())
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto i = static_cast<uint64_t>(col);
      m(static_cast<Eigen::Index>(i ^ w.x_mask()), col) +=
          c * column_phase(w, i);
    }
  return m;
}

cplx expectation_term(const DenseState& state, const PauliString& word) {
  if (word.n_qubits() != state.n_qubits)
    throw DimensionError("expectation: observable/state qubit mismatch");
  const uint64_t xm = word.x_mask();
  cplx acc(0, 0);
  if (state.is_density()) {
    const Eigen::Index dim = state.rho.rows();
    // tr(rho P) = sum_i rho(i, i^x) * phase(i), since P(k, i) is nonzero
    // only at k = i^x with value phase(i).
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto col = static_cast<uint64_t>(i);
      acc += state.rho(i, static_cast<Eigen::Index>(col ^ xm)) *
             column_phase(word, col);
    }
  } else {
    const Eigen::Index dim = state.vec.size();
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto col = static_cast<uint64_t>(i);
      acc += std::conj(state.vec(static_cast<Eigen::Index>(col ^ xm))) *
             column_phase(word, col) * state.vec(i);
    }
  }
  return acc;
}

double expectation(const DenseState& state, const PauliSum& obs) {
  if (!obs.is_hermitian())
    throw ContractError("expectation: observable is not Hermitian");
  cplx acc(0, 0);
  for (const auto& [w, c] : obs.terms()) acc += c * expectation_term(state, w);
  if (std::abs(acc.imag()) > 1e-9)
    throw IntegrityError("expectation: imaginary residue " +
                         format_double(acc.imag()));
  return acc.real();
}

GroundState ground_energy_exact(const PauliSum& h, int dense_limit) {
  if (!h.is_hermitian())
    throw ContractError("ground_energy_exact: Hamiltonian is not Hermitian");
  const Eigen::MatrixXcd m = to_matrix(h, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw IntegrityError("eigensolver failed to converge");
  GroundState g;
  g.energy = solver.eigenvalues()(0);
  g.eigenvector = solver.eigenvectors().col(0);
  g.eigenvector.normalize();
  return g;
}

}  // namespace twirlzne
