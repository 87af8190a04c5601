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

#include "twirlzne/kernels.hpp"

#include <bit>

#include "twirlzne/errors.hpp"

namespace twirlzne::kernels {

namespace {

// rank r = I,X,Y,Z -> (x bit, z bit)
constexpr uint64_t kXBit[4] = {0, 1, 1, 0};
constexpr uint64_t kZBit[4] = {0, 0, 1, 1};
constexpr int kRankFromXZ[4] = {0, 1, 3, 2};  // (x + 2z) -> rank

int qubits_of_pow4(size_t len) {
  int n = 0;
  size_t v = 1;
  while (v < len) {
    v *= 4;
    ++n;
  }
  if (v != len) throw DimensionError("length is not a power of four");
  return n;
}

// phase of P|i>: P|i> = phase * |i ^ x>, phase = i^{#Y} (-1)^{popcount(z&i)}
cplx pauli_column_phase(uint64_t x, uint64_t z, uint64_t i) {
  static const cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx ph = kI[std::popcount(x & z) & 3];
  return (std::popcount(z & i) & 1) ? -ph : ph;
}

void masks_of_pauli_index(size_t a, int n, uint64_t& x, uint64_t& z) {
  x = z = 0;
  for (int q = 0; q < n; ++q) {
    const size_t r = (a >> (2 * q)) & 3;
    x |= kXBit[r] << q;
    z |= kZBit[r] << q;
  }
}

}  // namespace

void apply_1q(Eigen::VectorXcd& psi, int qubit, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index step = Eigen::Index(1) << qubit;
  for (Eigen::Index hi = 0; hi < dim; hi += 2 * step)
    for (Eigen::Index lo = hi; lo < hi + step; ++lo) {
      const cplx a = psi(lo), b = psi(lo + step);
      psi(lo) = u(0, 0) * a + u(0, 1) * b;
      psi(lo + step) = u(1, 0) * a + u(1, 1) * b;
    }
}

void apply_cnot(Eigen::VectorXcd& psi, int control, int target) {
  const auto dim = static_cast<uint64_t>(psi.size());
  const uint64_t cm = 1ULL << control, tm = 1ULL << target;
  for (uint64_t i = 0; i < dim; ++i)
    if ((i & cm) && !(i & tm))
      std::swap(psi(static_cast<Eigen::Index>(i)),
                psi(static_cast<Eigen::Index>(i | tm)));
}

void apply_local_unitary(Eigen::VectorXcd& psi, const std::vector<int>& support,
                         const Eigen::MatrixXcd& u) {
  const int k = static_cast<int>(support.size());
  const Eigen::Index kk = Eigen::Index(1) << k;
  if (u.rows() != kk || u.cols() != kk)
    throw DimensionError("local unitary size does not match support");
  const auto dim = static_cast<uint64_t>(psi.size());

  std::vector<uint64_t> stride(static_cast<size_t>(k));
  uint64_t support_mask = 0;
  for (int j = 0; j < k; ++j) {
    stride[static_cast<size_t>(j)] = 1ULL << support[static_cast<size_t>(j)];
    support_mask |= stride[static_cast<size_t>(j)];
  }
  std::vector<uint64_t> offset(static_cast<size_t>(kk));
  for (uint64_t m = 0; m < static_cast<uint64_t>(kk); ++m) {
    uint64_t o = 0;
    for (int j = 0; j < k; ++j)
      if ((m >> j) & 1) o |= stride[static_cast<size_t>(j)];
    offset[m] = o;
  }

  Eigen::VectorXcd in(kk), out(kk);
  for (uint64_t base = 0; base < dim; ++base) {
    if (base & support_mask) continue;
    for (Eigen::Index m = 0; m < kk; ++m)
      in(m) = psi(static_cast<Eigen::Index>(base + offset[static_cast<size_t>(m)]));
    out.noalias() = u * in;
    for (Eigen::Index m = 0; m < kk; ++m)
      psi(static_cast<Eigen::Index>(base + offset[static_cast<size_t>(m)])) = out(m);
  }
}

Eigen::MatrixXcd embed_unitary(const Eigen::MatrixXcd& u,
                               const std::vector<int>& support, int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(col) = 1.0;
    apply_local_unitary(e, support, u);
    out.col(col) = e;
  }
  return out;
}

PauliVec pauli_vec_from_statevector(const Eigen::VectorXcd& psi) {
  const auto dim = static_cast<uint64_t>(psi.size());
  const int n = std::countr_zero(dim);
  PauliVec pv;
  pv.n_qubits = n;
  pv.v.assign(size_t(1) << (2 * n), 0.0);
  for (size_t a = 0; a < pv.v.size(); ++a) {
    uint64_t x, z;
    masks_of_pauli_index(a, n, x, z);
    cplx acc(0, 0);
    for (uint64_t i = 0; i < dim; ++i)
      acc += std::conj(psi(static_cast<Eigen::Index>(i ^ x))) *
             pauli_column_phase(x, z, i) * psi(static_cast<Eigen::Index>(i));
    pv.v[a] = acc.real();
  }
  return pv;
}

PauliVec pauli_vec_from_density(const Eigen::MatrixXcd& rho) {
  const auto dim = static_cast<uint64_t>(rho.rows());
  const int n = std::countr_zero(dim);
  PauliVec pv;
  pv.n_qubits = n;
  pv.v.assign(size_t(1) << (2 * n), 0.0);
  for (size_t a = 0; a < pv.v.size(); ++a) {
    uint64_t x, z;
    masks_of_pauli_index(a, n, x, z);
    cplx acc(0, 0);
    for (uint64_t i = 0; i < dim; ++i)
      acc += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ x)) *
             pauli_column_phase(x, z, i);
    pv.v[a] = acc.real();
  }
  return pv;
}

Eigen::MatrixXcd pauli_vec_to_density(const PauliVec& pv) {
  const int n = pv.n_qubits;
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double scale = 1.0 / static_cast<double>(dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t a = 0; a < pv.v.size(); ++a) {
    if (pv.v[a] == 0.0) continue;
    uint64_t x, z;
    masks_of_pauli_index(a, n, x, z);
    for (uint64_t i = 0; i < static_cast<uint64_t>(dim); ++i)
      rho(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i)) +=
          pv.v[a] * pauli_column_phase(x, z, i) * scale;
  }
  return rho;
}

void apply_ptm_1q(PauliVec& pv, int qubit, const Eigen::Matrix4d& r) {
  const size_t dim = pv.v.size();
  const size_t step = size_t(1) << (2 * qubit);
  for (size_t hi = 0; hi < dim; hi += 4 * step)
    for (size_t lo = hi; lo < hi + step; ++lo) {
      const double a0 = pv.v[lo], a1 = pv.v[lo + step];
      const double a2 = pv.v[lo + 2 * step], a3 = pv.v[lo + 3 * step];
      for (int row = 0; row < 4; ++row)
        pv.v[lo + static_cast<size_t>(row) * step] =
            r(row, 0) * a0 + r(row, 1) * a1 + r(row, 2) * a2 + r(row, 3) * a3;
    }
}

void apply_ptm_local(PauliVec& pv, const std::vector<int>& support,
                     const Eigen::MatrixXd& r) {
  const int k = static_cast<int>(support.size());
  const size_t K = size_t(1) << (2 * k);
  if (static_cast<size_t>(r.rows()) != K)
    throw DimensionError("PTM size does not match support");
  const size_t dim = pv.v.size();

  size_t support_mask = 0;
  std::vector<size_t> offset(K);
  for (size_t m = 0; m < K; ++m) {
    size_t o = 0;
    for (int j = 0; j < k; ++j)
      o += ((m >> (2 * j)) & 3) << (2 * support[static_cast<size_t>(j)]);
    offset[m] = o;
  }
  for (int j = 0; j < k; ++j)
    support_mask |= size_t(3) << (2 * support[static_cast<size_t>(j)]);

  Eigen::VectorXd in(static_cast<Eigen::Index>(K)),
      out(static_cast<Eigen::Index>(K));
  for (size_t base = 0; base < dim; ++base) {
    if (base & support_mask) continue;
    for (size_t m = 0; m < K; ++m)
      in(static_cast<Eigen::Index>(m)) = pv.v[base + offset[m]];
    out.noalias() = r * in;
    for (size_t m = 0; m < K; ++m)
      pv.v[base + offset[m]] = out(static_cast<Eigen::Index>(m));
  }
}

void apply_diag_local(PauliVec& pv, const std::vector<int>& support,
                      const Eigen::VectorXd& diag) {
  const int k = static_cast<int>(support.size());
  const size_t dim = pv.v.size();
  for (size_t i = 0; i < dim; ++i) {
    size_t local = 0;
    for (int j = 0; j < k; ++j)
      local |= ((i >> (2 * support[static_cast<size_t>(j)])) & 3) << (2 * j);
    pv.v[i] *= diag(static_cast<Eigen::Index>(local));
  }
}

void apply_cnot_ptm(PauliVec& pv, int control, int target) {
  // CNOT conjugation permutes Pauli words (x_t ^= x_c, z_c ^= z_t) with a
  // sign flip exactly when x_c & z_t & (x_t == z_c).
  const size_t dim = pv.v.size();
  const int sc = 2 * control, st = 2 * target;
  std::vector<double> out(dim);
  for (size_t i = 0; i < dim; ++i) {
    const size_t rc = (i >> sc) & 3, rt = (i >> st) & 3;
    const uint64_t xc = kXBit[rc], zc = kZBit[rc];
    const uint64_t xt = kXBit[rt], zt = kZBit[rt];
    const uint64_t nxt = xt ^ xc, nzc = zc ^ zt;
    const size_t nrc = static_cast<size_t>(kRankFromXZ[xc + 2 * nzc]);
    const size_t nrt = static_cast<size_t>(kRankFromXZ[nxt + 2 * zt]);
    size_t j = i & ~((size_t(3) << sc) | (size_t(3) << st));
    j |= (nrc << sc) | (nrt << st);
    const bool flip = xc && zt && (xt == zc);
    out[j] = flip ? -pv.v[i] : pv.v[i];
  }
  pv.v = std::move(out);
}

Eigen::Matrix4d ptm_of_1q_unitary(const Eigen::Matrix2cd& u) {
  static const Eigen::Matrix2cd paulis[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  Eigen::Matrix4d r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Eigen::Matrix2cd m = paulis[a] * u * paulis[b] * u.adjoint();
      r(a, b) = 0.5 * m.trace().real();
    }
  return r;
}

}  // namespace twirlzne::kernels
