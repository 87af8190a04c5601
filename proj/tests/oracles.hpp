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

// Test-only reference implementations. Everything here is built from
// first principles (explicit 2x2 matrices, Kronecker products, brute-force
// sums) and stays independent of the library code paths it checks.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli_1q(char l) {
  Mat m(2, 2);
  const cplx i(0, 1);
  switch (l) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::runtime_error("bad letter");
  }
  return m;
}

// Qubit 0 = leftmost letter = least significant index bit, so the word
// ABC... realizes as kron(C, B, A) down the chain.
inline Mat word_matrix(const std::string& letters) {
  Mat m = pauli_1q(letters[0]);
  for (size_t q = 1; q < letters.size(); ++q) {
    const Mat g = pauli_1q(letters[q]);
    Mat out(m.rows() * 2, m.cols() * 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = g(r, c) * m;
    m = out;
  }
  return m;
}

// exp(A) for a general square matrix via scaling-and-squaring on a Taylor
// series; plenty accurate for the small anti-Hermitian generators used here.
inline Mat expm(const Mat& a) {
  int squarings = 0;
  Mat b = a;
  while (b.cwiseAbs().maxCoeff() > 0.25 && squarings < 120) {
    b *= 0.5;
    ++squarings;
  }
  Mat result = Mat::Identity(a.rows(), a.cols());
  Mat term = Mat::Identity(a.rows(), a.cols());
  for (int k = 1; k <= 24; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// Smallest eigenvalue of a Hermitian matrix by power iteration on the
// shifted matrix (s*I - H); independent of any packaged eigensolver.
inline double ground_energy_power_iteration(const Mat& h, int iters = 20000) {
  const double shift = h.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  Mat m = shift * Mat::Identity(h.rows(), h.cols()) - h;
  // generic start vector (an all-ones start can be orthogonal to the target)
  Vec v(h.rows());
  uint64_t lcg = 0x243f6a8885a308d3ULL;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    lcg = lcg * 6364136223846793005ULL + 1442695040888963407ULL;
    v(i) = cplx(static_cast<double>(lcg >> 40) / double(1 << 24) - 0.5,
                static_cast<double>((lcg >> 16) & 0xffffff) / double(1 << 24) - 0.5);
  }
  v.normalize();
  double mu = 0;
  for (int k = 0; k < iters; ++k) {
    Vec w = m * v;
    mu = w.norm();
    v = w / mu;
  }
  return shift - mu;
}

// Global-phase-insensitive distance between unitaries.
inline double unitary_distance_up_to_phase(const Mat& a, const Mat& b) {
  const cplx ov = (a.adjoint() * b).trace();
  if (std::abs(ov) < 1e-300) return 1.0;
  const cplx phase = ov / std::abs(ov);
  return (a * phase - b).cwiseAbs().maxCoeff();
}

}  // namespace oracles
