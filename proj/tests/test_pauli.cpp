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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "oracles.hpp"
#include "twirlzne/dense.hpp"
#include "twirlzne/pauli.hpp"
#include "twirlzne/rng.hpp"

using namespace twirlzne;

TEST_CASE("pauli string text round trip") {
  for (const char* w : {"I", "X", "XIZY", "ZZZZZZ", "IYXZIIXY"}) {
    auto p = PauliString::from_text(w);
    CHECK(p.text() == w);
    CHECK(p.n_qubits() == (int)std::string(w).size());
  }
  CHECK_THROWS_AS(PauliString::from_text("XQ"), ParseError);
}

TEST_CASE("pauli_mul single qubit algebra") {
  auto mul = [](const char* a, const char* b) {
    return pauli_mul(PauliString::from_text(a), PauliString::from_text(b));
  };
  // ("X","Y") -> (i, "Z")
  auto [ph, w] = mul("X", "Y");
  CHECK(w.text() == "Z");
  CHECK(ph == cplx(0, 1));
  // ("Z","Z") -> (1, "I")
  auto [ph2, w2] = mul("Z", "Z");
  CHECK(w2.text() == "I");
  CHECK(ph2 == cplx(1, 0));
  auto [ph3, w3] = mul("Y", "X");
  CHECK(w3.text() == "Z");
  CHECK(ph3 == cplx(0, -1));

  CHECK_THROWS_AS(mul("XX", "X"), DimensionError);
}

TEST_CASE("pauli_mul matches matrix products (XZ * ZX and random pairs)") {
  // ("XZ","ZX") checked by 4x4 matrix product, then all pairs at n <= 3.
  Rng rng(11);
  auto check_pair = [](const std::string& a, const std::string& b) {
    auto [phase, r] =
        pauli_mul(PauliString::from_text(a), PauliString::from_text(b));
    const oracles::Mat lhs = oracles::word_matrix(a) * oracles::word_matrix(b);
    const oracles::Mat rhs = phase * oracles::word_matrix(r.text());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  };
  check_pair("XZ", "ZX");
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + (int)rng.bounded(3);
    std::string a, b;
    for (int q = 0; q < n; ++q) {
      a += letters[rng.bounded(4)];
      b += letters[rng.bounded(4)];
    }
    check_pair(a, b);
  }
}

TEST_CASE("to_matrix basics") {
  PauliSum z(1);
  z.add(PauliString::from_text("Z"), 1.0);
  Eigen::MatrixXcd mz = to_matrix(z);
  CHECK(mz(0, 0) == cplx(1, 0));
  CHECK(mz(1, 1) == cplx(-1, 0));
  CHECK(std::abs(mz(0, 1)) == 0.0);

  PauliSum s(2);
  s.add(PauliString::from_text("II"), 0.5);
  s.add(PauliString::from_text("ZZ"), 0.5);
  Eigen::MatrixXcd m = to_matrix(s);
  Eigen::VectorXcd d = m.diagonal();
  CHECK(d(0) == cplx(1, 0));
  CHECK(d(1) == cplx(0, 0));
  CHECK(d(2) == cplx(0, 0));
  CHECK(d(3) == cplx(1, 0));
  CHECK(m.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("to_matrix agrees with the kron oracle and is linear") {
  Rng rng(23);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  PauliSum a(3), b(3);
  for (int t = 0; t < 5; ++t) {
    std::string wa, wb;
    for (int q = 0; q < 3; ++q) {
      wa += letters[rng.bounded(4)];
      wb += letters[rng.bounded(4)];
    }
    a.add(PauliString::from_text(wa), cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    b.add(PauliString::from_text(wb), cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
  }
  // oracle comparison
  Eigen::MatrixXcd ma = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto& [w, c] : a.terms()) ma += c * oracles::word_matrix(w.text());
  CHECK((to_matrix(a) - ma).cwiseAbs().maxCoeff() < 1e-14);

  // linearity: to_matrix(alpha A + beta B)
  const cplx alpha(0.3, -0.2), beta(-1.7, 0.05);
  PauliSum combo(3);
  PauliSum at = a, bt = b;
  at *= alpha;
  bt *= beta;
  combo += at;
  combo += bt;
  const Eigen::MatrixXcd lhs = to_matrix(combo);
  const Eigen::MatrixXcd rhs = alpha * to_matrix(a) + beta * to_matrix(b);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expectation on simple states") {
  PauliSum z(1);
  z.add(PauliString::from_text("Z"), 1.0);

  auto zero = DenseState::basis_state(1, 0);
  CHECK(expectation(zero, z) == doctest::Approx(1.0));

  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(expectation(DenseState::from_vector(plus), z) ==
        doctest::Approx(0.0).epsilon(1e-12));

  PauliSum x(1);
  x.add(PauliString::from_text("X"), 1.0);
  DenseState mixed = DenseState::from_density(0.5 * Eigen::MatrixXcd::Identity(2, 2));
  CHECK(expectation(mixed, x) == doctest::Approx(0.0));

  PauliSum bad(1);
  bad.add(PauliString::from_text("X"), cplx(0, 1));
  CHECK_THROWS_AS(expectation(zero, bad), ContractError);
}

TEST_CASE("density expectation of a pure state equals statevector expectation") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + (int)rng.bounded(3);
    Eigen::VectorXcd v(1 << n);
    for (int i = 0; i < v.size(); ++i)
      v(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    v.normalize();
    PauliSum obs(n);
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (int t = 0; t < 4; ++t) {
      std::string w;
      for (int q = 0; q < n; ++q) w += letters[rng.bounded(4)];
      obs.add(PauliString::from_text(w), rng.uniform(-1, 1));
    }
    auto sv = DenseState::from_vector(v);
    auto dm = DenseState::from_density(v * v.adjoint());
    CHECK(expectation(sv, obs) ==
          doctest::Approx(expectation(dm, obs)).epsilon(1e-10));
  }
}

TEST_CASE("ground_energy_exact basics and power-iteration oracle") {
  PauliSum z(1);
  z.add(PauliString::from_text("Z"), 1.0);
  auto g = ground_energy_exact(z);
  CHECK(g.energy == doctest::Approx(-1.0));
  CHECK(std::abs(g.eigenvector(1)) == doctest::Approx(1.0));

  PauliSum h(2);
  h.add(PauliString::from_text("XX"), 1.0);
  h.add(PauliString::from_text("ZZ"), 1.0);
  auto g2 = ground_energy_exact(h);
  Eigen::MatrixXcd m = oracles::word_matrix("XX") + oracles::word_matrix("ZZ");
  const double ref = oracles::ground_energy_power_iteration(m);
  CHECK(g2.energy == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("variational bound: ground energy below all state expectations") {
  Rng rng(77);
  PauliSum h(3);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int t = 0; t < 6; ++t) {
    std::string w;
    for (int q = 0; q < 3; ++q) w += letters[rng.bounded(4)];
    h.add(PauliString::from_text(w), rng.uniform(-1, 1));
  }
  const double e0 = ground_energy_exact(h).energy;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i)
      v(i) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    v.normalize();
    CHECK(expectation(DenseState::from_vector(v), h) >= e0 - 1e-10);
  }
}

TEST_CASE("capacity limits") {
  PauliSum big(13);
  big.add(PauliString(13, 1, 0), 1.0);
  CHECK_THROWS_AS(to_matrix(big), CapacityError);
  CHECK_THROWS_AS(ground_energy_exact(big), CapacityError);
}

TEST_CASE("pauli sum text format round trip and duplicate handling") {
  PauliSum h = PauliSum::parse_text("1.0 Z\n");
  CHECK(h.size() == 1);
  CHECK(h.coefficient(PauliString::from_text("Z")) == cplx(1, 0));

  // duplicate term lines sum
  PauliSum dup = PauliSum::parse_text("0.5 XX\n0.25 XX\n-0.75 ZZ\n");
  CHECK(dup.size() == 2);
  CHECK(dup.coefficient(PauliString::from_text("XX")) == cplx(0.75, 0));

  // complex coefficients in a+bj form
  PauliSum c = PauliSum::parse_text("-0.2427 ZIII\n1e-3+2j XYZI\n0.5j IIIZ\n");
  CHECK(c.coefficient(PauliString::from_text("XYZI")) == cplx(1e-3, 2));
  CHECK(c.coefficient(PauliString::from_text("IIIZ")) == cplx(0, 0.5));

  // writer -> reader round trip, exact map equality
  const std::string text = c.to_text();
  PauliSum c2 = PauliSum::parse_text(text);
  CHECK(c2.size() == c.size());
  for (const auto& [w, coeff] : c.terms()) CHECK(c2.coefficient(w) == coeff);

  CHECK_THROWS_AS(PauliSum::parse_text("1.0\n"), ParseError);
  CHECK_THROWS_AS(PauliSum::parse_text("x Z\n"), ParseError);
  CHECK_THROWS_AS(PauliSum::parse_text("1.0 Z\n1.0 ZZ\n"), ParseError);
}

TEST_CASE("parse error names the line") {
  try {
    PauliSum::parse_text("1.0 ZI\nbogus ZI\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("simplify prunes cancellation residue") {
  PauliSum s(2);
  s.add(PauliString::from_text("XY"), 1.0);
  s.add(PauliString::from_text("XY"), -1.0);
  s.add(PauliString::from_text("ZZ"), 0.5);
  s.simplify();
  CHECK(s.size() == 1);
}

TEST_CASE("pauli sum product matches matrix product") {
  Rng rng(3);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 10; ++trial) {
    PauliSum a(2), b(2);
    for (int t = 0; t < 3; ++t) {
      std::string wa, wb;
      for (int q = 0; q < 2; ++q) {
        wa += letters[rng.bounded(4)];
        wb += letters[rng.bounded(4)];
      }
      a.add(PauliString::from_text(wa), cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
      b.add(PauliString::from_text(wb), cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    const PauliSum ab = a * b;
    CHECK((to_matrix(ab) - to_matrix(a) * to_matrix(b)).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("commutation_sign agrees with matrices") {
  Rng rng(9);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 50; ++trial) {
    std::string a, b;
    for (int q = 0; q < 2; ++q) {
      a += letters[rng.bounded(4)];
      b += letters[rng.bounded(4)];
    }
    const auto ma = oracles::word_matrix(a), mb = oracles::word_matrix(b);
    const bool commute = ((ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(commutation_sign(PauliString::from_text(a),
                           PauliString::from_text(b)) == (commute ? 1 : -1));
  }
}

TEST_CASE("statevector invariants validated") {
  auto s = DenseState::basis_state(2, 3);
  s.validate();
  s.vec(0) = 0.5;
  CHECK_THROWS_AS(s.validate(), IntegrityError);
}
