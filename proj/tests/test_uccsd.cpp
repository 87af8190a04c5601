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

#include <filesystem>

#include "oracles.hpp"
#include "twirlzne/engine.hpp"
#include "twirlzne/kernels.hpp"
#include "twirlzne/rng.hpp"
#include "twirlzne/uccsd.hpp"

using namespace twirlzne;
namespace fs = std::filesystem;

static const fs::path kData = fs::path(TZ_DATA_DIR) / "h2";

static IntegralProblem h2_problem() {
  return load_integrals(kData / "h2_0.7414.ints");
}

static Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index(1) << c.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    auto st = DenseState::basis_state(c.n_qubits, static_cast<uint64_t>(col));
    u.col(col) = simulate(c, st).vec;
  }
  return u;
}

TEST_CASE("build_cluster enumerates H2 excitations") {
  const auto problem = h2_problem();
  const ClusterSpec cluster = build_cluster(problem.spec);
  CHECK(cluster.occupied == std::vector<int>{0, 1});
  CHECK(cluster.virtuals == std::vector<int>{2, 3});
  REQUIRE(cluster.singles.size() == 2);
  CHECK(cluster.singles[0] == std::array<int, 2>{2, 0});
  CHECK(cluster.singles[1] == std::array<int, 2>{3, 1});
  REQUIRE(cluster.doubles.size() == 1);
  CHECK(cluster.doubles[0] == std::array<int, 4>{2, 3, 0, 1});
  CHECK(cluster.n_params() == 3);
}

TEST_CASE("build_cluster with no virtual orbitals") {
  MoleculeSpec spec;
  spec.n_spin_orbitals = 2;
  spec.n_electrons = 2;
  const ClusterSpec cluster = build_cluster(spec);
  CHECK(cluster.n_params() == 0);
}

TEST_CASE("cluster parameter count cross-checked combinatorially") {
  // 12 spin-orbitals, 4 electrons, interleaved spins
  MoleculeSpec spec;
  spec.n_spin_orbitals = 12;
  spec.n_electrons = 4;
  const ClusterSpec cluster = build_cluster(spec);

  int singles = 0, doubles = 0;
  for (int i = 4; i < 12; ++i)
    for (int k = 0; k < 4; ++k)
      if (i % 2 == k % 2) ++singles;
  for (int i = 4; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l)
          if (i % 2 + j % 2 == k % 2 + l % 2) ++doubles;
  CHECK((int)cluster.singles.size() == singles);
  CHECK((int)cluster.doubles.size() == doubles);
}

TEST_CASE("antihermitian generator basics") {
  const ClusterSpec cluster = build_cluster(h2_problem().spec);
  const std::vector<double> zero(3, 0.0);
  CHECK(antihermitian_generator(cluster, zero).empty());

  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> theta{rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1)};
    const PauliSum g = antihermitian_generator(cluster, theta);
    const Eigen::MatrixXcd m = to_matrix(g);
    CHECK((m + m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(antihermitian_generator(cluster, std::vector<double>{1.0}),
                  DimensionError);
}

TEST_CASE("single-excitation generator has the XY - YX pattern") {
  ClusterSpec cluster;
  cluster.n_spin_orbitals = 2;
  cluster.occupied = {0};
  cluster.virtuals = {1};
  cluster.singles = {{1, 0}};
  const double t = 0.37;
  const PauliSum g = antihermitian_generator(cluster, std::vector<double>{t});
  REQUIRE(g.size() == 2);
  // i t/2 (YX - XY) with qubit 0 leftmost
  CHECK(std::abs(g.coefficient(PauliString::from_text("XY")) -
                 cplx(0, -t / 2)) < 1e-14);
  CHECK(std::abs(g.coefficient(PauliString::from_text("YX")) -
                 cplx(0, t / 2)) < 1e-14);
}

TEST_CASE("compile_exp_pauli single-letter words") {
  // word "Z": a single Rz(2a), no CNOTs
  auto t = compile_exp_pauli(PauliString::from_text("Z"), 1, -1, 0, 0.4);
  CHECK(t.hard.empty());
  const Circuit c = t.bind({});
  REQUIRE(c.easy.size() == 1);
  const auto& gates = c.easy[0].gates.at(0);
  REQUIRE(gates.size() == 1);
  CHECK(gates[0].kind == GateKind::RZ);
  CHECK(gates[0].angle == doctest::Approx(0.8));
}

TEST_CASE("compile_exp_pauli matches the matrix exponential oracle") {
  Rng rng(19);
  for (const char* word : {"ZZ", "XY", "YX", "XX", "ZY", "XZY", "YIZ"}) {
    const double angle = rng.uniform(-1.5, 1.5);
    const PauliString w = PauliString::from_text(word);
    auto t = compile_exp_pauli(w, w.n_qubits(), -1, 0, angle);
    const Circuit c = t.bind({});
    const Eigen::MatrixXcd u = circuit_unitary(c);
    const oracles::Mat expected =
        oracles::expm(cplx(0, -angle) * oracles::word_matrix(word));
    CHECK(oracles::unitary_distance_up_to_phase(u, expected) < 1e-12);
  }
  CHECK_THROWS_AS(compile_exp_pauli(PauliString::from_text("II"), 2, 0, 1.0),
                  ContractError);
}

TEST_CASE("compile_exp_pauli ZZ staircase structure") {
  auto t = compile_exp_pauli(PauliString::from_text("ZZ"), 2, -1, 0, 0.3);
  REQUIRE(t.hard.size() == 2);
  CHECK(t.hard[0].cnots == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(t.hard[1].cnots == std::vector<std::pair<int, int>>{{0, 1}});
  const Circuit c = t.bind({});
  const auto& rz = c.easy[1].gates.at(1);
  REQUIRE(rz.size() == 1);
  CHECK(rz[0].angle == doctest::Approx(0.6));
}

TEST_CASE("trotterize: empty cluster gives the identity template") {
  MoleculeSpec spec;
  spec.n_spin_orbitals = 2;
  spec.n_electrons = 2;
  const auto t = trotterize(build_cluster(spec));
  CHECK(t.hard.empty());
  CHECK(t.n_params == 0);
}

TEST_CASE("H2 template at theta = 0 reproduces the HF state exactly") {
  const auto problem = h2_problem();
  const auto tmpl = trotterize(build_cluster(problem.spec));
  CHECK(tmpl.n_params == 3);
  const Circuit c = tmpl.bind(std::vector<double>{0, 0, 0});
  const auto hf = hartree_fock_state(problem.spec);
  const auto out = simulate(c, hf);
  CHECK(fidelity(out, hf) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("H2 template matches the dense exponential at small theta") {
  const auto problem = h2_problem();
  const ClusterSpec cluster = build_cluster(problem.spec);
  const auto tmpl = trotterize(cluster);
  const std::vector<double> theta{0.006, -0.004, 0.007};  // |theta| ~ 0.01
  const Circuit c = tmpl.bind(theta);
  const auto hf = hartree_fock_state(problem.spec);
  const auto out = simulate(c, hf);

  const PauliSum g = antihermitian_generator(cluster, theta);
  const oracles::Mat exact = oracles::expm(to_matrix(g));
  const Eigen::VectorXcd ref = exact * hf.vec;
  const double fid = std::norm((ref.adjoint() * out.vec)(0, 0));
  CHECK(fid >= 1.0 - 1e-6);
}

TEST_CASE("bind determinism and structural invariance") {
  const auto tmpl = trotterize(build_cluster(h2_problem().spec));
  const std::vector<double> a{0.1, -0.2, 0.3}, b{1.1, 0.4, -0.9};
  const Circuit ca1 = tmpl.bind(a), ca2 = tmpl.bind(a), cb = tmpl.bind(b);
  CHECK(ca1.to_json() == ca2.to_json());
  CHECK(ca1.hard_cycle_count() == cb.hard_cycle_count());
  REQUIRE(ca1.hard.size() == cb.hard.size());
  for (size_t k = 0; k < ca1.hard.size(); ++k)
    CHECK(ca1.hard[k].cnots == cb.hard[k].cnots);
  CHECK_THROWS_AS(tmpl.bind(std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("fixed-parameter circuit for the precision experiments binds") {
  const auto tmpl = trotterize(build_cluster(h2_problem().spec));
  const double deg = M_PI / 180.0;
  const Circuit c = tmpl.bind(std::vector<double>{8.6 * deg, 0.0, 0.0});
  CHECK(c.hard_cycle_count() > 0);
  // every CNOT sits in a hard cycle; hard cycles carry no parameterized gate
  for (const auto& h : c.hard) CHECK(h.cnots.size() == 1);
}

TEST_CASE("noiseless ansatz conserves particle number") {
  const auto problem = h2_problem();
  const int n = problem.spec.n_spin_orbitals;
  FermionOperator number(n);
  for (int i = 0; i < n; ++i) number.add({{i, true}, {i, false}}, 1.0);
  const PauliSum number_obs = jordan_wigner(number);

  const auto tmpl = trotterize(build_cluster(problem.spec));
  const auto hf = hartree_fock_state(problem.spec);
  Rng rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> theta{rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1)};
    const auto out = simulate(tmpl.bind(theta), hf);
    CHECK(expectation(out, number_obs) ==
          doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("energy at theta = 0 equals the HF energy") {
  const auto problem = h2_problem();
  const PauliSum h = jordan_wigner(problem.hamiltonian);
  const auto tmpl = trotterize(build_cluster(problem.spec));
  const auto hf = hartree_fock_state(problem.spec);
  const auto out = simulate(tmpl.bind(std::vector<double>{0, 0, 0}), hf);
  CHECK(expectation(out, h) == doctest::Approx(expectation(hf, h)).epsilon(1e-10));
}

TEST_CASE("finite-difference gradient is consistent across step sizes") {
  const auto problem = h2_problem();
  const PauliSum h = jordan_wigner(problem.hamiltonian);
  const auto tmpl = trotterize(build_cluster(problem.spec));
  const auto hf = hartree_fock_state(problem.spec);

  auto energy = [&](const std::vector<double>& theta) {
    return expectation(simulate(tmpl.bind(theta), hf), h);
  };
  const std::vector<double> theta0{0.05, -0.03, 0.08};
  for (int d = 0; d < 3; ++d) {
    auto grad_at = [&](double step) {
      std::vector<double> tp = theta0, tm = theta0;
      tp[static_cast<size_t>(d)] += step;
      tm[static_cast<size_t>(d)] -= step;
      return (energy(tp) - energy(tm)) / (2 * step);
    };
    const double g1 = grad_at(1e-3);
    const double g2 = grad_at(5e-4);
    // Richardson agreement: central differences are O(h^2)
    const double extrapolated = (4 * g2 - g1) / 3;
    CHECK(std::abs(g1 - g2) < 1e-6 + 1e-4 * std::abs(extrapolated));
    CHECK(std::abs(g2 - extrapolated) < 1e-6);
  }
}

TEST_CASE("circuit json round trip is bit exact") {
  const auto tmpl = trotterize(build_cluster(h2_problem().spec));
  const Circuit c = tmpl.bind(std::vector<double>{0.123, -0.456, 0.789});
  const std::string j1 = c.to_json();
  const Circuit back = Circuit::from_json(j1);
  CHECK(back.to_json() == j1);
  CHECK_THROWS_AS(Circuit::from_json("{"), ParseError);
  CHECK_THROWS_AS(Circuit::from_json(R"({"n_qubits":1,"cycles":[]})"),
                  ContractError);
}
