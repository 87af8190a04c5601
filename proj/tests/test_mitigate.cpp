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
#include "twirlzne/pipeline.hpp"

using namespace twirlzne;
namespace fs = std::filesystem;

static const fs::path kData = fs::path(TZ_DATA_DIR) / "h2";
static const double kDeg = M_PI / 180.0;

namespace {

struct H2Setup {
  IntegralProblem problem;
  PauliSum hamiltonian;
  CircuitTemplate tmpl;
  DenseState hf;
  double e_fci;
};

H2Setup h2_setup() {
  auto problem = load_integrals(kData / "h2_0.7414.ints");
  PauliSum h = jordan_wigner(problem.hamiltonian);
  auto tmpl = trotterize(build_cluster(problem.spec));
  auto hf = hartree_fock_state(problem.spec);
  const double e_fci = ground_energy_exact(h).energy;
  return {std::move(problem), std::move(h), std::move(tmpl), std::move(hf),
          e_fci};
}

}  // namespace

TEST_CASE("cnot_conjugate matches matrix conjugation for all words") {
  HardCycle cycle{{{0, 1}}};
  const Eigen::MatrixXcd d = cnot_matrix(0, 1, 2);
  const char L[] = {'I', 'X', 'Y', 'Z'};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::string w{L[a], L[b]};
      const PauliString img =
          cnot_conjugate(PauliString::from_text(w), cycle);
      const oracles::Mat lhs =
          d * oracles::word_matrix(w) * d.adjoint();
      // image correct up to sign (signs are unobservable for twirling)
      const oracles::Mat rhs = oracles::word_matrix(img.text());
      const double plus = (lhs - rhs).cwiseAbs().maxCoeff();
      const double minus = (lhs + rhs).cwiseAbs().maxCoeff();
      CHECK(std::min(plus, minus) < 1e-13);
    }
  // the textbook case: CNOT (X tensor I) CNOT = X tensor X
  CHECK(cnot_conjugate(PauliString::from_text("XI"), cycle).text() == "XX");
  CHECK(cnot_conjugate(PauliString::from_text("IZ"), cycle).text() == "ZZ");
}

TEST_CASE("identity twirl words leave the circuit semantics unchanged") {
  const auto s = h2_setup();
  const Circuit c = s.tmpl.bind(std::vector<double>{0.2, -0.1, 0.15});
  std::vector<PauliString> ids(c.hard.size(), PauliString(4));
  const Circuit dressed = dress_circuit_with(c, ids);
  const auto out0 = simulate(c, s.hf);
  const auto out1 = simulate(dressed, s.hf);
  CHECK(fidelity(out0, out1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("random dressings preserve the noiseless output state") {
  const auto s = h2_setup();
  const Circuit c = s.tmpl.bind(std::vector<double>{0.3, 0.1, -0.2});
  const auto reference = simulate(c, s.hf);
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit dressed = dress_circuit(c, rng);
    const auto out = simulate(dressed, s.hf);
    CHECK(fidelity(reference, out) >= 1.0 - 1e-12);
  }
}

TEST_CASE("twirl of the identity is the identity") {
  const ChannelPTM id = ChannelPTM::identity(2);
  const ChannelPTM tw = twirl_ptm(id);
  CHECK((tw.matrix() - id.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("twirl of a 1-qubit Z rotation is a dephasing channel") {
  const double theta = 0.47;
  Gate rz{GateKind::RZ, theta};
  const ChannelPTM ch = ChannelPTM::from_unitary(gate_matrix(rz));
  const ChannelPTM tw = twirl_ptm(ch);
  CHECK(tw.is_diagonal(1e-13));
  CHECK(tw.matrix()(0, 0) == doctest::Approx(1.0));
  CHECK(tw.matrix()(1, 1) == doctest::Approx(std::cos(theta)));
  CHECK(tw.matrix()(2, 2) == doctest::Approx(std::cos(theta)));
  CHECK(tw.matrix()(3, 3) == doctest::Approx(1.0));
  // p_Z = sin^2(theta/2): dephasing survives with 1 - 2 p_Z on X/Y
  const double pz = std::pow(std::sin(theta / 2), 2);
  CHECK(1 - 2 * pz == doctest::Approx(std::cos(theta)));
  tw.check_cptp(1e-10);
}

TEST_CASE("twirl equals the brute-force conjugation average") {
  Rng rng(11);
  Eigen::MatrixXcd herm(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      herm(r, c) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  herm = ((herm + herm.adjoint()) * 0.1).eval();
  const oracles::Mat u = oracles::expm(cplx(0, 1) * herm);
  const ChannelPTM ch = ChannelPTM::from_unitary(u);

  const ChannelPTM tw = twirl_ptm(ch);
  CHECK(tw.max_off_diagonal() < 1e-12);

  // oracle: average the 16 dense conjugated PTMs P R P
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(16, 16);
  for (size_t p = 0; p < 16; ++p) {
    const ChannelPTM conj =
        ChannelPTM::from_unitary(pauli_basis_matrix(p, 2));
    avg += conj.matrix() * ch.matrix() * conj.matrix();
  }
  avg /= 16.0;
  CHECK((tw.matrix() - avg).cwiseAbs().maxCoeff() < 1e-12);

  // the twirl preserves the PTM trace, hence the average infidelity
  CHECK(infidelity(tw) == doctest::Approx(infidelity(ch)).epsilon(1e-12));
  tw.check_cptp(1e-9);
}

TEST_CASE("magnify structure and semantics") {
  const auto s = h2_setup();
  const Circuit c = s.tmpl.bind(std::vector<double>{0.1, 0.2, -0.3});
  CHECK(magnify(c, 1).to_json() == c.to_json());
  const Circuit c5 = magnify(c, 5);
  CHECK(c5.hard_cycle_count() == 5 * c.hard_cycle_count());
  CHECK_THROWS_AS(magnify(c, 2), ContractError);
  CHECK_THROWS_AS(magnify(c, 0), ContractError);

  const auto out = simulate(magnify(c, 3), s.hf);
  const auto ref = simulate(c, s.hf);
  CHECK(fidelity(out, ref) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extrapolation closed forms") {
  ZNEConfig lin;
  const auto fit = extrapolate({{1, 1.0}, {3, 0.8}}, lin);
  CHECK(fit.zero_noise_value == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(fit.evaluate(1) == doctest::Approx(1.0));
  CHECK(fit.evaluate(3) == doctest::Approx(0.8));

  // constant data fits a constant at any order
  ZNEConfig quad;
  quad.order = ZNEConfig::Order::quadratic;
  quad.factors = {1, 3, 5};
  const auto flat = extrapolate({{1, 0.42}, {3, 0.42}, {5, 0.42}}, quad);
  CHECK(flat.zero_noise_value == doctest::Approx(0.42).epsilon(1e-12));

  // exactly linear synthetic data
  const double e0 = -1.73, lam = 0.031;
  std::vector<std::pair<int, double>> pts;
  for (int r : {1, 3, 5, 7}) pts.emplace_back(r, e0 + lam * r);
  CHECK(extrapolate(pts, lin).zero_noise_value ==
        doctest::Approx(e0).epsilon(1e-12));

  CHECK_THROWS_AS(extrapolate({{1, 1.0}}, lin), ContractError);
  CHECK_THROWS_AS(extrapolate({{1, 1.0}, {1, 0.9}}, lin), ContractError);
  ZNEConfig bad;
  bad.factors = {1, 2};
  CHECK_THROWS_AS(bad.validate(), ContractError);
  bad.factors = {3, 1};
  CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("exhaustive dressings equal the infinite twirl (single CNOT)") {
  // 2-qubit circuit, one CNOT, every coherent noise placement
  for (const auto& spec :
       {NoiseSpec{OverRotation{0.12}}, NoiseSpec{XIRotation{0.17}},
        NoiseSpec{IZRotation{0.23}}}) {
    Circuit c;
    c.n_qubits = 2;
    c.easy.resize(2);
    // a little structure around the CNOT
    c.easy[0].push(0, Gate{GateKind::RY, 0.3});
    c.easy[1].push(1, Gate{GateKind::RX, -0.4});
    c.hard.push_back(HardCycle{{{0, 1}}});
    NoiseConfig cfg{{spec}};
    const NoisyCircuit base = attach_noise(c, cfg);

    Eigen::VectorXcd in(4);
    in << 0.5, -0.5, cplx(0, 0.5), 0.5;
    const DenseState input = DenseState::from_vector(in);

    Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(4, 4);
    const char L[] = {'I', 'X', 'Y', 'Z'};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        std::vector<PauliString> words{
            PauliString::from_text(std::string{L[a], L[b]})};
        const Circuit dressed = dress_circuit_with(c, words);
        const auto out = simulate(attach_noise(dressed, cfg), input);
        avg += out.density();
      }
    avg /= 16.0;

    TwirlCache cache;
    MitigationConfig mit{RCConfig::infinite(), std::nullopt};
    // drive the infinite path through per_term_expectations machinery:
    // compare density matrices via expectations of a complete word set
    PauliSum all_words(2);
    for (size_t w = 0; w < 16; ++w) {
      uint64_t xm = 0, zm = 0;
      PauliString p(2);
      for (int q = 0; q < 2; ++q) {
        const int rank = int((w >> (2 * q)) & 3);
        p.set_letter(q, L[rank]);
      }
      (void)xm;
      (void)zm;
      all_words.add(p, 1.0);
    }
    const auto terms = per_term_expectations(c, all_words, cfg,
                                             RCConfig::infinite(), input, 0,
                                             &cache);
    const DenseState avg_state = DenseState::from_density(avg);
    for (const auto& [w, value] : terms) {
      const double brute = expectation_term(avg_state, w).real();
      CHECK(value == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("mitigated_energy without noise reproduces the noiseless energy") {
  const auto s = h2_setup();
  const std::vector<double> theta{0.05, -0.02, 0.11};
  const double exact =
      expectation(simulate(s.tmpl.bind(theta), s.hf), s.hamiltonian);
  for (const char* name : {"none", "zne", "rc", "rc+zne", "rc20", "rc20+zne"}) {
    const auto mit = MitigationConfig::parse_name(name);
    const auto result =
        mitigated_energy(s.tmpl, theta, s.hamiltonian, NoiseConfig::none(),
                         mit, Measurement::exact(), s.hf, 42);
    CHECK(result.energy == doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("infinite RC + ZNE strictly reduces the over-rotation error") {
  const auto s = h2_setup();
  // near-optimal parameters for equilibrium H2
  const std::vector<double> theta{0.0, 0.0, -0.112};
  const double noiseless =
      expectation(simulate(s.tmpl.bind(theta), s.hf), s.hamiltonian);
  NoiseConfig cfg{{NoiseSpec{OverRotation{0.02}}}};

  TwirlCache cache;
  const auto plain = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::off(), std::nullopt}, Measurement::exact(),
      s.hf, 7, &cache);
  const auto mitigated = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::infinite(), ZNEConfig{}},
      Measurement::exact(), s.hf, 7, &cache);

  const double err_plain = std::abs(plain.energy - noiseless);
  const double err_mit = std::abs(mitigated.energy - noiseless);
  CHECK(err_mit < err_plain);
  CHECK(mitigated.diagnostics.factor_energies.size() == 2);
  CHECK(mitigated.diagnostics.fit_coefficients.size() == 2);
}

TEST_CASE("finite RC converges to the infinite-twirl value") {
  const auto s = h2_setup();
  const std::vector<double> theta{8.6 * kDeg, 0.0, 0.0};
  NoiseConfig cfg{{NoiseSpec{OverRotation{0.02}}}};
  TwirlCache cache;

  const auto infinite = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::infinite(), std::nullopt},
      Measurement::exact(), s.hf, 3, &cache);

  const int n_rand = 200;
  const auto finite = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::finite(n_rand), std::nullopt},
      Measurement::exact(), s.hf, 3, &cache);

  const auto& samples = finite.diagnostics.dressing_energies.at(0);
  REQUIRE((int)samples.size() == n_rand);
  double mean = 0, var = 0;
  for (double e : samples) mean += e;
  mean /= n_rand;
  for (double e : samples) var += (e - mean) * (e - mean);
  var /= (n_rand - 1);
  const double sem = std::sqrt(var / n_rand);
  CHECK(std::abs(mean - infinite.energy) < 3 * sem + 1e-12);
}

TEST_CASE("diagnostics json carries the replay information") {
  const auto s = h2_setup();
  NoiseConfig cfg{{NoiseSpec{XIRotation{3.6 * kDeg}}}};
  const auto result = mitigated_energy(
      s.tmpl, std::vector<double>{0.1, 0.0, -0.05}, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::finite(5), ZNEConfig{}},
      Measurement::exact(), s.hf, 99);
  const std::string j = result.diagnostics.to_json();
  CHECK(j.find("\"seed\":99") != std::string::npos);
  CHECK(j.find("dressing_energies") != std::string::npos);
  CHECK(j.find("fit_coefficients") != std::string::npos);
}

TEST_CASE("sampling mode is deterministic and honors the budget") {
  const auto s = h2_setup();
  NoiseConfig cfg{{NoiseSpec{OverRotation{0.02}}}};
  const std::vector<double> theta{0.0, 0.0, -0.1};
  const auto a = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::off(), ZNEConfig{}},
      Measurement::shots(100000), s.hf, 5);
  const auto b = mitigated_energy(
      s.tmpl, theta, s.hamiltonian, cfg,
      MitigationConfig{RCConfig::off(), ZNEConfig{}},
      Measurement::shots(100000), s.hf, 5);
  CHECK(a.energy == b.energy);
  CHECK(a.diagnostics.sampled);

  // tiny budgets are rejected
  CHECK_THROWS_AS(
      mitigated_energy(s.tmpl, theta, s.hamiltonian, cfg,
                       MitigationConfig{RCConfig::off(), std::nullopt},
                       Measurement::shots(5), s.hf, 5),
      ContractError);
}
