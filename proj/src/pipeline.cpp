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

#include "twirlzne/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twirlzne {

using kernels::PauliVec;

void RCConfig::validate() const {
  if (mode == Mode::finite && n_rand < 1)
    throw ContractError("finite RC needs n_rand >= 1");
}

std::string RCConfig::name() const {
  switch (mode) {
    case Mode::off: return "off";
    case Mode::finite: return "finite(" + std::to_string(n_rand) + ")";
    case Mode::infinite: return "infinite";
  }
  throw Error("unreachable");
}

std::string MitigationConfig::name() const {
  const bool has_rc = rc.mode != RCConfig::Mode::off;
  if (has_rc && zne) return "rc+zne";
  if (has_rc) return "rc";
  if (zne) return "zne";
  return "none";
}

MitigationConfig MitigationConfig::parse_name(const std::string& name) {
  if (name == "none") return {RCConfig::off(), std::nullopt};
  if (name == "rc") return {RCConfig::infinite(), std::nullopt};
  if (name == "rc20") return {RCConfig::finite(20), std::nullopt};
  if (name == "zne") return {RCConfig::off(), ZNEConfig{}};
  if (name == "rc+zne") return {RCConfig::infinite(), ZNEConfig{}};
  if (name == "rc20+zne") return {RCConfig::finite(20), ZNEConfig{}};
  throw ParseError("unknown mitigation config '" + name + "'");
}

std::string EnergyDiagnostics::to_json() const {
  nlohmann::json j;
  j["factors"] = factors;
  j["factor_energies"] = factor_energies;
  if (!dressing_energies.empty()) j["dressing_energies"] = dressing_energies;
  j["fit_coefficients"] = fit_coefficients;
  j["zero_noise_value"] = zero_noise_value;
  j["seed"] = seed;
  j["rc_mode"] = rc_mode;
  j["sampled"] = sampled;
  return j.dump();
}

// ---------------------------------------------------------------------------
// twirl cache
// ---------------------------------------------------------------------------

std::string TwirlCache::key_of(const Circuit& circuit, size_t hard_index,
                               const NoiseConfig& noise, int ring) {
  std::ostringstream key;
  key << ring << '|' << noise.to_json() << '|';
  for (const auto& [c, t] : circuit.hard[hard_index].cnots)
    key << c << ',' << t << ';';
  return key.str();
}

namespace {

// Combined per-cycle noise referred to the pre-gate side on the union
// support: N = D^-1 (post-noise, then trailing easy-cycle noise) D pre-noise.
TwirlCache::Entry build_twirled_entry(const Circuit& circuit,
                                      size_t hard_index,
                                      const NoiseConfig& noise, int ring) {
  const auto& cnots = circuit.hard[hard_index].cnots;
  // collect attachments for a one-cycle probe circuit
  Circuit probe;
  probe.n_qubits = circuit.n_qubits;
  probe.easy.resize(2);
  probe.hard.push_back(circuit.hard[hard_index]);
  const NoisyCircuit nc = attach_noise(probe, noise, ring);

  std::vector<const Attachment*> pre, post;
  for (const auto& a : nc.hard_noise[0])
    (a.side == Attachment::Side::pre ? pre : post).push_back(&a);
  // trailing easy-cycle noise is twirled together with the hard cycle
  for (const auto& a : nc.easy_noise[1]) post.push_back(&a);

  std::set<int> qubits;
  for (const auto& [c, t] : cnots) {
    qubits.insert(c);
    qubits.insert(t);
  }
  for (const auto* a : pre) qubits.insert(a->support.begin(), a->support.end());
  for (const auto* a : post)
    qubits.insert(a->support.begin(), a->support.end());
  std::vector<int> support(qubits.begin(), qubits.end());
  const int k = static_cast<int>(support.size());
  if (k > ChannelPTM::kMaxSupport)
    throw CapacityError("twirl support exceeds " +
                        std::to_string(ChannelPTM::kMaxSupport) + " qubits");

  auto local = [&](const std::vector<int>& qs) {
    std::vector<int> out;
    for (int q : qs)
      out.push_back(static_cast<int>(
          std::lower_bound(support.begin(), support.end(), q) -
          support.begin()));
    return out;
  };

  auto attachment_ptm = [&](const Attachment& a) {
    if (a.unitary)
      return ChannelPTM::from_unitary(
          kernels::embed_unitary(*a.unitary, local(a.support), k));
    // 1-qubit channel tensored into the union support
    const auto lq = local(a.support);
    const auto& small = a.channel->matrix();
    const Eigen::Index dim = Eigen::Index(1) << (2 * k);
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index ai = 0; ai < dim; ++ai)
      for (Eigen::Index bi = 0; bi < dim; ++bi) {
        const int la = (ai >> (2 * lq[0])) & 3;
        const int lb = (bi >> (2 * lq[0])) & 3;
        const Eigen::Index ra = ai & ~(Eigen::Index(3) << (2 * lq[0]));
        const Eigen::Index rb = bi & ~(Eigen::Index(3) << (2 * lq[0]));
        if (ra == rb) big(ai, bi) = small(la, lb);
      }
    return ChannelPTM(k, std::move(big));
  };

  ChannelPTM pre_ptm = ChannelPTM::identity(k);
  for (const auto* a : pre) pre_ptm = attachment_ptm(*a).compose_after(pre_ptm);
  ChannelPTM post_ptm = ChannelPTM::identity(k);
  for (const auto* a : post)
    post_ptm = attachment_ptm(*a).compose_after(post_ptm);

  Eigen::MatrixXcd cnots_u =
      Eigen::MatrixXcd::Identity(Eigen::Index(1) << k, Eigen::Index(1) << k);
  for (const auto& [c, t] : cnots) {
    const auto lc = local({c})[0], lt = local({t})[0];
    cnots_u = cnot_matrix(lc, lt, k) * cnots_u;
  }
  const ChannelPTM d = ChannelPTM::from_unitary(cnots_u);
  ChannelPTM d_inv(k, d.matrix().transpose());

  const ChannelPTM combined =
      d_inv.compose_after(post_ptm).compose_after(d).compose_after(pre_ptm);
  const ChannelPTM twirled = twirl_ptm(combined);

  TwirlCache::Entry entry;
  entry.support = support;
  entry.diag = twirled.matrix().diagonal();
  return entry;
}

}  // namespace

const TwirlCache::Entry& TwirlCache::lookup(const Circuit& circuit,
                                            size_t hard_index,
                                            const NoiseConfig& noise,
                                            int ring) {
  const std::string key = key_of(circuit, hard_index, noise, ring);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  Entry built = build_twirled_entry(circuit, hard_index, noise, ring);
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.try_emplace(key, std::move(built)).first->second;
}

void TwirlCache::warm(const Circuit& circuit, const NoiseConfig& noise,
                      int ring) {
  for (size_t k = 0; k < circuit.hard.size(); ++k)
    lookup(circuit, k, noise, ring);
}

// ---------------------------------------------------------------------------
// evaluation paths
// ---------------------------------------------------------------------------

namespace {

struct Evaluator {
  const PauliSum& hamiltonian;
  const NoiseConfig& noise;
  const Measurement& measurement;
  const DenseState& input;
  TwirlCache* cache;  // never null; callers substitute a local cache
  int ring;
  size_t non_identity_terms;

  TwirlCache& twirls() { return *cache; }

  uint64_t per_term_shots(uint64_t budget) const {
    const auto m = static_cast<uint64_t>(non_identity_terms);
    if (m == 0) return 1;
    const uint64_t per = budget / m;
    if (per == 0)
      throw ContractError("shot budget smaller than the term count");
    return per;
  }

  double measure_state(const DenseState& state, uint64_t budget,
                       Rng& shot_rng) const {
    if (measurement.mode == Measurement::Mode::exact)
      return expectation(state, hamiltonian);
    return sample_expectation(state, hamiltonian, per_term_shots(budget),
                              shot_rng);
  }

  // plain noisy run (no RC): statevector when coherent, density otherwise
  double eval_plain(const Circuit& circuit, uint64_t budget, Rng& shot_rng) {
    const NoisyCircuit nc = attach_noise(circuit, noise, ring);
    const DenseState out = simulate(nc, input);
    return measure_state(out, budget, shot_rng);
  }

  double eval_finite_rc(const Circuit& circuit, int n_rand, Rng& dress_rng,
                        uint64_t budget, Rng& shot_rng,
                        std::vector<double>* per_dressing) {
    // budget split evenly across dressings, remainder to the first ones
    const uint64_t base = budget / static_cast<uint64_t>(n_rand);
    const uint64_t rem = budget % static_cast<uint64_t>(n_rand);
    double acc = 0;
    for (int d = 0; d < n_rand; ++d) {
      const Circuit dressed = dress_circuit(circuit, dress_rng);
      const NoisyCircuit nc = attach_noise(dressed, noise, ring);
      const DenseState out = simulate(nc, input);
      const uint64_t slice =
          base + (static_cast<uint64_t>(d) < rem ? 1 : 0);
      const double e = measure_state(out, slice, shot_rng);
      if (per_dressing) per_dressing->push_back(e);
      acc += e;
    }
    return acc / n_rand;
  }

  // infinite-randomization run in the Pauli-vector representation
  PauliVec run_infinite_pv(const Circuit& circuit) {
    PauliVec pv = input.is_density()
                      ? kernels::pauli_vec_from_density(input.rho)
                      : kernels::pauli_vec_from_statevector(input.vec);
    const NoisyCircuit nc = attach_noise(circuit, noise, ring);
    // noise of the leading easy cycle stays untwirled (nothing precedes it)
    for (const auto& a : nc.easy_noise[0])
      if (a.side == Attachment::Side::pre) apply_attachment_ptm(pv, a);
    apply_easy_cycle_ptm(pv, circuit, 0);
    for (const auto& a : nc.easy_noise[0])
      if (a.side == Attachment::Side::post) apply_attachment_ptm(pv, a);

    const int ring_eff = ring > 0 ? ring : circuit.n_qubits;
    for (size_t k = 0; k < circuit.hard.size(); ++k) {
      const auto& entry = twirls().lookup(circuit, k, noise, ring_eff);
      kernels::apply_diag_local(pv, entry.support, entry.diag);
      for (const auto& [c, t] : circuit.hard[k].cnots)
        kernels::apply_cnot_ptm(pv, c, t);
      apply_easy_cycle_ptm(pv, circuit, k + 1);
    }
    return pv;
  }

  DenseState run_infinite(const Circuit& circuit) {
    return DenseState::from_density(
        kernels::pauli_vec_to_density(run_infinite_pv(circuit)));
  }

  double eval_infinite(const Circuit& circuit, uint64_t budget,
                       Rng& shot_rng) {
    if (measurement.mode == Measurement::Mode::exact)
      return energy_from_pauli_vec(run_infinite_pv(circuit), hamiltonian);
    const DenseState out = run_infinite(circuit);
    return measure_state(out, budget, shot_rng);
  }
};

}  // namespace

EnergyResult mitigated_energy_circuit(const Circuit& circuit,
                                      const PauliSum& hamiltonian,
                                      const NoiseConfig& noise,
                                      const MitigationConfig& mitigation,
                                      const Measurement& measurement,
                                      const DenseState& input, uint64_t seed,
                                      TwirlCache* cache, int ring) {
  mitigation.rc.validate();
  if (mitigation.zne) mitigation.zne->validate();

  size_t non_identity = 0;
  for (const auto& [w, c] : hamiltonian.terms())
    if (!w.is_identity()) ++non_identity;

  TwirlCache local_cache;
  if (!cache) cache = &local_cache;
  Evaluator ev{hamiltonian, noise, measurement, input,
               cache,       ring,  non_identity};

  std::vector<int> factors =
      mitigation.zne ? mitigation.zne->factors : std::vector<int>{1};

  Rng dress_rng(Rng::derive(seed, mitigation.rc.stream));
  Rng shot_rng(Rng::derive(seed, measurement.stream));

  EnergyDiagnostics diag;
  diag.factors = factors;
  diag.seed = seed;
  diag.rc_mode = mitigation.rc.name();
  diag.sampled = measurement.mode == Measurement::Mode::shots;

  std::vector<std::pair<int, double>> points;
  for (int r : factors) {
    const Circuit magnified = magnify(circuit, r);
    double e = 0;
    switch (mitigation.rc.mode) {
      case RCConfig::Mode::off:
        e = ev.eval_plain(magnified, measurement.total_shots, shot_rng);
        break;
      case RCConfig::Mode::finite: {
        std::vector<double> per_dressing;
        e = ev.eval_finite_rc(magnified, mitigation.rc.n_rand, dress_rng,
                              measurement.total_shots, shot_rng,
                              &per_dressing);
        diag.dressing_energies.push_back(std::move(per_dressing));
        break;
      }
      case RCConfig::Mode::infinite:
        e = ev.eval_infinite(magnified, measurement.total_shots, shot_rng);
        break;
    }
    diag.factor_energies.push_back(e);
    points.emplace_back(r, e);
  }

  EnergyResult result;
  if (mitigation.zne) {
    const ExtrapolationFit fit = extrapolate(points, *mitigation.zne);
    diag.fit_coefficients = fit.coefficients;
    diag.zero_noise_value = fit.zero_noise_value;
    result.energy = fit.zero_noise_value;
  } else {
    diag.zero_noise_value = points[0].second;
    result.energy = points[0].second;
  }
  result.diagnostics = std::move(diag);
  return result;
}

EnergyResult mitigated_energy(const CircuitTemplate& tmpl,
                              std::span<const double> theta,
                              const PauliSum& hamiltonian,
                              const NoiseConfig& noise,
                              const MitigationConfig& mitigation,
                              const Measurement& measurement,
                              const DenseState& input, uint64_t seed,
                              TwirlCache* cache, int ring) {
  return mitigated_energy_circuit(tmpl.bind(theta), hamiltonian, noise,
                                  mitigation, measurement, input, seed, cache,
                                  ring);
}

std::map<PauliString, double> per_term_expectations(
    const Circuit& circuit, const PauliSum& obs, const NoiseConfig& noise,
    const RCConfig& rc, const DenseState& input, uint64_t seed,
    TwirlCache* cache, int ring) {
  rc.validate();
  size_t non_identity = 0;
  for (const auto& [w, c] : obs.terms())
    if (!w.is_identity()) ++non_identity;
  Measurement meas = Measurement::exact();
  TwirlCache local_cache;
  if (!cache) cache = &local_cache;
  Evaluator ev{obs, noise, meas, input, cache, ring, non_identity};

  std::map<PauliString, double> out;
  switch (rc.mode) {
    case RCConfig::Mode::off: {
      const DenseState st = simulate(attach_noise(circuit, noise, ring), input);
      for (const auto& [w, c] : obs.terms())
        out[w] = expectation_term(st, w).real();
      break;
    }
    case RCConfig::Mode::infinite: {
      const DenseState st = ev.run_infinite(circuit);
      for (const auto& [w, c] : obs.terms())
        out[w] = expectation_term(st, w).real();
      break;
    }
    case RCConfig::Mode::finite: {
      Rng dress_rng(Rng::derive(seed, rc.stream));
      for (int d = 0; d < rc.n_rand; ++d) {
        const Circuit dressed = dress_circuit(circuit, dress_rng);
        const DenseState st =
            simulate(attach_noise(dressed, noise, ring), input);
        for (const auto& [w, c] : obs.terms())
          out[w] += expectation_term(st, w).real() / rc.n_rand;
      }
      break;
    }
  }
  return out;
}

}  // namespace twirlzne
