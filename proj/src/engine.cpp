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

#include "twirlzne/engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace twirlzne {

using kernels::PauliVec;

Attachment Attachment::coherent(Side side, std::vector<int> support,
                                Eigen::MatrixXcd u) {
  Attachment a;
  a.side = side;
  a.support = std::move(support);
  a.channel = std::make_shared<const ChannelPTM>(ChannelPTM::from_unitary(u));
  a.unitary = std::make_shared<const Eigen::MatrixXcd>(std::move(u));
  return a;
}

Attachment Attachment::incoherent(Side side, std::vector<int> support,
                                  ChannelPTM ptm) {
  Attachment a;
  a.side = side;
  a.support = std::move(support);
  a.channel = std::make_shared<const ChannelPTM>(std::move(ptm));
  return a;
}

bool NoisyCircuit::has_channels() const {
  auto any_channel = [](const std::vector<std::vector<Attachment>>& groups) {
    for (const auto& g : groups)
      for (const auto& a : g)
        if (a.channel && !a.unitary) return true;
    return false;
  };
  return any_channel(hard_noise) || any_channel(easy_noise);
}

void NoisyCircuit::check_consistent() const {
  circuit.check_valid();
  if (hard_noise.size() != circuit.hard.size() ||
      easy_noise.size() != circuit.easy.size())
    throw DimensionError("attachment lists do not match cycle counts");
  auto check = [&](const Attachment& a) {
    if (!a.unitary && !a.channel)
      throw ContractError("attachment holds no realization");
    for (int q : a.support)
      if (q < 0 || q >= circuit.n_qubits)
        throw DimensionError("attachment support out of range");
    if (!std::is_sorted(a.support.begin(), a.support.end()))
      throw ContractError("attachment support must be sorted");
  };
  for (const auto& g : hard_noise)
    for (const auto& a : g) check(a);
  for (const auto& g : easy_noise)
    for (const auto& a : g) check(a);
}

namespace {

// Attachments depend only on (noise, cycle pairs, ring, width), not on the
// circuit's angles, so the realizations built here (including the PTM of
// each unitary) are shared across all evaluations of an experiment.
class AttachmentCache {
 public:
  std::vector<Attachment> hard_cycle(const NoiseSpec& spec,
                                     const HardCycle& cycle, int ring,
                                     int n_qubits) {
    std::ostringstream key;
    key << 'h' << '|' << NoiseConfig{{spec}}.to_json() << '|' << ring << '|'
        << n_qubits << '|';
    for (const auto& [c, t] : cycle.cnots) key << c << ',' << t << ';';
    return lookup(key.str(), [&] {
      std::vector<Attachment> out;
      for (const auto& [c, t] : cycle.cnots) {
        if (const auto* m = std::get_if<Relaxation>(&spec.model)) {
          const ChannelPTM ch = relaxation_channel(*m);
          for (int q : {c, t})
            out.push_back(
                Attachment::incoherent(Attachment::Side::post, {q}, ch));
          continue;
        }
        auto d = noise_unitary(spec, c, t, ring);
        out.push_back(Attachment::coherent(d.side, std::move(d.support),
                                           std::move(d.unitary)));
      }
      return out;
    });
  }

  std::vector<Attachment> easy_cycle(const NoiseSpec& spec, int ring,
                                     int n_qubits) {
    std::ostringstream key;
    key << 'e' << '|' << NoiseConfig{{spec}}.to_json() << '|' << ring << '|'
        << n_qubits;
    return lookup(key.str(), [&] {
      auto d = noise_unitary(spec, 0, 1, std::min(ring, n_qubits));
      std::vector<Attachment> out;
      out.push_back(Attachment::coherent(d.side, std::move(d.support),
                                         std::move(d.unitary)));
      return out;
    });
  }

 private:
  template <typename Build>
  std::vector<Attachment> lookup(const std::string& key, Build&& build) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(key);
      if (it != entries_.end()) return it->second;
    }
    std::vector<Attachment> built = build();
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.try_emplace(key, std::move(built)).first->second;
  }

  std::map<std::string, std::vector<Attachment>> entries_;
  std::mutex mu_;
};

AttachmentCache& attachment_cache() {
  static AttachmentCache cache;
  return cache;
}

}  // namespace

NoisyCircuit attach_noise(const Circuit& circuit, const NoiseConfig& config,
                          int ring_size) {
  circuit.check_valid();
  const int ring = ring_size > 0 ? ring_size : circuit.n_qubits;
  NoisyCircuit nc;
  nc.circuit = circuit;
  nc.hard_noise.resize(circuit.hard.size());
  nc.easy_noise.resize(circuit.easy.size());

  auto& cache = attachment_cache();
  for (const auto& spec : config.components) {
    if (spec.targets_single_qubit_gates()) {
      // easy-cycle noise applies before the cycle's gates
      const auto prepared = cache.easy_cycle(spec, ring, circuit.n_qubits);
      for (auto& group : nc.easy_noise)
        group.insert(group.end(), prepared.begin(), prepared.end());
      continue;
    }
    for (size_t k = 0; k < circuit.hard.size(); ++k) {
      const auto prepared =
          cache.hard_cycle(spec, circuit.hard[k], ring, circuit.n_qubits);
      nc.hard_noise[k].insert(nc.hard_noise[k].end(), prepared.begin(),
                              prepared.end());
    }
  }
  nc.check_consistent();
  return nc;
}

namespace {

void apply_attachment_sv(Eigen::VectorXcd& psi, const Attachment& a) {
  if (!a.unitary)
    throw ModeError("statevector path hit a channel attachment");
  if (a.support.size() == 1)
    kernels::apply_1q(psi, a.support[0], *a.unitary);
  else
    kernels::apply_local_unitary(psi, a.support, *a.unitary);
}

void apply_side_sv(Eigen::VectorXcd& psi, const std::vector<Attachment>& group,
                   Attachment::Side side) {
  for (const auto& a : group)
    if (a.side == side) apply_attachment_sv(psi, a);
}

void apply_side_ptm(PauliVec& pv, const std::vector<Attachment>& group,
                    Attachment::Side side) {
  for (const auto& a : group)
    if (a.side == side) apply_attachment_ptm(pv, a);
}

}  // namespace

Eigen::VectorXcd run_statevector(const NoisyCircuit& nc, Eigen::VectorXcd psi) {
  const Circuit& c = nc.circuit;
  for (size_t k = 0; k <= c.hard.size(); ++k) {
    apply_side_sv(psi, nc.easy_noise[k], Attachment::Side::pre);
    for (const auto& [q, gates] : c.easy[k].gates) {
      Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
      for (const Gate& g : gates) u = gate_matrix(g) * u;
      kernels::apply_1q(psi, q, u);
    }
    apply_side_sv(psi, nc.easy_noise[k], Attachment::Side::post);
    if (k < c.hard.size()) {
      apply_side_sv(psi, nc.hard_noise[k], Attachment::Side::pre);
      for (const auto& [ctl, tgt] : c.hard[k].cnots)
        kernels::apply_cnot(psi, ctl, tgt);
      apply_side_sv(psi, nc.hard_noise[k], Attachment::Side::post);
    }
  }
  return psi;
}

void apply_easy_cycle_ptm(PauliVec& pv, const Circuit& c, size_t k) {
  for (const auto& [q, gates] : c.easy[k].gates) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (const Gate& g : gates) u = gate_matrix(g) * u;
    kernels::apply_ptm_1q(pv, q, kernels::ptm_of_1q_unitary(u));
  }
}

void apply_attachment_ptm(PauliVec& pv, const Attachment& a) {
  if (a.channel) {
    if (a.channel->n_qubits() == 1)
      kernels::apply_ptm_1q(pv, a.support[0],
                            Eigen::Matrix4d(a.channel->matrix()));
    else
      kernels::apply_ptm_local(pv, a.support, a.channel->matrix());
    return;
  }
  // hand-built attachment without a prepared PTM: convert on the fly
  kernels::apply_ptm_local(pv, a.support,
                           ChannelPTM::from_unitary(*a.unitary).matrix());
}

namespace {

PauliVec run_pauli_vector(const NoisyCircuit& nc, PauliVec pv) {
  const Circuit& c = nc.circuit;
  for (size_t k = 0; k <= c.hard.size(); ++k) {
    apply_side_ptm(pv, nc.easy_noise[k], Attachment::Side::pre);
    apply_easy_cycle_ptm(pv, c, k);
    apply_side_ptm(pv, nc.easy_noise[k], Attachment::Side::post);
    if (k < c.hard.size()) {
      apply_side_ptm(pv, nc.hard_noise[k], Attachment::Side::pre);
      for (const auto& [ctl, tgt] : c.hard[k].cnots)
        kernels::apply_cnot_ptm(pv, ctl, tgt);
      apply_side_ptm(pv, nc.hard_noise[k], Attachment::Side::post);
    }
  }
  return pv;
}

}  // namespace

DenseState simulate(const NoisyCircuit& nc, const DenseState& input) {
  nc.check_consistent();
  if (input.n_qubits != nc.circuit.n_qubits)
    throw DimensionError("simulate: state/circuit qubit mismatch");

  if (!nc.has_channels() && !input.is_density()) {
    DenseState out = DenseState::from_vector(run_statevector(nc, input.vec));
    return out;
  }
  PauliVec pv = input.is_density()
                    ? kernels::pauli_vec_from_density(input.rho)
                    : kernels::pauli_vec_from_statevector(input.vec);
  pv = run_pauli_vector(nc, std::move(pv));
  return DenseState::from_density(kernels::pauli_vec_to_density(pv));
}

DenseState simulate(const Circuit& circuit, const DenseState& input) {
  NoisyCircuit nc;
  nc.circuit = circuit;
  nc.hard_noise.resize(circuit.hard.size());
  nc.easy_noise.resize(circuit.easy.size());
  return simulate(nc, input);
}

size_t pauli_vec_index(const PauliString& word) {
  size_t idx = 0;
  for (int q = 0; q < word.n_qubits(); ++q)
    idx |= static_cast<size_t>(word.rank(q)) << (2 * q);
  return idx;
}

double energy_from_pauli_vec(const PauliVec& pv, const PauliSum& obs) {
  if (obs.n_qubits() != pv.n_qubits)
    throw DimensionError("energy: observable/state qubit mismatch");
  double e = 0;
  for (const auto& [w, c] : obs.terms()) e += c.real() * pv.v[pauli_vec_index(w)];
  return e;
}

double sample_expectation(const DenseState& state, const PauliSum& obs,
                          uint64_t shots_per_term, Rng& rng) {
  if (!obs.is_hermitian())
    throw ContractError("sample_expectation: observable is not Hermitian");
  if (shots_per_term == 0)
    throw ContractError("sample_expectation: shots_per_term must be positive");
  double total = 0;
  for (const auto& [w, c] : obs.terms()) {
    if (w.is_identity()) {
      total += c.real();
      continue;
    }
    const cplx raw = expectation_term(state, w);
    if (std::abs(raw.imag()) > 1e-9)
      throw IntegrityError("sample_expectation: imaginary residue");
    double mean = raw.real();
    if (mean > 1.0 + 1e-9 || mean < -1.0 - 1e-9)
      throw IntegrityError("sample_expectation: <P> outside [-1, 1]");
    mean = std::clamp(mean, -1.0, 1.0);
    const double p_plus = 0.5 * (1.0 + mean);
    uint64_t plus = 0;
    for (uint64_t s = 0; s < shots_per_term; ++s)
      if (rng.uniform() < p_plus) ++plus;
    const double empirical =
        2.0 * static_cast<double>(plus) / static_cast<double>(shots_per_term) -
        1.0;
    total += c.real() * empirical;
  }
  return total;
}

}  // namespace twirlzne
