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

#include <memory>

#include "twirlzne/circuit.hpp"
#include "twirlzne/dense.hpp"
#include "twirlzne/kernels.hpp"
#include "twirlzne/noise.hpp"
#include "twirlzne/rng.hpp"

namespace twirlzne {

/// One noise realization attached to a cycle: a unitary (statevector path)
/// or a channel PTM (density path) on a sorted support, applied before or
/// after the cycle's gates. Realizations are shared between the many copies
/// an evaluation loop makes, with the unitary's PTM precomputed once.
struct Attachment {
  using Side = CoherentDressing::Side;
  Side side = Side::post;
  std::vector<int> support;
  std::shared_ptr<const Eigen::MatrixXcd> unitary;  // null for channels
  std::shared_ptr<const ChannelPTM> channel;  // PTM realization (always set
                                              // for prepared attachments)

  static Attachment coherent(Side side, std::vector<int> support,
                             Eigen::MatrixXcd u);
  static Attachment incoherent(Side side, std::vector<int> support,
                               ChannelPTM ptm);
};

struct NoisyCircuit {
  Circuit circuit;
  std::vector<std::vector<Attachment>> hard_noise;  // per hard cycle
  std::vector<std::vector<Attachment>> easy_noise;  // per easy cycle

  bool has_channels() const;
  void check_consistent() const;
};

/// Builds per-cycle attachments for every component of `config`. The ring
/// defaults to the circuit's qubit count (periodic 1D chain).
NoisyCircuit attach_noise(const Circuit& circuit, const NoiseConfig& config,
                          int ring_size = 0);

/// Applies cycles in order with their attachments. Pure-unitary circuits on
/// statevector inputs stay in statevector form; anything with a channel (or
/// a density input) runs in the Pauli-vector density representation.
DenseState simulate(const NoisyCircuit& nc, const DenseState& input);
DenseState simulate(const Circuit& circuit, const DenseState& input);

/// <obs> by per-term Bernoulli sampling: each non-identity term draws
/// shots_per_term outcomes with P(+1) = (1 + <P_j>)/2; identity terms enter
/// exactly. Deterministic under a fixed rng state.
double sample_expectation(const DenseState& state, const PauliSum& obs,
                          uint64_t shots_per_term, Rng& rng);

// ---- internal fast paths (shared with the mitigation pipeline) ------------

Eigen::VectorXcd run_statevector(const NoisyCircuit& nc, Eigen::VectorXcd psi);

/// Index of a Pauli word in the 4^n coefficient vector.
size_t pauli_vec_index(const PauliString& word);

double energy_from_pauli_vec(const kernels::PauliVec& pv, const PauliSum& obs);

/// Applies easy cycle k (gates then any pre-side noise first) to a Pauli
/// vector; exposed for the mitigation pipeline's cycle-by-cycle control.
void apply_easy_cycle_ptm(kernels::PauliVec& pv, const Circuit& c, size_t k);
void apply_attachment_ptm(kernels::PauliVec& pv, const Attachment& a);

}  // namespace twirlzne
