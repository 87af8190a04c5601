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

#include "twirlzne/circuit.hpp"
#include "twirlzne/pauli.hpp"
#include "twirlzne/ptm.hpp"
#include "twirlzne/rng.hpp"

namespace twirlzne {

/// The word CNOT-conjugation maps `word` to (D word D^dagger up to sign);
/// CNOTs are Clifford so the image is again a Pauli word.
PauliString cnot_conjugate(const PauliString& word, const HardCycle& cycle);

/// Randomized-compiling dressing: every hard cycle D_k is sandwiched by a
/// uniformly random Pauli word T_k (drawn over all circuit qubits) and its
/// correction T'_k = D_k T_k D_k^dagger, both folded into the adjacent easy
/// cycles. The noiseless output state is unchanged up to global phase.
Circuit dress_circuit(const Circuit& circuit, Rng& rng);

/// Deterministic dressing with the given per-hard-cycle twirl words
/// (exhaustive-enumeration checks use this).
Circuit dress_circuit_with(const Circuit& circuit,
                           std::span<const PauliString> words);

/// Pauli twirl: R' = 4^-n sum_P S_P R S_P over all Pauli conjugations of the
/// support; the result is diagonal (a stochastic Pauli channel) and CPTP is
/// preserved.
ChannelPTM twirl_ptm(const ChannelPTM& noise);

/// Identity-insertion noise magnification: every CNOT hard cycle becomes r
/// consecutive copies (each independently dressed and noise-attached later);
/// noiseless semantics unchanged. r must be odd.
Circuit magnify(const Circuit& circuit, int r);

}  // namespace twirlzne
