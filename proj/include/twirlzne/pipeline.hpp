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

#include <map>
#include <mutex>
#include <optional>

#include "twirlzne/engine.hpp"
#include "twirlzne/rc.hpp"
#include "twirlzne/uccsd.hpp"
#include "twirlzne/zne.hpp"

namespace twirlzne {

struct RCConfig {
  enum class Mode { off, finite, infinite };

  Mode mode = Mode::off;
  int n_rand = 20;          // dressings averaged in finite mode
  uint64_t stream = 1;      // rng stream id for dressing draws

  static RCConfig off() { return {Mode::off, 0, 0}; }
  static RCConfig finite(int n_rand, uint64_t stream = 1) {
    return {Mode::finite, n_rand, stream};
  }
  static RCConfig infinite() { return {Mode::infinite, 0, 0}; }
  void validate() const;
  std::string name() const;
};

struct Measurement {
  enum class Mode { exact, shots };

  Mode mode = Mode::exact;
  uint64_t total_shots = 100000;  // budget per evaluated energy point
  uint64_t stream = 2;            // rng stream id for shot draws

  static Measurement exact() { return {}; }
  static Measurement shots(uint64_t budget, uint64_t stream = 2) {
    return {Mode::shots, budget, stream};
  }
};

/// One of the four side-by-side strategies: RC off/finite/infinite crossed
/// with optional ZNE. No ZNE means a single evaluation at r = 1.
struct MitigationConfig {
  RCConfig rc;
  std::optional<ZNEConfig> zne;

  std::string name() const;  // "none", "rc", "zne", "rc+zne"
  static MitigationConfig parse_name(const std::string& name);
};

/// Precomputed twirled noise per hard-cycle context. Infinite-randomization
/// runs replace each cycle's noise (including any trailing easy-cycle noise)
/// by its Pauli twirl, referred to the pre-gate side:
/// N_pre = D^-1 post D pre, twirled to a diagonal stochastic channel.
/// Warm the cache single-threaded; lookups afterwards are read-only.
class TwirlCache {
 public:
  struct Entry {
    std::vector<int> support;
    Eigen::VectorXd diag;
  };

  const Entry& lookup(const Circuit& circuit, size_t hard_index,
                      const NoiseConfig& noise, int ring);
  void warm(const Circuit& circuit, const NoiseConfig& noise, int ring);
  size_t size() const { return entries_.size(); }

 private:
  static std::string key_of(const Circuit& circuit, size_t hard_index,
                            const NoiseConfig& noise, int ring);
  std::map<std::string, Entry> entries_;
  std::mutex mu_;
};

struct EnergyDiagnostics {
  std::vector<int> factors;
  std::vector<double> factor_energies;
  std::vector<std::vector<double>> dressing_energies;  // finite mode, per r
  std::vector<double> fit_coefficients;
  double zero_noise_value = 0;
  uint64_t seed = 0;
  std::string rc_mode;
  bool sampled = false;

  std::string to_json() const;
};

struct EnergyResult {
  double energy = 0;
  EnergyDiagnostics diagnostics;
};

/// The full mitigated estimate: magnify per factor, dress / twirl per the RC
/// mode, measure exactly or by sampling, extrapolate across factors.
/// Deterministic for a fixed seed. `cache` may be null (built on the fly).
EnergyResult mitigated_energy(const CircuitTemplate& tmpl,
                              std::span<const double> theta,
                              const PauliSum& hamiltonian,
                              const NoiseConfig& noise,
                              const MitigationConfig& mitigation,
                              const Measurement& measurement,
                              const DenseState& input, uint64_t seed,
                              TwirlCache* cache = nullptr, int ring = 0);

/// Same pipeline for an already-bound circuit (landscape / linearity runs).
EnergyResult mitigated_energy_circuit(const Circuit& circuit,
                                      const PauliSum& hamiltonian,
                                      const NoiseConfig& noise,
                                      const MitigationConfig& mitigation,
                                      const Measurement& measurement,
                                      const DenseState& input, uint64_t seed,
                                      TwirlCache* cache = nullptr,
                                      int ring = 0);

/// Per-term expectations of `obs` in the final state at one magnification
/// factor (linearity experiments); RC finite mode averages dressings.
std::map<PauliString, double> per_term_expectations(
    const Circuit& circuit, const PauliSum& obs, const NoiseConfig& noise,
    const RCConfig& rc, const DenseState& input, uint64_t seed,
    TwirlCache* cache = nullptr, int ring = 0);

}  // namespace twirlzne
