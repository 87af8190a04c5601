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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twirlzne/ptm.hpp"

namespace twirlzne {

// The coherent models dress every CNOT clock-cycle; single-qubit gates are
// perfect unless a single-qubit model is present. Strengths follow the
// conventions: over-rotation CNOT -> CNOT CNOT^eps; XI / IZ rotations act
// on control / target immediately before the CNOT; crosstalk couples each
// CNOT qubit to its ring neighbours with exp(-i phi/2 Z Z) alongside the
// gate.

struct OverRotation {
  double epsilon = 0;
};
struct XIRotation {
  double phi = 0;
};
struct IZRotation {
  double phi = 0;
};
struct RingCrosstalk {
  double phi = 0;
  int ring_size = 0;  // 0: use the circuit's qubit count
};
struct Relaxation {
  double t1 = 0, t2 = 0, p = 0, t = 0;
};
struct SingleQubitCrosstalk {
  double phi = 0;  // ZZ between ring neighbours during every easy cycle
};

using NoiseModel = std::variant<OverRotation, XIRotation, IZRotation,
                                RingCrosstalk, Relaxation,
                                SingleQubitCrosstalk>;

struct NoiseSpec {
  NoiseModel model;

  bool targets_single_qubit_gates() const {
    return std::holds_alternative<SingleQubitCrosstalk>(model);
  }
  bool is_coherent() const {
    return !std::holds_alternative<Relaxation>(model);
  }
  std::string name() const;
};

/// A full noise configuration: components applied per clock-cycle in listed
/// order. Parsed from JSON such as {"model": "over_rotation",
/// "epsilon": 0.02}; an array composes components (e.g. relaxation plus
/// crosstalk), and "mixed_relaxation_crosstalk" expands into a calibrated
/// two-component mix.
struct NoiseConfig {
  std::vector<NoiseSpec> components;

  bool empty() const { return components.empty(); }
  bool has_incoherent() const;
  bool has_single_qubit_noise() const;

  static NoiseConfig none() { return {}; }
  static NoiseConfig from_json(const std::string& text);
  std::string to_json() const;
};

/// Coherent dressing of one CNOT: a unitary on a sorted support, applied
/// before (pre) or after (post) the ideal gate.
struct CoherentDressing {
  enum class Side { pre, post };
  Side side;
  std::vector<int> support;  // ascending circuit qubits
  Eigen::MatrixXcd unitary;  // 2^|support| square, local qubit j = support[j]
};

/// The unitary noise attachment of `spec` for CNOT(control, target) on a
/// periodic ring of `ring_size` qubits. Throws ModeError for incoherent
/// specs (relaxation goes through relaxation_channel instead).
CoherentDressing noise_unitary(const NoiseSpec& spec, int control, int target,
                               int ring_size);

/// Principal fractional power U^e (principal branch of the logarithm).
Eigen::MatrixXcd unitary_fractional_power(const Eigen::MatrixXcd& u, double e);

Eigen::MatrixXcd cnot_matrix(int control_local, int target_local, int n_qubits);

/// Generalized qubit relaxation: PTM diag(1, e^{-t/T2}, e^{-t/T2},
/// e^{-t/T1}) with population-shift entry (1-2p)(1-e^{-t/T1}) in the Z row.
/// Verified CPTP on construction (requires T2 <= 2 T1, p in [0,1]).
ChannelPTM relaxation_channel(const Relaxation& spec);

/// Composite noise channel of one dressed CNOT cycle relative to the ideal
/// gate, on the union noise support; used for calibration and inspection.
struct CycleNoise {
  std::vector<int> support;
  ChannelPTM ptm;
};
CycleNoise cycle_noise_channel(const NoiseConfig& config, int control,
                               int target, int ring_size);

/// Average gate infidelity of the dressed CNOT under `config`, evaluated on
/// the representative gate context (control, target, ring).
double dressed_cnot_infidelity(const NoiseConfig& config, int control,
                               int target, int ring_size);

/// Scales the strength parameter of every component so that the dressed
/// CNOT infidelity hits `target`; returns the scaled config (bisection on a
/// common multiplier applied to epsilon / phi / t).
NoiseConfig calibrate_to_infidelity(const NoiseConfig& config, double target,
                                    int control, int target_qubit,
                                    int ring_size);

/// Fig. 7b-style mix: ring crosstalk + relaxation on every CNOT, each side
/// calibrated so coherent:incoherent infidelities split total_infidelity as
/// coherent_fraction : 1 - coherent_fraction.
NoiseConfig mixed_relaxation_crosstalk(double coherent_fraction,
                                       double total_infidelity, double t1,
                                       double t2, double p, int control,
                                       int target, int ring_size);

}  // namespace twirlzne
