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

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twirlzne/errors.hpp"

namespace twirlzne {

// Circuits alternate easy cycles (single-qubit gates, assumed perfect) and
// hard cycles (CNOT layers, the noisy clock-cycles). The alternation is
// structural: easy[k] precedes hard[k] in time and easy.size() equals
// hard.size() + 1.

enum class GateKind { X, Y, Z, H, RX, RY, RZ };

bool gate_has_angle(GateKind k);
std::string gate_name(GateKind k);
GateKind gate_from_name(const std::string& name);

struct Gate {
  GateKind kind;
  double angle = 0;  // radians; meaningful for RX/RY/RZ only
};

/// Template gate whose angle is affine in one parameter slot:
/// angle = constant + scale * theta[slot] (slot < 0 means constant).
struct GateSpec {
  GateKind kind;
  double constant = 0;
  int slot = -1;
  double scale = 0;

  Gate bind(std::span<const double> theta) const;
};

Eigen::Matrix2cd gate_matrix(const Gate& g);

struct HardCycle {
  std::vector<std::pair<int, int>> cnots;  // disjoint (control, target)
};

template <typename G>
struct BasicEasyCycle {
  std::map<int, std::vector<G>> gates;  // qubit -> gates applied in order

  void push(int qubit, G gate) { gates[qubit].push_back(gate); }
  bool empty() const { return gates.empty(); }
};

using EasyCycle = BasicEasyCycle<Gate>;
using EasyCycleSpec = BasicEasyCycle<GateSpec>;

struct Circuit {
  int n_qubits = 0;
  std::vector<EasyCycle> easy;
  std::vector<HardCycle> hard;

  size_t hard_cycle_count() const { return hard.size(); }
  void check_valid() const;

  /// Per-qubit 2x2 unitary of easy cycle k (product of its gate list).
  Eigen::Matrix2cd easy_unitary(size_t k, int qubit) const;

  std::string to_json() const;
  static Circuit from_json(const std::string& text);
};

struct CircuitTemplate {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<EasyCycleSpec> easy;
  std::vector<HardCycle> hard;

  void check_valid() const;

  /// Appends another template in time order, merging at the seam easy cycle.
  void append(const CircuitTemplate& tail);

  /// Concrete circuit with all parameter slots bound; hard-cycle structure
  /// is independent of theta.
  Circuit bind(std::span<const double> theta) const;
};

}  // namespace twirlzne
