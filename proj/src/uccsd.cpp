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

#include "twirlzne/uccsd.hpp"

#include <algorithm>
#include <cmath>

namespace twirlzne {

namespace {

int spin(int orbital) { return orbital % 2; }

// T_slot - T_slot^dagger for one excitation at unit amplitude.
FermionOperator excitation_generator(const ClusterSpec& cluster, int slot) {
  FermionOperator f(cluster.n_spin_orbitals);
  const int ns = static_cast<int>(cluster.singles.size());
  if (slot < ns) {
    const int i = cluster.singles[static_cast<size_t>(slot)][0];
    const int k = cluster.singles[static_cast<size_t>(slot)][1];
    f.add({{i, true}, {k, false}}, 1.0);
    f.add({{k, true}, {i, false}}, -1.0);
  } else {
    const auto& d = cluster.doubles[static_cast<size_t>(slot - ns)];
    const int i = d[0], j = d[1], k = d[2], l = d[3];
    f.add({{i, true}, {j, true}, {k, false}, {l, false}}, 1.0);
    f.add({{l, true}, {k, true}, {j, false}, {i, false}}, -1.0);
  }
  return f;
}

}  // namespace

ClusterSpec build_cluster(const MoleculeSpec& spec) {
  ClusterSpec c;
  c.n_spin_orbitals = spec.n_spin_orbitals;
  for (int i = 0; i < spec.n_spin_orbitals; ++i)
    (i < spec.n_electrons ? c.occupied : c.virtuals).push_back(i);

  for (int i : c.virtuals)
    for (int k : c.occupied)
      if (spin(i) == spin(k)) c.singles.push_back({i, k});
  std::sort(c.singles.begin(), c.singles.end());

  for (size_t a = 0; a < c.virtuals.size(); ++a)
    for (size_t b = a + 1; b < c.virtuals.size(); ++b)
      for (size_t x = 0; x < c.occupied.size(); ++x)
        for (size_t y = x + 1; y < c.occupied.size(); ++y) {
          const int i = c.virtuals[a], j = c.virtuals[b];
          const int k = c.occupied[x], l = c.occupied[y];
          // S_z conservation: spin multisets must match
          if (spin(i) + spin(j) == spin(k) + spin(l))
            c.doubles.push_back({i, j, k, l});
        }
  std::sort(c.doubles.begin(), c.doubles.end());
  return c;
}

PauliSum antihermitian_generator(const ClusterSpec& cluster,
                                 std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != cluster.n_params())
    throw DimensionError("generator: expected " +
                         std::to_string(cluster.n_params()) + " parameters");
  PauliSum total(cluster.n_spin_orbitals);
  for (int s = 0; s < cluster.n_params(); ++s) {
    if (theta[static_cast<size_t>(s)] == 0.0) continue;
    PauliSum g = jordan_wigner(excitation_generator(cluster, s));
    g *= theta[static_cast<size_t>(s)];
    total += g;
  }
  total.simplify();
  for (const auto& [w, c] : total.terms())
    if (std::abs(c.real()) > 1e-12)
      throw IntegrityError("generator has a non-imaginary coefficient");
  return total;
}

CircuitTemplate compile_exp_pauli(const PauliString& word, int n_qubits,
                                  int slot, double scale, double constant) {
  if (word.is_identity())
    throw ContractError("compile_exp_pauli: identity word");
  if (word.n_qubits() > n_qubits)
    throw DimensionError("word does not fit the register");

  const std::vector<int> acted = word.support();
  CircuitTemplate t;
  t.n_qubits = n_qubits;
  t.n_params = slot >= 0 ? slot + 1 : 0;

  EasyCycleSpec enter, exit;
  for (int q : acted) {
    switch (word.letter(q)) {
      case 'X':
        enter.push(q, {GateKind::H, 0, -1, 0});
        exit.push(q, {GateKind::H, 0, -1, 0});
        break;
      case 'Y':
        enter.push(q, {GateKind::RX, M_PI / 2, -1, 0});
        exit.push(q, {GateKind::RX, -M_PI / 2, -1, 0});
        break;
      default: break;  // Z needs no basis change
    }
  }

  t.easy.push_back(enter);
  for (size_t i = 0; i + 1 < acted.size(); ++i) {
    t.hard.push_back(HardCycle{{{acted[i], acted[i + 1]}}});
    t.easy.emplace_back();
  }
  // Rz(2*angle) on the last acted qubit carries the parameter
  t.easy.back().push(acted.back(),
                     {GateKind::RZ, 2 * constant, slot, 2 * scale});
  for (size_t i = acted.size() - 1; i-- > 0;) {
    t.hard.push_back(HardCycle{{{acted[i], acted[i + 1]}}});
    t.easy.emplace_back();
  }
  // fold the uncompute basis change into the trailing easy cycle
  for (const auto& [q, gates] : exit.gates)
    for (const auto& g : gates) t.easy.back().push(q, g);
  t.check_valid();
  return t;
}

CircuitTemplate trotterize(const ClusterSpec& cluster) {
  CircuitTemplate t;
  t.n_qubits = cluster.n_spin_orbitals;
  t.easy.emplace_back();

  // One first-order Trotter step: exp(sum_s theta_s G_s) ~ prod_w exp(c_w w),
  // singles block then doubles block, word-lexicographic within a block.
  auto emit_block = [&](int slot_begin, int slot_end) {
    std::vector<std::pair<PauliString, std::pair<int, double>>> words;
    for (int s = slot_begin; s < slot_end; ++s) {
      const PauliSum g = jordan_wigner(excitation_generator(cluster, s));
      // c = i*g_w, so exp(c theta w) = exp(-i * (-g_w * theta) * w)
      for (const auto& [w, c] : g.terms())
        words.push_back({w, {s, -c.imag()}});
    }
    std::sort(words.begin(), words.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [w, sg] : words)
      t.append(compile_exp_pauli(w, t.n_qubits, sg.first, sg.second));
  };

  emit_block(0, static_cast<int>(cluster.singles.size()));
  emit_block(static_cast<int>(cluster.singles.size()), cluster.n_params());
  t.n_params = cluster.n_params();
  t.check_valid();
  return t;
}

}  // namespace twirlzne
