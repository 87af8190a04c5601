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

#include "twirlzne/rc.hpp"

#include <bit>

namespace twirlzne {

PauliString cnot_conjugate(const PauliString& word, const HardCycle& cycle) {
  uint64_t x = word.x_mask(), z = word.z_mask();
  for (const auto& [c, t] : cycle.cnots) {
    const uint64_t xc = (x >> c) & 1, zt = (z >> t) & 1;
    x ^= xc << t;  // X on control spreads to the target
    z ^= zt << c;  // Z on target spreads to the control
  }
  return PauliString(word.n_qubits(), x, z);
}

namespace {

GateKind pauli_gate(int rank) {
  switch (rank) {
    case 1: return GateKind::X;
    case 2: return GateKind::Y;
    default: return GateKind::Z;
  }
}

void append_word(EasyCycle& cycle, const PauliString& word) {
  for (int q = 0; q < word.n_qubits(); ++q)
    if (const int r = word.rank(q); r != 0)
      cycle.gates[q].push_back(Gate{pauli_gate(r), 0});
}

void prepend_word(EasyCycle& cycle, const PauliString& word) {
  for (int q = 0; q < word.n_qubits(); ++q)
    if (const int r = word.rank(q); r != 0) {
      auto& gates = cycle.gates[q];
      gates.insert(gates.begin(), Gate{pauli_gate(r), 0});
    }
}

}  // namespace

Circuit dress_circuit_with(const Circuit& circuit,
                           std::span<const PauliString> words) {
  circuit.check_valid();
  if (words.size() != circuit.hard.size())
    throw DimensionError("one twirl word per hard cycle required");
  Circuit out = circuit;
  for (size_t k = 0; k < out.hard.size(); ++k) {
    if (words[k].n_qubits() != circuit.n_qubits)
      throw DimensionError("twirl word width mismatch");
    const PauliString correction = cnot_conjugate(words[k], out.hard[k]);
    append_word(out.easy[k], words[k]);         // runs right before the cycle
    prepend_word(out.easy[k + 1], correction);  // runs right after it
  }
  return out;
}

Circuit dress_circuit(const Circuit& circuit, Rng& rng) {
  circuit.check_valid();
  const int n = circuit.n_qubits;
  std::vector<PauliString> words;
  words.reserve(circuit.hard.size());
  for (size_t k = 0; k < circuit.hard.size(); ++k) {
    PauliString t(n);
    for (int q = 0; q < n; ++q) {
      static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
      t.set_letter(q, kLetters[rng.bounded(4)]);
    }
    words.push_back(t);
  }
  return dress_circuit_with(circuit, words);
}

ChannelPTM twirl_ptm(const ChannelPTM& noise) {
  const int n = noise.n_qubits();
  const auto dim = static_cast<size_t>(noise.dim());
  // sign conjugation: (S_P R S_P)[a][b] = s_P(a) s_P(b) R[a][b]
  constexpr uint64_t kXBit[4] = {0, 1, 1, 0};
  constexpr uint64_t kZBit[4] = {0, 0, 1, 1};
  auto masks = [&](size_t idx, uint64_t& x, uint64_t& z) {
    x = z = 0;
    for (int q = 0; q < n; ++q) {
      const size_t r = (idx >> (2 * q)) & 3;
      x |= kXBit[r] << q;
      z |= kZBit[r] << q;
    }
  };
  std::vector<uint64_t> xs(dim), zs(dim);
  for (size_t a = 0; a < dim; ++a) masks(a, xs[a], zs[a]);

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(noise.dim(), noise.dim());
  Eigen::VectorXd sign(noise.dim());
  for (size_t p = 0; p < dim; ++p) {
    for (size_t a = 0; a < dim; ++a) {
      const int anti = std::popcount(xs[p] & zs[a]) +
                       std::popcount(zs[p] & xs[a]);
      sign(static_cast<Eigen::Index>(a)) = (anti & 1) ? -1.0 : 1.0;
    }
    acc.noalias() +=
        sign.asDiagonal() * noise.matrix() * sign.asDiagonal();
  }
  acc /= static_cast<double>(dim);
  return ChannelPTM(n, std::move(acc));
}

Circuit magnify(const Circuit& circuit, int r) {
  if (r < 1 || r % 2 == 0)
    throw ContractError("magnification factor must be odd and >= 1");
  circuit.check_valid();
  if (r == 1) return circuit;
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.easy.push_back(circuit.easy[0]);
  for (size_t k = 0; k < circuit.hard.size(); ++k) {
    for (int rep = 0; rep < r; ++rep) {
      out.hard.push_back(circuit.hard[k]);
      if (rep + 1 < r) out.easy.emplace_back();
    }
    out.easy.push_back(circuit.easy[k + 1]);
  }
  out.check_valid();
  return out;
}

}  // namespace twirlzne
