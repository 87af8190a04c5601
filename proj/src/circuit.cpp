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

#include "twirlzne/circuit.hpp"

#include <cmath>
#include <complex>
#include <set>

#include "json.hpp"

namespace twirlzne {

using nlohmann::json;
using cplx = std::complex<double>;

bool gate_has_angle(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
  }
  throw Error("unreachable");
}

GateKind gate_from_name(const std::string& name) {
  if (name == "x") return GateKind::X;
  if (name == "y") return GateKind::Y;
  if (name == "z") return GateKind::Z;
  if (name == "h") return GateKind::H;
  if (name == "rx") return GateKind::RX;
  if (name == "ry") return GateKind::RY;
  if (name == "rz") return GateKind::RZ;
  throw ParseError("unknown gate '" + name + "'");
}

Gate GateSpec::bind(std::span<const double> theta) const {
  double angle = constant;
  if (slot >= 0) angle += scale * theta[static_cast<size_t>(slot)];
  return Gate{kind, angle};
}

Eigen::Matrix2cd gate_matrix(const Gate& g) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  switch (g.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, -i, i, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      break;
    }
    case GateKind::RX: m << c, -i * s, -i * s, c; break;
    case GateKind::RY: m << c, -s, s, c; break;
    case GateKind::RZ:
      m << std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2));
      break;
  }
  return m;
}

namespace {

template <typename CircuitLike>
void check_structure(const CircuitLike& c) {
  if (c.n_qubits <= 0) throw ContractError("circuit has no qubits");
  if (c.easy.size() != c.hard.size() + 1)
    throw ContractError("easy/hard cycles must alternate strictly");
  for (const auto& cyc : c.easy)
    for (const auto& [q, gates] : cyc.gates)
      if (q < 0 || q >= c.n_qubits)
        throw ContractError("easy-cycle qubit out of range");
  for (const auto& cyc : c.hard) {
    std::set<int> used;
    for (const auto& [ctl, tgt] : cyc.cnots) {
      if (ctl < 0 || ctl >= c.n_qubits || tgt < 0 || tgt >= c.n_qubits ||
          ctl == tgt)
        throw ContractError("invalid CNOT pair");
      if (!used.insert(ctl).second || !used.insert(tgt).second)
        throw ContractError("hard cycle CNOTs must act on disjoint qubits");
    }
  }
}

}  // namespace

void Circuit::check_valid() const { check_structure(*this); }
void CircuitTemplate::check_valid() const { check_structure(*this); }

Eigen::Matrix2cd Circuit::easy_unitary(size_t k, int qubit) const {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  const auto it = easy[k].gates.find(qubit);
  if (it == easy[k].gates.end()) return u;
  for (const Gate& g : it->second) u = gate_matrix(g) * u;  // first gate first
  return u;
}

void CircuitTemplate::append(const CircuitTemplate& tail) {
  if (tail.n_qubits != n_qubits)
    throw DimensionError("template append: qubit count mismatch");
  if (easy.empty()) {
    auto params = std::max(n_params, tail.n_params);
    *this = tail;
    n_params = params;
    return;
  }
  if (tail.easy.empty()) return;
  // merge seam: our trailing easy cycle runs first, then the tail's head
  EasyCycleSpec& seam = easy.back();
  for (const auto& [q, gates] : tail.easy.front().gates)
    for (const auto& g : gates) seam.push(q, g);
  for (size_t k = 0; k < tail.hard.size(); ++k) {
    hard.push_back(tail.hard[k]);
    easy.push_back(tail.easy[k + 1]);
  }
  n_params = std::max(n_params, tail.n_params);
}

Circuit CircuitTemplate::bind(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != n_params)
    throw DimensionError("bind: expected " + std::to_string(n_params) +
                         " parameters, got " + std::to_string(theta.size()));
  Circuit c;
  c.n_qubits = n_qubits;
  c.hard = hard;
  c.easy.reserve(easy.size());
  for (const auto& spec : easy) {
    EasyCycle cyc;
    for (const auto& [q, gates] : spec.gates)
      for (const auto& g : gates) cyc.push(q, g.bind(theta));
    c.easy.push_back(std::move(cyc));
  }
  c.check_valid();
  return c;
}

std::string Circuit::to_json() const {
  check_valid();
  json cycles = json::array();
  for (size_t k = 0; k <= hard.size(); ++k) {
    json e = json::object();
    for (const auto& [q, gates] : easy[k].gates) {
      json gl = json::array();
      for (const auto& g : gates) {
        json jg;
        jg["g"] = gate_name(g.kind);
        if (gate_has_angle(g.kind)) jg["angle"] = g.angle;
        gl.push_back(jg);
      }
      e[std::to_string(q)] = gl;
    }
    cycles.push_back(json{{"easy", e}});
    if (k < hard.size()) {
      json pairs = json::array();
      for (const auto& [ctl, tgt] : hard[k].cnots)
        pairs.push_back(json::array({ctl, tgt}));
      cycles.push_back(json{{"hard", pairs}});
    }
  }
  json root;
  root["n_qubits"] = n_qubits;
  root["cycles"] = cycles;
  return root.dump();
}

Circuit Circuit::from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit json: ") + e.what());
  }
  Circuit c;
  try {
    c.n_qubits = root.at("n_qubits").get<int>();
    bool expect_easy = true;
    for (const auto& cyc : root.at("cycles")) {
      if (cyc.contains("easy")) {
        if (!expect_easy) throw ParseError("two adjacent easy cycles");
        EasyCycle e;
        for (const auto& [qs, gl] : cyc.at("easy").items()) {
          const int q = std::stoi(qs);
          for (const auto& jg : gl) {
            Gate g{gate_from_name(jg.at("g").get<std::string>()), 0};
            if (gate_has_angle(g.kind)) g.angle = jg.at("angle").get<double>();
            e.push(q, g);
          }
        }
        c.easy.push_back(std::move(e));
        expect_easy = false;
      } else if (cyc.contains("hard")) {
        if (expect_easy) throw ParseError("hard cycle without preceding easy");
        HardCycle h;
        for (const auto& pr : cyc.at("hard"))
          h.cnots.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
        c.hard.push_back(std::move(h));
        expect_easy = true;
      } else {
        throw ParseError("cycle must be 'easy' or 'hard'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit json: ") + e.what());
  }
  c.check_valid();
  return c;
}

}  // namespace twirlzne
