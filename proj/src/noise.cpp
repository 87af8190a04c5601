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

#include "twirlzne/noise.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "twirlzne/kernels.hpp"

namespace twirlzne {

using nlohmann::json;

namespace {

Eigen::Matrix2cd rx_matrix(double phi) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  m << std::cos(phi / 2), -i * std::sin(phi / 2), -i * std::sin(phi / 2),
      std::cos(phi / 2);
  return m;
}

Eigen::Matrix2cd rz_matrix(double phi) {
  Eigen::Matrix2cd m;
  const cplx i(0, 1);
  m << std::exp(-i * (phi / 2)), 0, 0, std::exp(i * (phi / 2));
  return m;
}

// exp(-i phi/2 Z Z) on two qubits
Eigen::Matrix4cd zz_rotation(double phi) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const cplx i(0, 1);
  const cplx minus = std::exp(-i * (phi / 2)), plus = std::exp(i * (phi / 2));
  m(0, 0) = minus;   // |00>: ZZ = +1
  m(1, 1) = plus;    // |01>
  m(2, 2) = plus;    // |10>
  m(3, 3) = minus;   // |11>
  return m;
}

// ring neighbours of q not in {c, t}
std::vector<std::pair<int, int>> crosstalk_pairs(int c, int t, int ring) {
  std::set<std::pair<int, int>> pairs;
  for (int q : {c, t}) {
    for (int nb : {(q + 1) % ring, (q + ring - 1) % ring}) {
      if (nb == c || nb == t) continue;
      pairs.insert({std::min(q, nb), std::max(q, nb)});
    }
  }
  return {pairs.begin(), pairs.end()};
}

}  // namespace

std::string NoiseSpec::name() const {
  struct Visitor {
    std::string operator()(const OverRotation&) { return "over_rotation"; }
    std::string operator()(const XIRotation&) { return "xi_rotation"; }
    std::string operator()(const IZRotation&) { return "iz_rotation"; }
    std::string operator()(const RingCrosstalk&) { return "ring_crosstalk"; }
    std::string operator()(const Relaxation&) { return "relaxation"; }
    std::string operator()(const SingleQubitCrosstalk&) {
      return "single_qubit_crosstalk";
    }
  };
  return std::visit(Visitor{}, model);
}

bool NoiseConfig::has_incoherent() const {
  return std::any_of(components.begin(), components.end(),
                     [](const NoiseSpec& s) { return !s.is_coherent(); });
}

bool NoiseConfig::has_single_qubit_noise() const {
  return std::any_of(components.begin(), components.end(),
                     [](const NoiseSpec& s) {
                       return s.targets_single_qubit_gates();
                     });
}

Eigen::MatrixXcd cnot_matrix(int control_local, int target_local,
                             int n_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    auto j = static_cast<uint64_t>(i);
    if ((j >> control_local) & 1) j ^= 1ULL << target_local;
    m(static_cast<Eigen::Index>(j), i) = 1.0;
  }
  return m;
}

Eigen::MatrixXcd unitary_fractional_power(const Eigen::MatrixXcd& u,
                                          double e) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u);
  if (solver.info() != Eigen::Success)
    throw IntegrityError("eigendecomposition failed in fractional power");
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  Eigen::VectorXcd powered(vals.size());
  const cplx i(0, 1);
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    powered(k) = std::exp(i * (e * std::arg(vals(k))));
  return vecs * powered.asDiagonal() * vecs.inverse();
}

CoherentDressing noise_unitary(const NoiseSpec& spec, int control, int target,
                               int ring_size) {
  if (!spec.is_coherent())
    throw ModeError("noise_unitary: spec is not a coherent model");
  using Side = CoherentDressing::Side;

  if (const auto* m = std::get_if<OverRotation>(&spec.model)) {
    // U -> U U^eps; same eigenbasis, attached after the gate
    const int lc = control < target ? 0 : 1;
    const Eigen::MatrixXcd cnot = cnot_matrix(lc, 1 - lc, 2);
    return {Side::post,
            {std::min(control, target), std::max(control, target)},
            unitary_fractional_power(cnot, m->epsilon)};
  }
  if (const auto* m = std::get_if<XIRotation>(&spec.model)) {
    return {Side::pre, {control}, rx_matrix(m->phi)};
  }
  if (const auto* m = std::get_if<IZRotation>(&spec.model)) {
    return {Side::pre, {target}, rz_matrix(m->phi)};
  }
  if (const auto* m = std::get_if<RingCrosstalk>(&spec.model)) {
    const int ring = m->ring_size > 0 ? m->ring_size : ring_size;
    if (ring < 2) throw ContractError("ring crosstalk needs a ring size");
    const auto pairs = crosstalk_pairs(control, target, ring);
    std::set<int> qubits{control, target};
    for (const auto& [a, b] : pairs) {
      qubits.insert(a);
      qubits.insert(b);
    }
    std::vector<int> support(qubits.begin(), qubits.end());
    // merged unitary; the ZZ factors are diagonal and mutually commuting
    const Eigen::Index dim = Eigen::Index(1) << support.size();
    Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(dim);
    const cplx i(0, 1);
    for (const auto& [a, b] : pairs) {
      const int la = static_cast<int>(
          std::lower_bound(support.begin(), support.end(), a) -
          support.begin());
      const int lb = static_cast<int>(
          std::lower_bound(support.begin(), support.end(), b) -
          support.begin());
      for (Eigen::Index s = 0; s < dim; ++s) {
        const int za = ((s >> la) & 1) ? -1 : 1;
        const int zb = ((s >> lb) & 1) ? -1 : 1;
        diag(s) *= std::exp(-i * (m->phi / 2) * double(za * zb));
      }
    }
    Eigen::MatrixXcd u = diag.asDiagonal();
    return {Side::post, std::move(support), std::move(u)};
  }
  if (const auto* m = std::get_if<SingleQubitCrosstalk>(&spec.model)) {
    // whole-ring ZZ applied with each easy cycle; support is every qubit on
    // the ring (callers pass ring_size = circuit width)
    if (ring_size < 2)
      throw ContractError("single-qubit crosstalk needs a ring size");
    std::vector<int> support(static_cast<size_t>(ring_size));
    for (int q = 0; q < ring_size; ++q) support[static_cast<size_t>(q)] = q;
    const Eigen::Index dim = Eigen::Index(1) << ring_size;
    Eigen::VectorXcd diag = Eigen::VectorXcd::Ones(dim);
    const cplx i(0, 1);
    const int n_edges = ring_size == 2 ? 1 : ring_size;
    for (int q = 0; q < n_edges; ++q) {
      const int nb = (q + 1) % ring_size;
      for (Eigen::Index s = 0; s < dim; ++s) {
        const int za = ((s >> q) & 1) ? -1 : 1;
        const int zb = ((s >> nb) & 1) ? -1 : 1;
        diag(s) *= std::exp(-i * (m->phi / 2) * double(za * zb));
      }
    }
    Eigen::MatrixXcd u = diag.asDiagonal();
    return {Side::pre, std::move(support), std::move(u)};
  }
  throw ModeError("noise_unitary: unsupported model");
}

ChannelPTM relaxation_channel(const Relaxation& spec) {
  if (spec.t1 <= 0 || spec.t2 <= 0 || spec.t < 0)
    throw ContractError("relaxation: T1, T2, t must be positive");
  if (spec.t2 > 2 * spec.t1 + 1e-15)
    throw ContractError("relaxation: T2 <= 2 T1 required");
  if (spec.p < 0 || spec.p > 1)
    throw ContractError("relaxation: p must lie in [0, 1]");
  const double e1 = std::exp(-spec.t / spec.t1);
  const double e2 = std::exp(-spec.t / spec.t2);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(4, 4);
  r(0, 0) = 1;
  r(1, 1) = e2;
  r(2, 2) = e2;
  r(3, 3) = e1;
  r(3, 0) = (1 - 2 * spec.p) * (1 - e1);
  ChannelPTM ptm(1, std::move(r));
  try {
    ptm.check_cptp(1e-10);
  } catch (const IntegrityError& e) {
    throw ContractError(std::string("relaxation parameters are not CPTP: ") +
                        e.what());
  }
  return ptm;
}

CycleNoise cycle_noise_channel(const NoiseConfig& config, int control,
                               int target, int ring_size) {
  // union support over all attachments plus the gate itself
  std::set<int> qubits{control, target};
  struct Part {
    CoherentDressing::Side side;
    std::vector<int> support;
    std::optional<Eigen::MatrixXcd> unitary;
    std::optional<ChannelPTM> channel;
  };
  std::vector<Part> parts;
  for (const auto& spec : config.components) {
    if (const auto* m = std::get_if<Relaxation>(&spec.model)) {
      for (int q : {control, target})
        parts.push_back({CoherentDressing::Side::post, {q}, std::nullopt,
                         relaxation_channel(*m)});
      continue;
    }
    auto d = noise_unitary(spec, control, target, ring_size);
    parts.push_back({d.side, d.support, std::move(d.unitary), std::nullopt});
  }
  for (const auto& p : parts) qubits.insert(p.support.begin(), p.support.end());
  std::vector<int> support(qubits.begin(), qubits.end());
  const int k = static_cast<int>(support.size());

  auto local_support = [&](const std::vector<int>& qs) {
    std::vector<int> local;
    for (int q : qs)
      local.push_back(static_cast<int>(
          std::lower_bound(support.begin(), support.end(), q) -
          support.begin()));
    return local;
  };

  // embed the ideal CNOT and every attachment on the union support
  const Eigen::MatrixXcd cnot_embedded = kernels::embed_unitary(
      cnot_matrix(0, 1, 2), local_support({control, target}), k);
  ChannelPTM cnot_ptm = ChannelPTM::from_unitary(cnot_embedded);

  ChannelPTM pre = ChannelPTM::identity(k);
  ChannelPTM post = ChannelPTM::identity(k);
  for (const auto& p : parts) {
    ChannelPTM part_ptm = ChannelPTM::identity(k);
    if (p.unitary) {
      part_ptm = ChannelPTM::from_unitary(
          kernels::embed_unitary(*p.unitary, local_support(p.support), k));
    } else {
      // 1-qubit channel tensored with identity on the remaining support:
      // R_big[(a_s, a_r), (b_s, b_r)] = R_small[a_s][b_s] delta(a_r, b_r)
      const auto local = local_support(p.support);
      const auto& small = p.channel->matrix();
      const Eigen::Index dim = Eigen::Index(1) << (2 * k);
      Eigen::MatrixXd big = Eigen::MatrixXd::Zero(dim, dim);
      for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) {
          const int la = (a >> (2 * local[0])) & 3;
          const int lb = (b >> (2 * local[0])) & 3;
          const Eigen::Index rest_a = a & ~(Eigen::Index(3) << (2 * local[0]));
          const Eigen::Index rest_b = b & ~(Eigen::Index(3) << (2 * local[0]));
          if (rest_a == rest_b) big(a, b) = small(la, lb);
        }
      part_ptm = ChannelPTM(k, std::move(big));
    }
    if (p.side == CoherentDressing::Side::pre)
      pre = part_ptm.compose_after(pre);
    else
      post = part_ptm.compose_after(post);
  }

  // noise relative to the ideal gate, referred to the pre side:
  // N = D^-1 post D pre
  ChannelPTM inv_cnot(k, cnot_ptm.matrix().transpose());
  ChannelPTM noise =
      inv_cnot.compose_after(post).compose_after(cnot_ptm).compose_after(pre);
  return {std::move(support), std::move(noise)};
}

double dressed_cnot_infidelity(const NoiseConfig& config, int control,
                               int target, int ring_size) {
  return infidelity(cycle_noise_channel(config, control, target, ring_size).ptm);
}

namespace {

NoiseSpec scaled(const NoiseSpec& spec, double factor) {
  NoiseSpec out = spec;
  std::visit(
      [&](auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, OverRotation>) m.epsilon *= factor;
        if constexpr (std::is_same_v<T, XIRotation>) m.phi *= factor;
        if constexpr (std::is_same_v<T, IZRotation>) m.phi *= factor;
        if constexpr (std::is_same_v<T, RingCrosstalk>) m.phi *= factor;
        if constexpr (std::is_same_v<T, SingleQubitCrosstalk>) m.phi *= factor;
        if constexpr (std::is_same_v<T, Relaxation>) m.t *= factor;
      },
      out.model);
  return out;
}

NoiseConfig scaled_config(const NoiseConfig& config, double factor) {
  NoiseConfig out;
  for (const auto& s : config.components)
    out.components.push_back(scaled(s, factor));
  return out;
}

}  // namespace

NoiseConfig calibrate_to_infidelity(const NoiseConfig& config, double target,
                                    int control, int target_qubit,
                                    int ring_size) {
  if (config.empty()) throw ContractError("cannot calibrate empty noise");
  auto eval = [&](double f) {
    return dressed_cnot_infidelity(scaled_config(config, f), control,
                                   target_qubit, ring_size);
  };
  double lo = 0.0, hi = 1.0;
  while (eval(hi) < target) {
    hi *= 2;
    if (hi > 1e6) throw IntegrityError("calibration target unreachable");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) < target ? lo : hi) = mid;
  }
  return scaled_config(config, 0.5 * (lo + hi));
}

NoiseConfig mixed_relaxation_crosstalk(double coherent_fraction,
                                       double total_infidelity, double t1,
                                       double t2, double p, int control,
                                       int target, int ring_size) {
  if (coherent_fraction < 0 || coherent_fraction > 1)
    throw ContractError("coherent_fraction must lie in [0, 1]");
  NoiseConfig out;
  if (1 - coherent_fraction > 1e-12) {
    NoiseConfig relax{{NoiseSpec{Relaxation{t1, t2, p, 1e-4}}}};
    relax = calibrate_to_infidelity(relax,
                                    (1 - coherent_fraction) * total_infidelity,
                                    control, target, ring_size);
    out.components.push_back(relax.components[0]);
  }
  if (coherent_fraction > 1e-12) {
    NoiseConfig xt{{NoiseSpec{RingCrosstalk{1e-2, ring_size}}}};
    xt = calibrate_to_infidelity(xt, coherent_fraction * total_infidelity,
                                 control, target, ring_size);
    out.components.push_back(xt.components[0]);
  }
  return out;
}

NoiseConfig NoiseConfig::from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("noise json: ") + e.what());
  }
  NoiseConfig out;
  auto parse_one = [](const json& j) -> std::vector<NoiseSpec> {
    const std::string model = j.at("model").get<std::string>();
    auto angle = [&](const char* key, const char* deg_key) {
      if (j.contains(key)) return j.at(key).get<double>();
      if (j.contains(deg_key))
        return j.at(deg_key).get<double>() * M_PI / 180.0;
      throw ParseError(std::string("noise json: missing ") + key);
    };
    if (model == "over_rotation")
      return {NoiseSpec{OverRotation{j.at("epsilon").get<double>()}}};
    if (model == "xi_rotation")
      return {NoiseSpec{XIRotation{angle("phi", "phi_deg")}}};
    if (model == "iz_rotation")
      return {NoiseSpec{IZRotation{angle("phi", "phi_deg")}}};
    if (model == "ring_crosstalk")
      return {NoiseSpec{RingCrosstalk{angle("phi", "phi_deg"),
                                      j.value("ring_size", 0)}}};
    if (model == "relaxation")
      return {NoiseSpec{Relaxation{j.at("t1").get<double>(),
                                   j.at("t2").get<double>(),
                                   j.value("p", 0.0),
                                   j.at("t").get<double>()}}};
    if (model == "single_qubit_crosstalk")
      return {NoiseSpec{SingleQubitCrosstalk{angle("phi", "phi_deg")}}};
    if (model == "mixed_relaxation_crosstalk") {
      const auto cfg = mixed_relaxation_crosstalk(
          j.at("coherent_fraction").get<double>(),
          j.value("total_infidelity", 1e-3), j.value("t1", 10.0),
          j.value("t2", 1.73), j.value("p", 0.0), 0, 1,
          j.value("ring_size", 4));
      return cfg.components;
    }
    throw ParseError("noise json: unknown model '" + model + "'");
  };
  try {
    if (root.is_array())
      for (const auto& j : root) {
        auto specs = parse_one(j);
        out.components.insert(out.components.end(), specs.begin(),
                              specs.end());
      }
    else {
      auto specs = parse_one(root);
      out.components = std::move(specs);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("noise json: ") + e.what());
  }
  return out;
}

std::string NoiseConfig::to_json() const {
  json arr = json::array();
  for (const auto& spec : components) {
    json j;
    j["model"] = spec.name();
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, OverRotation>)
            j["epsilon"] = m.epsilon;
          if constexpr (std::is_same_v<T, XIRotation>) j["phi"] = m.phi;
          if constexpr (std::is_same_v<T, IZRotation>) j["phi"] = m.phi;
          if constexpr (std::is_same_v<T, RingCrosstalk>) {
            j["phi"] = m.phi;
            j["ring_size"] = m.ring_size;
          }
          if constexpr (std::is_same_v<T, Relaxation>) {
            j["t1"] = m.t1;
            j["t2"] = m.t2;
            j["p"] = m.p;
            j["t"] = m.t;
          }
          if constexpr (std::is_same_v<T, SingleQubitCrosstalk>)
            j["phi"] = m.phi;
        },
        spec.model);
    arr.push_back(j);
  }
  return arr.dump();
}

}  // namespace twirlzne
