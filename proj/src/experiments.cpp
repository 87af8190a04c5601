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

#include "twirlzne/experiments.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "twirlzne/molecule.hpp"

namespace twirlzne {

using nlohmann::json;

namespace {

constexpr double kDeg = M_PI / 180.0;
constexpr int kStretchQubitLimit = 8;

json parse_config(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
}

NoiseConfig noise_from(const json& cfg) {
  if (!cfg.contains("noise") || cfg.at("noise").is_null())
    return NoiseConfig::none();
  return NoiseConfig::from_json(cfg.at("noise").dump());
}

OptimizerConfig optimizer_from(const json& cfg) {
  OptimizerConfig opt;
  if (!cfg.contains("optimizer")) return opt;
  const json& j = cfg.at("optimizer");
  if (j.contains("method"))
    opt.method =
        OptimizerConfig::method_from_name(j.at("method").get<std::string>());
  opt.max_evaluations = j.value("max_evaluations", opt.max_evaluations);
  opt.f_tol = j.value("f_tol", opt.f_tol);
  opt.x_tol = j.value("x_tol", opt.x_tol);
  return opt;
}

Measurement measurement_from(const json& cfg) {
  if (!cfg.contains("measurement")) return Measurement::exact();
  const json& j = cfg.at("measurement");
  const std::string mode = j.value("mode", "exact");
  if (mode == "exact") return Measurement::exact();
  if (mode == "shots")
    return Measurement::shots(j.value("total_shots", uint64_t{100000}));
  throw ParseError("measurement mode must be 'exact' or 'shots'");
}

std::vector<MitigationConfig> mitigations_from(const json& cfg) {
  std::vector<MitigationConfig> out;
  if (!cfg.contains("mitigation")) {
    for (const char* n : {"none", "rc", "zne", "rc+zne"})
      out.push_back(MitigationConfig::parse_name(n));
    return out;
  }
  for (const auto& j : cfg.at("mitigation"))
    out.push_back(MitigationConfig::parse_name(j.get<std::string>()));
  if (out.empty()) throw ContractError("empty mitigation list");
  return out;
}

uint64_t effective_seed(const json& cfg, const RunOptions& options) {
  if (options.seed_overridden) return options.seed;
  return cfg.value("seed", options.seed);
}

struct LoadedProblem {
  VQEProblem problem;
  double geometry = 0;
  std::string name;
};

LoadedProblem load_problem(const std::string& path, const RunOptions& options,
                           const std::vector<MitigationConfig>& mitigations,
                           const NoiseConfig& noise) {
  LoadedProblem lp;
  lp.problem = VQEProblem::from_integral_file(path);
  lp.problem.noise = noise;
  const auto spec = load_integrals(path).spec;
  lp.geometry = spec.geometry;
  lp.name = spec.name;

  const int n = lp.problem.ansatz.n_qubits;
  if (n > kStretchQubitLimit) {
    if (!options.stretch)
      throw CapacityError("problem has " + std::to_string(n) +
                          " qubits; pass --stretch to run beyond " +
                          std::to_string(kStretchQubitLimit));
    // stretch mode keeps everything in statevector form
    if (noise.has_incoherent())
      throw ModeError("stretch mode is statevector-only: incoherent noise "
                      "needs the density path");
    for (const auto& mit : mitigations)
      if (mit.rc.mode == RCConfig::Mode::infinite)
        throw ModeError("stretch mode is statevector-only: use finite RC "
                        "instead of the infinite-randomization limit");
  }
  return lp;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  const int pool = std::max(1, std::min(workers, n));
  if (pool == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < pool; ++w) threads.emplace_back(work);
  for (auto& t : threads) t.join();
}

void stamp(ResultTable& table, const std::string& kind, const json& cfg,
           uint64_t seed) {
  char hex[32];
  snprintf(hex, sizeof hex, "%016llx",
           static_cast<unsigned long long>(config_hash(cfg.dump())));
  table.provenance = {{"version", kArtifactVersion},
                      {"kind", kind},
                      {"config_hash", hex},
                      {"seed", std::to_string(seed)}};
}

std::vector<double> theta_from(const json& cfg, int n_params) {
  std::vector<double> theta(static_cast<size_t>(n_params), 0.0);
  if (cfg.contains("theta_deg")) {
    const auto& j = cfg.at("theta_deg");
    if (static_cast<int>(j.size()) != n_params)
      throw DimensionError("theta_deg length must match the parameter count");
    for (int i = 0; i < n_params; ++i)
      theta[static_cast<size_t>(i)] = j.at(i).get<double>() * kDeg;
  }
  return theta;
}

double linear_fit_max_residual(const std::vector<std::pair<int, double>>& pts) {
  ZNEConfig lin;
  lin.factors = {1, 3};  // unused by extrapolate beyond validation
  const auto fit = extrapolate(pts, lin);
  double resid = 0;
  for (const auto& [r, e] : pts)
    resid = std::max(resid, std::abs(e - fit.evaluate(r)));
  return resid;
}

}  // namespace

uint64_t config_hash(const std::string& canonical_json) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void ResultTable::add_row(std::initializer_list<std::string> cells) {
  rows.emplace_back(cells);
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (const auto& [k, v] : provenance) out += "# " + k + "=" + v + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void ResultTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << to_csv();
}

ResultTable ResultTable::read_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path.string());
  ResultTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos)
        table.provenance.emplace_back(line.substr(2, eq - 2),
                                      line.substr(eq + 1));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      table.columns = std::move(cells);
      header_seen = true;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

ExperimentOutcome cmd_curve(const std::string& config_json,
                            const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const auto mitigations = mitigations_from(cfg);
  const OptimizerConfig optimizer = optimizer_from(cfg);
  const Measurement measurement = measurement_from(cfg);
  const int n_trials = cfg.value("n_trials", 35);

  ExperimentOutcome out;
  out.table.columns = {"geometry", "config", "e_min", "e_median", "e_fci"};
  stamp(out.table, "curve", cfg, seed);

  const auto molecules = cfg.at("molecules");
  int row_seed = 0;
  for (const auto& mj : molecules) {
    const auto lp =
        load_problem(mj.get<std::string>(), options, mitigations, noise);
    TwirlCache cache;
    for (const auto& mit : mitigations) {
      const uint64_t base =
          Rng::derive(seed, static_cast<uint64_t>(row_seed++));
      const auto summary =
          run_ensemble(lp.problem, mit, measurement, optimizer, n_trials,
                       base, options.workers, &cache);
      out.failed_trials += summary.n_failed;
      out.jsonl += summary.to_json_lines();
      out.table.add_row({format_double(lp.geometry), mit.name(),
                         format_double(summary.min),
                         format_double(summary.median),
                         format_double(lp.problem.reference_energy)});
    }
  }
  out.report = "curve: " + std::to_string(out.table.rows.size()) + " rows";
  return out;
}

ExperimentOutcome cmd_ensemble(const std::string& config_json,
                               const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const auto mitigations = mitigations_from(cfg);
  const OptimizerConfig optimizer = optimizer_from(cfg);
  const Measurement measurement = measurement_from(cfg);
  const int n_trials = cfg.value("n_trials", 35);

  const auto lp = load_problem(cfg.at("molecule").get<std::string>(), options,
                               mitigations, noise);

  ExperimentOutcome out;
  out.table.columns = {"config", "n_trials", "n_failed", "e_min",
                       "e_median", "q25",     "q75",      "e_fci"};
  stamp(out.table, "ensemble", cfg, seed);

  TwirlCache cache;
  std::ostringstream report;
  report << "ensemble: " << lp.name << " (E_fci "
         << format_double(lp.problem.reference_energy) << ")\n";
  int idx = 0;
  for (const auto& mit : mitigations) {
    const uint64_t base = Rng::derive(seed, static_cast<uint64_t>(idx++));
    const auto summary =
        run_ensemble(lp.problem, mit, measurement, optimizer, n_trials, base,
                     options.workers, &cache);
    out.failed_trials += summary.n_failed;
    out.jsonl += summary.to_json_lines();
    out.table.add_row(
        {mit.name(), std::to_string(summary.n_trials),
         std::to_string(summary.n_failed), format_double(summary.min),
         format_double(summary.median), format_double(summary.q25),
         format_double(summary.q75),
         format_double(lp.problem.reference_energy)});
    report << "  " << mit.name() << ": min "
           << format_double(summary.min - lp.problem.reference_energy)
           << "  median "
           << format_double(summary.median - lp.problem.reference_energy)
           << " (error vs FCI)\n";
  }
  out.report = report.str();
  return out;
}

ExperimentOutcome cmd_landscape(const std::string& config_json,
                                const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const auto mitigations = mitigations_from(cfg);
  const Measurement measurement = measurement_from(cfg);

  const auto lp = load_problem(cfg.at("molecule").get<std::string>(), options,
                               mitigations, noise);
  if (lp.problem.ansatz.n_params != 3)
    throw ContractError("landscape grids expect the 3-parameter H2 ansatz");

  const double theta0 = cfg.value("theta0_deg", 8.6) * kDeg;
  const int resolution = cfg.value("resolution", 21);
  std::pair<double, double> range{-90.0, 90.0};
  if (cfg.contains("range_deg"))
    range = {cfg.at("range_deg").at(0).get<double>(),
             cfg.at("range_deg").at(1).get<double>()};

  ExperimentOutcome out;
  out.table.columns = {"theta1_deg", "theta2_deg", "config",
                       "energy",     "ideal",      "deviation"};
  stamp(out.table, "landscape", cfg, seed);

  const int total = resolution * resolution;
  struct Cell {
    double t1 = 0, t2 = 0, ideal = 0;
    std::vector<double> energies;
  };
  std::vector<Cell> cells(static_cast<size_t>(total));

  TwirlCache cache;
  // warm single-threaded so grid workers only read
  {
    std::vector<double> probe{theta0, 0, 0};
    const Circuit c = lp.problem.ansatz.bind(probe);
    if (!noise.empty()) cache.warm(c, noise, c.n_qubits);
    for (int r : ZNEConfig{}.factors)
      if (!noise.empty()) cache.warm(magnify(c, r), noise, c.n_qubits);
  }

  parallel_for(total, options.workers, [&](int idx) {
    const int i = idx / resolution, j = idx % resolution;
    const double step =
        resolution > 1 ? (range.second - range.first) / (resolution - 1) : 0;
    Cell& cell = cells[static_cast<size_t>(idx)];
    cell.t1 = range.first + step * i;
    cell.t2 = range.first + step * j;
    const std::vector<double> theta{theta0, cell.t1 * kDeg, cell.t2 * kDeg};
    cell.ideal = expectation(simulate(lp.problem.ansatz.bind(theta),
                                      lp.problem.initial_state),
                             lp.problem.hamiltonian) +
                 lp.problem.energy_offset;
    for (const auto& mit : mitigations) {
      const auto result = mitigated_energy(
          lp.problem.ansatz, theta, lp.problem.hamiltonian, noise, mit,
          measurement, lp.problem.initial_state,
          Rng::derive(seed, static_cast<uint64_t>(idx)), &cache);
      cell.energies.push_back(result.energy + lp.problem.energy_offset);
    }
  });

  for (const auto& cell : cells)
    for (size_t m = 0; m < mitigations.size(); ++m)
      out.table.add_row({format_double(cell.t1), format_double(cell.t2),
                         mitigations[m].name(),
                         format_double(cell.energies[m]),
                         format_double(cell.ideal),
                         format_double(cell.energies[m] - cell.ideal)});
  out.report = "landscape: " + std::to_string(total) + " grid points";
  return out;
}

ExperimentOutcome cmd_precision(const std::string& config_json,
                                const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const auto mitig_dummy = std::vector<MitigationConfig>{
      MitigationConfig{RCConfig::finite(10), std::nullopt}};

  auto label_of = [](std::string dump) {
    for (auto& ch : dump)
      if (ch == ',') ch = ';';  // keep the csv cell comma-free
    return dump;
  };
  std::vector<std::pair<std::string, NoiseConfig>> noises;
  if (cfg.contains("noises")) {
    for (const auto& j : cfg.at("noises"))
      noises.emplace_back(label_of(j.dump()), NoiseConfig::from_json(j.dump()));
  } else {
    noises.emplace_back(label_of(cfg.at("noise").dump()), noise_from(cfg));
  }

  std::vector<int> n_rand = cfg.value("n_rand", std::vector<int>{10, 20, 40});
  const int repeats = cfg.value("repeats", 200);

  ExperimentOutcome out;
  out.table.columns = {"noise",  "n_rand",     "repeat",   "energy",
                       "error",  "group_mean", "group_std"};
  stamp(out.table, "precision", cfg, seed);

  const auto lp0 = load_problem(cfg.at("molecule").get<std::string>(), options,
                                mitig_dummy, noises.front().second);
  const std::vector<double> theta =
      theta_from(cfg, lp0.problem.ansatz.n_params);
  const double ideal =
      expectation(simulate(lp0.problem.ansatz.bind(theta),
                           lp0.problem.initial_state),
                  lp0.problem.hamiltonian) +
      lp0.problem.energy_offset;

  uint64_t group_index = 0;
  for (const auto& [label, noise] : noises) {
    for (int n : n_rand) {
      std::vector<double> samples(static_cast<size_t>(repeats));
      const uint64_t group_seed = Rng::derive(seed, group_index++);
      parallel_for(repeats, options.workers, [&](int k) {
        const MitigationConfig mit{RCConfig::finite(n), std::nullopt};
        const auto result = mitigated_energy(
            lp0.problem.ansatz, theta, lp0.problem.hamiltonian, noise, mit,
            Measurement::exact(), lp0.problem.initial_state,
            Rng::derive(group_seed, static_cast<uint64_t>(k)));
        samples[static_cast<size_t>(k)] =
            result.energy + lp0.problem.energy_offset;
      });
      double mean = 0;
      for (double e : samples) mean += e;
      mean /= repeats;
      double var = 0;
      for (double e : samples) var += (e - mean) * (e - mean);
      const double std_dev =
          repeats > 1 ? std::sqrt(var / (repeats - 1)) : 0.0;
      for (int k = 0; k < repeats; ++k)
        out.table.add_row({label, std::to_string(n), std::to_string(k),
                           format_double(samples[static_cast<size_t>(k)]),
                           format_double(samples[static_cast<size_t>(k)] -
                                         ideal),
                           format_double(mean), format_double(std_dev)});
    }
  }
  out.report = "precision: " + std::to_string(out.table.rows.size()) +
               " samples (ideal " + format_double(ideal) + ")";
  return out;
}

ExperimentOutcome cmd_linearity(const std::string& config_json,
                                const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const auto mitig_dummy = std::vector<MitigationConfig>{
      MitigationConfig{RCConfig::infinite(), std::nullopt}};
  const auto lp = load_problem(cfg.at("molecule").get<std::string>(), options,
                               mitig_dummy, noise);
  const std::vector<double> theta = theta_from(cfg, lp.problem.ansatz.n_params);
  std::vector<int> factors = cfg.value("factors", std::vector<int>{1, 3, 5, 7});
  const int n_rand = cfg.value("n_rand", 20);

  for (int r : factors)
    if (r < 1 || r % 2 == 0)
      throw ContractError("linearity factors must be odd and ascending");

  const Circuit base = lp.problem.ansatz.bind(theta);
  TwirlCache cache;

  // per factor, per strategy: expectations of every Hamiltonian term
  struct Series {
    std::map<PauliString, double> no_rc, rc_inf, rc_fin;
  };
  std::vector<Series> series(factors.size());
  parallel_for(static_cast<int>(factors.size()), options.workers, [&](int i) {
    const Circuit magnified = magnify(base, factors[static_cast<size_t>(i)]);
    Series& s = series[static_cast<size_t>(i)];
    s.no_rc = per_term_expectations(magnified, lp.problem.hamiltonian, noise,
                                    RCConfig::off(), lp.problem.initial_state,
                                    Rng::derive(seed, 100 + i), &cache);
    s.rc_inf = per_term_expectations(
        magnified, lp.problem.hamiltonian, noise, RCConfig::infinite(),
        lp.problem.initial_state, Rng::derive(seed, 200 + i), &cache);
    s.rc_fin = per_term_expectations(
        magnified, lp.problem.hamiltonian, noise, RCConfig::finite(n_rand),
        lp.problem.initial_state, Rng::derive(seed, 300 + i), &cache);
  });

  ExperimentOutcome out;
  out.table.columns = {"term",      "r",          "e_no_rc",
                       "e_rc_inf",  "e_rc_finite", "resid_no_rc",
                       "resid_rc_inf", "resid_rc_finite"};
  stamp(out.table, "linearity", cfg, seed);

  for (const auto& [word, coeff] : lp.problem.hamiltonian.terms()) {
    std::vector<std::pair<int, double>> p0, p1, p2;
    for (size_t i = 0; i < factors.size(); ++i) {
      p0.emplace_back(factors[i], series[i].no_rc.at(word));
      p1.emplace_back(factors[i], series[i].rc_inf.at(word));
      p2.emplace_back(factors[i], series[i].rc_fin.at(word));
    }
    const double r0 = linear_fit_max_residual(p0);
    const double r1 = linear_fit_max_residual(p1);
    const double r2 = linear_fit_max_residual(p2);
    for (size_t i = 0; i < factors.size(); ++i)
      out.table.add_row({word.text(), std::to_string(factors[i]),
                         format_double(p0[i].second),
                         format_double(p1[i].second),
                         format_double(p2[i].second), format_double(r0),
                         format_double(r1), format_double(r2)});
  }
  out.report = "linearity: " +
               std::to_string(lp.problem.hamiltonian.size()) + " terms x " +
               std::to_string(factors.size()) + " factors";
  return out;
}

ExperimentOutcome cmd_twirl_inspect(const std::string& config_json,
                                    const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const int control = cfg.value("control", 0);
  const int target = cfg.value("target", 1);
  const int ring = cfg.value("ring", 4);

  const CycleNoise cycle = cycle_noise_channel(noise, control, target, ring);
  const ChannelPTM twirled = twirl_ptm(cycle.ptm);
  const double infid_before = infidelity(cycle.ptm);
  const double infid_after = infidelity(twirled);

  // error probabilities of the stochastic Pauli channel: p = 4^-n S d where
  // S is the commutation-sign matrix over the support words
  const int n = twirled.n_qubits();
  const auto dim = static_cast<size_t>(twirled.dim());
  const Eigen::VectorXd diag = twirled.matrix().diagonal();
  std::vector<PauliString> words(dim);
  for (size_t a = 0; a < dim; ++a) {
    PauliString w(n);
    static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    for (int q = 0; q < n; ++q)
      w.set_letter(q, kLetters[(a >> (2 * q)) & 3]);
    words[a] = w;
  }

  ExperimentOutcome out;
  out.table.columns = {"word", "twirled_diagonal", "error_probability"};
  stamp(out.table, "twirl-inspect", cfg, seed);
  out.table.provenance.emplace_back("infidelity_before",
                                    format_double(infid_before));
  out.table.provenance.emplace_back("infidelity_after",
                                    format_double(infid_after));
  out.table.provenance.emplace_back(
      "support", [&] {
        std::string s;
        for (int q : cycle.support) s += std::to_string(q) + " ";
        if (!s.empty()) s.pop_back();
        return s;
      }());

  double check = 0;
  for (size_t a = 0; a < dim; ++a) {
    double p = 0;
    for (size_t b = 0; b < dim; ++b)
      p += commutation_sign(words[a], words[b]) *
           diag(static_cast<Eigen::Index>(b));
    p /= static_cast<double>(dim);
    check += p;
    out.table.add_row({words[a].text(),
                       format_double(diag(static_cast<Eigen::Index>(a))),
                       format_double(p)});
  }

  std::ostringstream report;
  report << "twirl-inspect: support {";
  for (int q : cycle.support) report << ' ' << q;
  report << " }\n  infidelity before " << format_double(infid_before)
         << ", after " << format_double(infid_after)
         << " (twirl preserves the PTM trace)\n  error probabilities sum to "
         << format_double(check) << "\n";
  out.report = report.str();
  return out;
}

ExperimentOutcome cmd_calibrate(const std::string& config_json,
                                const RunOptions& options) {
  const json cfg = parse_config(config_json);
  const uint64_t seed = effective_seed(cfg, options);
  const NoiseConfig noise = noise_from(cfg);
  const double target = cfg.at("target_infidelity").get<double>();
  const int control = cfg.value("control", 0);
  const int target_q = cfg.value("target", 1);
  const int ring = cfg.value("ring", 4);

  const NoiseConfig tuned =
      calibrate_to_infidelity(noise, target, control, target_q, ring);
  const double achieved = dressed_cnot_infidelity(tuned, control, target_q, ring);

  ExperimentOutcome out;
  out.table.columns = {"component", "calibrated_json"};
  stamp(out.table, "calibrate", cfg, seed);
  for (const auto& spec : tuned.components) {
    NoiseConfig one{{spec}};
    std::string j = one.to_json();
    for (auto& ch : j)
      if (ch == ',') ch = ';';  // keep the csv cell comma-free
    out.table.add_row({spec.name(), j});
  }
  out.report = "calibrated noise: " + tuned.to_json() +
               "\nachieved infidelity: " + format_double(achieved) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

int run_experiment(const std::string& kind, const std::string& config_json,
                   RunOptions options, std::ostream& log) {
  ExperimentOutcome outcome;
  try {
    if (kind == "curve")
      outcome = cmd_curve(config_json, options);
    else if (kind == "landscape")
      outcome = cmd_landscape(config_json, options);
    else if (kind == "precision")
      outcome = cmd_precision(config_json, options);
    else if (kind == "linearity")
      outcome = cmd_linearity(config_json, options);
    else if (kind == "ensemble")
      outcome = cmd_ensemble(config_json, options);
    else if (kind == "twirl-inspect")
      outcome = cmd_twirl_inspect(config_json, options);
    else if (kind == "calibrate")
      outcome = cmd_calibrate(config_json, options);
    else {
      log << "unknown subcommand '" << kind << "'\n";
      return 2;
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }

  std::filesystem::path out_path = options.out;
  if (out_path.empty()) out_path = kind + std::string(".csv");
  outcome.table.write_csv(out_path);
  if (!outcome.jsonl.empty()) {
    std::filesystem::path jl = out_path;
    jl.replace_extension(".jsonl");
    std::ofstream f(jl);
    f << outcome.jsonl;
  }
  log << outcome.report << "\n";
  log << "wrote " << out_path.string() << "\n";
  if (outcome.failed_trials > 0) {
    log << outcome.failed_trials << " trial(s) failed\n";
    if (!options.allow_partial) return 1;
  }
  return 0;
}

}  // namespace twirlzne
