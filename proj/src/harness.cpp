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

#include "twirlzne/harness.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "json.hpp"
#include "twirlzne/molecule.hpp"

namespace twirlzne {

VQEProblem VQEProblem::from_integral_file(const std::filesystem::path& path) {
  const auto problem = load_integrals(path);
  VQEProblem p;
  p.hamiltonian = jordan_wigner(problem.hamiltonian);
  p.ansatz = trotterize(build_cluster(problem.spec));
  p.initial_state = hartree_fock_state(problem.spec);
  p.energy_offset = problem.spec.nuclear_repulsion;
  p.reference_energy =
      ground_energy_exact(p.hamiltonian).energy + p.energy_offset;
  return p;
}

std::string TrialRecord::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["initial_theta"] = initial_theta;
  j["final_theta"] = final_theta;
  j["final_energy"] = final_energy;
  j["evaluations"] = evaluations;
  j["budget_exhausted"] = budget_exhausted;
  j["mitigation"] = mitigation;
  j["optimizer"] = optimizer;
  if (failed) {
    j["failed"] = true;
    j["error"] = error;
  }
  nlohmann::json tr = nlohmann::json::array();
  for (const auto& [theta, e] : trace)
    tr.push_back(nlohmann::json{{"theta", theta}, {"energy", e}});
  j["trace"] = tr;
  return j.dump();
}

TrialRecord run_trial(const VQEProblem& problem,
                      const MitigationConfig& mitigation,
                      const Measurement& measurement,
                      const OptimizerConfig& optimizer, uint64_t seed,
                      TwirlCache* cache) {
  TrialRecord record;
  record.seed = seed;
  record.mitigation = mitigation.name();
  record.optimizer = optimizer.method_name();

  const int m = problem.ansatz.n_params;
  Rng init_rng(Rng::derive(seed, 0xD1CE));
  record.initial_theta.resize(static_cast<size_t>(m));
  for (auto& t : record.initial_theta)
    t = init_rng.uniform(-M_PI / 10, M_PI / 10);

  TwirlCache local_cache;
  if (!cache) cache = &local_cache;

  try {
    uint64_t eval_counter = 0;
    Objective objective = [&](std::span<const double> theta) {
      const uint64_t eval_seed = Rng::derive(seed, ++eval_counter);
      const auto result = mitigated_energy(
          problem.ansatz, theta, problem.hamiltonian, problem.noise,
          mitigation, measurement, problem.initial_state, eval_seed, cache,
          problem.ring);
      return result.energy + problem.energy_offset;
    };
    const OptimizeResult opt =
        minimize(objective, record.initial_theta, optimizer);
    record.final_theta = opt.x;
    record.final_energy = opt.f;
    record.evaluations = opt.evaluations;
    record.budget_exhausted = opt.budget_exhausted;
    record.trace = opt.trace;
  } catch (const Error& e) {
    record.failed = true;
    record.error = e.what();
  }
  return record;
}

std::string EnsembleSummary::to_json_lines() const {
  std::string out;
  for (const auto& r : records) {
    out += r.to_json();
    out += '\n';
  }
  return out;
}

namespace {

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

}  // namespace

EnsembleSummary run_ensemble(const VQEProblem& problem,
                             const MitigationConfig& mitigation,
                             const Measurement& measurement,
                             const OptimizerConfig& optimizer, int n_trials,
                             uint64_t base_seed, int workers,
                             TwirlCache* cache) {
  if (n_trials < 1) throw ContractError("ensemble needs n_trials >= 1");

  TwirlCache local_cache;
  if (!cache) cache = &local_cache;
  // single-writer warm-up so worker threads only read the cache
  if (mitigation.rc.mode == RCConfig::Mode::infinite &&
      !problem.noise.empty()) {
    std::vector<double> probe(static_cast<size_t>(problem.ansatz.n_params),
                              0.0);
    const Circuit c = problem.ansatz.bind(probe);
    const int ring = problem.ring > 0 ? problem.ring : c.n_qubits;
    cache->warm(c, problem.noise, ring);
  }

  EnsembleSummary summary;
  summary.n_trials = n_trials;
  summary.records.resize(static_cast<size_t>(n_trials));

  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_trials) return;
      const uint64_t seed = Rng::derive(base_seed, static_cast<uint64_t>(i));
      summary.records[static_cast<size_t>(i)] =
          run_trial(problem, mitigation, measurement, optimizer, seed, cache);
    }
  };
  const int pool = std::max(1, std::min(workers, n_trials));
  if (pool == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(pool));
    for (int w = 0; w < pool; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  for (const auto& r : summary.records) {
    if (r.failed) {
      ++summary.n_failed;
      continue;
    }
    summary.energies.push_back(r.final_energy);
  }
  if (!summary.energies.empty()) {
    std::vector<double> sorted = summary.energies;
    std::sort(sorted.begin(), sorted.end());
    summary.min = sorted.front();
    summary.median = quantile(sorted, 0.5);
    summary.q25 = quantile(sorted, 0.25);
    summary.q75 = quantile(sorted, 0.75);
  }
  return summary;
}

}  // namespace twirlzne
