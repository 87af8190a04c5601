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

#include "twirlzne/optimize.hpp"
#include "twirlzne/pipeline.hpp"

namespace twirlzne {

/// Everything one VQE run needs: ansatz, observable, reference state, the
/// constant added to reported energies, and the noise environment.
struct VQEProblem {
  CircuitTemplate ansatz;
  PauliSum hamiltonian;
  DenseState initial_state;
  double energy_offset = 0;  // nuclear repulsion, Hartree
  NoiseConfig noise;
  int ring = 0;  // 0: ansatz qubit count
  double reference_energy = 0;  // exact ground energy incl. offset, if known

  static VQEProblem from_integral_file(const std::filesystem::path& path);
};

struct TrialRecord {
  uint64_t seed = 0;
  std::vector<double> initial_theta;
  std::vector<double> final_theta;
  double final_energy = 0;  // includes energy_offset
  int evaluations = 0;
  bool budget_exhausted = false;
  std::vector<std::pair<std::vector<double>, double>> trace;  // offset incl.
  std::string mitigation;
  std::string optimizer;
  bool failed = false;
  std::string error;

  std::string to_json() const;
};

/// One VQE trial: theta0 ~ U[-pi/10, pi/10]^m from the trial seed, objective
/// = mitigated energy under the given configs, full evaluation trace kept.
TrialRecord run_trial(const VQEProblem& problem,
                      const MitigationConfig& mitigation,
                      const Measurement& measurement,
                      const OptimizerConfig& optimizer, uint64_t seed,
                      TwirlCache* cache = nullptr);

struct EnsembleSummary {
  int n_trials = 0;
  int n_failed = 0;
  std::vector<double> energies;  // successful trials, trial order
  double min = 0;
  double median = 0;
  double q25 = 0;
  double q75 = 0;
  std::vector<TrialRecord> records;

  std::string to_json_lines() const;  // one TrialRecord per line
};

/// n_trials independent trials with seeds derived from base_seed; trials are
/// fanned out over `workers` threads and merged in trial order, so results
/// do not depend on the worker count.
EnsembleSummary run_ensemble(const VQEProblem& problem,
                             const MitigationConfig& mitigation,
                             const Measurement& measurement,
                             const OptimizerConfig& optimizer, int n_trials,
                             uint64_t base_seed, int workers = 1,
                             TwirlCache* cache = nullptr);

}  // namespace twirlzne
