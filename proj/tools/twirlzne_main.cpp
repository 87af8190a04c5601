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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twirlzne/experiments.hpp"

namespace {

int default_workers() {
  if (const char* env = std::getenv("TWIRLZNE_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twirlzne: coherent-noise mitigation experiments for VQE"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  uint64_t seed = 1;
  bool seed_given = false;
  int workers = default_workers();
  bool stretch = false;
  bool allow_partial = false;

  const std::vector<std::string> kinds = {
      "curve",     "landscape",     "precision", "linearity",
      "ensemble",  "twirl-inspect", "calibrate"};
  const std::map<std::string, std::string> descriptions = {
      {"curve", "dissociation curve: ensembles per geometry"},
      {"landscape", "2-d energy landscape grids"},
      {"precision", "finite-RC spread vs randomization count"},
      {"linearity", "per-term expectations vs CNOT repetitions"},
      {"ensemble", "multi-trial VQE at one geometry"},
      {"twirl-inspect", "noise channel and its Pauli twirl"},
      {"calibrate", "scale noise strength to a target infidelity"}};

  for (const auto& kind : kinds) {
    auto* sub = app.add_subcommand(kind, descriptions.at(kind));
    sub->add_option("--config", config_path, "experiment config (json)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "base seed (overrides the config)")
        ->trigger_on_parse()
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--out", out_path, "output csv path");
    sub->add_option("--workers", workers,
                    "worker threads (env TWIRLZNE_WORKERS)");
    sub->add_flag("--stretch", stretch,
                  "allow > 8 qubits (statevector-only finite RC)");
    sub->add_flag("--allow-partial", allow_partial,
                  "exit 0 even when some trials fail");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();

  std::ifstream cfg(config_path);
  std::stringstream buffer;
  buffer << cfg.rdbuf();

  twirlzne::RunOptions options;
  options.seed = seed;
  options.seed_overridden = seed_given;
  options.out = out_path;
  options.workers = workers;
  options.stretch = stretch;
  options.allow_partial = allow_partial;

  return twirlzne::run_experiment(kind, buffer.str(), options, std::cout);
}
