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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "twirlzne/experiments.hpp"

using namespace twirlzne;
namespace fs = std::filesystem;

static const fs::path kData = fs::path(TZ_DATA_DIR) / "h2";

static std::string h2_path(const std::string& tag) {
  return (kData / ("h2_" + tag + ".ints")).string();
}

TEST_CASE("curve: noiseless minimum hits chemical accuracy, FCI column sane") {
  nlohmann::json cfg;
  cfg["molecules"] = {h2_path("0.5"), h2_path("0.7414"), h2_path("1"),
                      h2_path("1.5"), h2_path("2"),      h2_path("2.5")};
  cfg["noise"] = nullptr;
  cfg["mitigation"] = {"none"};
  cfg["n_trials"] = 1;
  cfg["optimizer"] = {{"method", "powell"}, {"max_evaluations", 200}};
  cfg["seed"] = 3;

  RunOptions options;
  const auto out = cmd_curve(cfg.dump(), options);
  REQUIRE(out.table.rows.size() == 6);
  std::vector<double> fci, emin;
  for (const auto& row : out.table.rows) {
    emin.push_back(std::stod(row[2]));
    fci.push_back(std::stod(row[4]));
  }
  // noiseless single-trial minimum within chemical accuracy everywhere
  for (size_t i = 0; i < fci.size(); ++i)
    CHECK(std::abs(emin[i] - fci[i]) < 1.6e-3);
  // equilibrium is the FCI minimum; the curve rises toward dissociation
  CHECK(fci[1] == *std::min_element(fci.begin(), fci.end()));
  CHECK(fci[2] < fci[3]);
  CHECK(fci[3] < fci[4]);
  CHECK(fci[4] < fci[5]);
}

TEST_CASE("csv output re-reads identically") {
  nlohmann::json cfg;
  cfg["molecules"] = {h2_path("0.7414")};
  cfg["noise"] = nullptr;
  cfg["mitigation"] = {"none"};
  cfg["n_trials"] = 1;
  cfg["optimizer"] = {{"method", "nelder_mead"}, {"max_evaluations", 50}};

  RunOptions options;
  const auto out = cmd_curve(cfg.dump(), options);
  const fs::path tmp = fs::temp_directory_path() / "tz_curve.csv";
  out.table.write_csv(tmp);
  const ResultTable back = ResultTable::read_csv(tmp);
  CHECK(back.columns == out.table.columns);
  CHECK(back.rows == out.table.rows);
  CHECK(back.to_csv() == out.table.to_csv());
  fs::remove(tmp);
}

TEST_CASE("landscape: noise off leaves zero deviation; origin is HF") {
  nlohmann::json cfg;
  cfg["molecule"] = h2_path("0.7414");
  cfg["noise"] = nullptr;
  cfg["mitigation"] = {"none"};
  cfg["theta0_deg"] = 0.0;
  cfg["resolution"] = 3;
  cfg["range_deg"] = {-20.0, 20.0};

  RunOptions options;
  const auto out = cmd_landscape(cfg.dump(), options);
  REQUIRE(out.table.rows.size() == 9);
  const auto problem = VQEProblem::from_integral_file(h2_path("0.7414"));
  const double e_hf =
      expectation(problem.initial_state, problem.hamiltonian) +
      problem.energy_offset;
  bool saw_origin = false;
  for (const auto& row : out.table.rows) {
    CHECK(std::abs(std::stod(row[5])) < 1e-9);  // deviation column
    if (std::stod(row[0]) == 0.0 && std::stod(row[1]) == 0.0) {
      saw_origin = true;
      CHECK(std::stod(row[3]) == doctest::Approx(e_hf).epsilon(1e-10));
    }
  }
  CHECK(saw_origin);
}

TEST_CASE("precision: zero noise collapses every sample to the ideal") {
  nlohmann::json cfg;
  cfg["molecule"] = h2_path("0.7414");
  cfg["noise"] = nullptr;
  cfg["theta_deg"] = {8.6, 0.0, 0.0};
  cfg["n_rand"] = {2};
  cfg["repeats"] = 4;

  RunOptions options;
  const auto out = cmd_precision(cfg.dump(), options);
  REQUIRE(out.table.rows.size() == 4);
  for (const auto& row : out.table.rows) {
    CHECK(std::abs(std::stod(row[4])) < 1e-12);  // error column
    CHECK(std::stod(row[6]) == 0.0);             // group std
  }
}

TEST_CASE("linearity: identity term is constant with zero residual") {
  nlohmann::json cfg;
  cfg["molecule"] = h2_path("0.7414");
  cfg["noise"] = {{"model", "over_rotation"}, {"epsilon", 0.02}};
  cfg["theta_deg"] = {8.6, 0.0, 0.0};
  cfg["factors"] = {1, 3};
  cfg["n_rand"] = 2;

  RunOptions options;
  const auto out = cmd_linearity(cfg.dump(), options);
  int prev_r = 0;
  bool saw_identity = false;
  for (const auto& row : out.table.rows) {
    if (row[0] == "IIII") {
      saw_identity = true;
      CHECK(std::stod(row[2]) == doctest::Approx(1.0));
      CHECK(std::abs(std::stod(row[5])) < 1e-12);
      CHECK(std::abs(std::stod(row[6])) < 1e-12);
    }
    const int r = std::stoi(row[1]);
    CHECK(r % 2 == 1);
    if (row[0] == out.table.rows[0][0]) {
      CHECK(r > prev_r);  // strictly ascending within a term block
      prev_r = r;
    }
  }
  CHECK(saw_identity);
}

TEST_CASE("twirl-inspect: no noise means no error probabilities") {
  nlohmann::json cfg;
  cfg["noise"] = nullptr;
  cfg["control"] = 0;
  cfg["target"] = 1;
  cfg["ring"] = 2;
  RunOptions options;
  const auto out = cmd_twirl_inspect(cfg.dump(), options);
  for (const auto& row : out.table.rows) {
    if (row[0] == "II")
      CHECK(std::stod(row[2]) == doctest::Approx(1.0));
    else
      CHECK(std::abs(std::stod(row[2])) < 1e-12);
  }
}

TEST_CASE("twirl-inspect: IZ rotation reports p_Z = sin^2(phi/2)") {
  const double phi = 3.6 * M_PI / 180.0;
  nlohmann::json cfg;
  cfg["noise"] = {{"model", "iz_rotation"}, {"phi", phi}};
  cfg["control"] = 0;
  cfg["target"] = 1;
  cfg["ring"] = 2;
  RunOptions options;
  const auto out = cmd_twirl_inspect(cfg.dump(), options);
  bool saw = false;
  for (const auto& row : out.table.rows)
    if (row[0] == "IZ") {
      saw = true;
      CHECK(std::stod(row[2]) ==
            doctest::Approx(std::pow(std::sin(phi / 2), 2)).epsilon(1e-10));
    }
  CHECK(saw);
  // the twirl preserves average infidelity: reported before == after
  double before = 0, after = 0;
  for (const auto& [k, v] : out.table.provenance) {
    if (k == "infidelity_before") before = std::stod(v);
    if (k == "infidelity_after") after = std::stod(v);
  }
  CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("calibrate reaches the requested infidelity") {
  nlohmann::json cfg;
  cfg["noise"] = {{"model", "xi_rotation"}, {"phi_deg", 3.6}};
  cfg["target_infidelity"] = 1e-3;
  cfg["ring"] = 4;
  RunOptions options;
  const auto out = cmd_calibrate(cfg.dump(), options);
  CHECK(out.report.find("achieved infidelity: 0.001") != std::string::npos);
}

TEST_CASE("re-running an experiment reproduces identical bytes") {
  nlohmann::json cfg;
  cfg["molecule"] = h2_path("0.7414");
  cfg["noise"] = {{"model", "over_rotation"}, {"epsilon", 0.02}};
  cfg["mitigation"] = {"rc20+zne"};
  cfg["n_trials"] = 2;
  cfg["optimizer"] = {{"method", "powell"}, {"max_evaluations", 25}};
  cfg["measurement"] = {{"mode", "shots"}, {"total_shots", 20000}};
  cfg["seed"] = 11;

  RunOptions options;
  const auto a = cmd_ensemble(cfg.dump(), options);
  const auto b = cmd_ensemble(cfg.dump(), options);
  CHECK(a.table.to_csv() == b.table.to_csv());
  CHECK(a.jsonl == b.jsonl);

  // a different worker count must not change the numbers either
  RunOptions two_workers;
  two_workers.workers = 2;
  const auto c = cmd_ensemble(cfg.dump(), two_workers);
  CHECK(c.table.to_csv() == a.table.to_csv());
}

TEST_CASE("stretch gating") {
  // synthetic 10-spin-orbital problem: too wide without --stretch
  const fs::path tmp = fs::temp_directory_path() / "tz_wide.ints";
  {
    std::ofstream f(tmp);
    f << "norb 10 nelec 2 enuc 0.0\n";
    f << "1 0 0 -1.0\n1 1 1 -1.0\n1 2 2 -0.5\n1 3 3 -0.5\n";
  }
  nlohmann::json cfg;
  cfg["molecule"] = tmp.string();
  cfg["noise"] = {{"model", "over_rotation"}, {"epsilon", 0.02}};
  cfg["mitigation"] = {"none"};
  cfg["n_trials"] = 1;
  cfg["optimizer"] = {{"method", "powell"}, {"max_evaluations", 2}};

  RunOptions options;
  CHECK_THROWS_AS(cmd_ensemble(cfg.dump(), options), CapacityError);

  options.stretch = true;
  cfg["mitigation"] = {"rc+zne"};  // infinite RC not allowed in stretch mode
  CHECK_THROWS_AS(cmd_ensemble(cfg.dump(), options), ModeError);

  cfg["mitigation"] = {"rc20"};
  cfg["optimizer"] = {{"method", "powell"}, {"max_evaluations", 1}};
  const auto out = cmd_ensemble(cfg.dump(), options);
  CHECK(out.table.rows.size() == 1);
  fs::remove(tmp);
}

TEST_CASE("run_experiment dispatch and exit codes") {
  std::ostringstream log;
  RunOptions options;
  options.out = fs::temp_directory_path() / "tz_dispatch.csv";
  CHECK(run_experiment("bogus", "{}", options, log) == 2);
  CHECK(run_experiment("calibrate", "{not json", options, log) == 2);

  nlohmann::json cfg;
  cfg["noise"] = {{"model", "over_rotation"}, {"epsilon", 0.05}};
  cfg["target_infidelity"] = 1e-3;
  CHECK(run_experiment("calibrate", cfg.dump(), options, log) == 0);
  CHECK(fs::exists(options.out));
  fs::remove(options.out);
}
