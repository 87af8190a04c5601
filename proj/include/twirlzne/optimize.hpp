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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twirlzne/errors.hpp"

namespace twirlzne {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerConfig {
  enum class Method { powell, nelder_mead };

  Method method = Method::powell;
  int max_evaluations = 400;
  double f_tol = 1e-6;   // Hartree; below chemical accuracy with margin
  double x_tol = 1e-4;   // radians
  std::optional<std::vector<std::pair<double, double>>> bounds;

  void validate(size_t dimension) const;
  std::string method_name() const;
  static Method method_from_name(const std::string& name);
};

struct OptimizeResult {
  std::vector<double> x;
  double f = 0;
  int evaluations = 0;
  bool budget_exhausted = false;             // truncation flag
  std::vector<std::pair<std::vector<double>, double>> trace;
};

/// Powell's conjugate-direction search: derivative-free line minimizations
/// along an updated direction set. Deterministic for a deterministic f.
OptimizeResult powell_minimize(const Objective& f, std::span<const double> x0,
                               const OptimizerConfig& cfg);

/// Nelder-Mead simplex, initialized at x0 with per-coordinate step 0.1 rad.
OptimizeResult nelder_mead_minimize(const Objective& f,
                                    std::span<const double> x0,
                                    const OptimizerConfig& cfg);

OptimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const OptimizerConfig& cfg);

}  // namespace twirlzne
