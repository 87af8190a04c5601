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

#include <vector>

#include "twirlzne/errors.hpp"

namespace twirlzne {

struct ZNEConfig {
  enum class Order { linear, quadratic };

  std::vector<int> factors{1, 3};  // ascending odd magnification factors
  Order order = Order::linear;

  int order_degree() const { return order == Order::linear ? 1 : 2; }
  void validate() const;
};

struct ExtrapolationFit {
  std::vector<std::pair<int, double>> points;   // (r, E)
  std::vector<double> coefficients;             // E(r) ~ sum_k c_k r^k
  double zero_noise_value = 0;                  // c_0

  double evaluate(double r) const;
};

/// Least-squares polynomial of the configured order in r; the zero-noise
/// estimate is the constant coefficient. The exactly-determined linear case
/// reduces to E*(0) = (r2 E(r1) - r1 E(r2)) / (r2 - r1).
ExtrapolationFit extrapolate(const std::vector<std::pair<int, double>>& points,
                             const ZNEConfig& cfg);

}  // namespace twirlzne
