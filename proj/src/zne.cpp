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

#include "twirlzne/zne.hpp"

#include <Eigen/Dense>
#include <set>

namespace twirlzne {

void ZNEConfig::validate() const {
  if (factors.empty()) throw ContractError("ZNE needs at least one factor");
  std::set<int> seen;
  int prev = 0;
  for (int r : factors) {
    if (r < 1 || r % 2 == 0)
      throw ContractError("ZNE factors must be odd and >= 1");
    if (r <= prev) throw ContractError("ZNE factors must be ascending");
    if (!seen.insert(r).second) throw ContractError("duplicate ZNE factor");
    prev = r;
  }
  const size_t needed = static_cast<size_t>(order_degree()) + 1;
  if (factors.size() < needed)
    throw ContractError("ZNE order needs at least " + std::to_string(needed) +
                        " factors");
}

double ExtrapolationFit::evaluate(double r) const {
  double acc = 0, pow_r = 1;
  for (double c : coefficients) {
    acc += c * pow_r;
    pow_r *= r;
  }
  return acc;
}

ExtrapolationFit extrapolate(const std::vector<std::pair<int, double>>& points,
                             const ZNEConfig& cfg) {
  const int degree = cfg.order_degree();
  if (points.size() < static_cast<size_t>(degree) + 1)
    throw ContractError("extrapolate: insufficient points for the fit order");
  std::set<int> rs;
  for (const auto& [r, e] : points)
    if (!rs.insert(r).second)
      throw ContractError("extrapolate: duplicate magnification factor");

  Eigen::MatrixXd a(points.size(), degree + 1);
  Eigen::VectorXd y(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    double pow_r = 1;
    for (int j = 0; j <= degree; ++j) {
      a(static_cast<Eigen::Index>(i), j) = pow_r;
      pow_r *= points[i].first;
    }
    y(static_cast<Eigen::Index>(i)) = points[i].second;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);

  ExtrapolationFit fit;
  fit.points = points;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.zero_noise_value = fit.coefficients[0];
  return fit;
}

}  // namespace twirlzne
