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

#include "twirlzne/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twirlzne {

void OptimizerConfig::validate(size_t dimension) const {
  if (max_evaluations < 1)
    throw ContractError("optimizer: evaluation budget must be >= 1");
  if (f_tol <= 0 || x_tol <= 0)
    throw ContractError("optimizer: tolerances must be positive");
  if (bounds && bounds->size() != dimension)
    throw DimensionError("optimizer: one bound pair per parameter required");
}

std::string OptimizerConfig::method_name() const {
  return method == Method::powell ? "powell" : "nelder_mead";
}

OptimizerConfig::Method OptimizerConfig::method_from_name(
    const std::string& name) {
  if (name == "powell") return Method::powell;
  if (name == "nelder_mead" || name == "nelder-mead")
    return Method::nelder_mead;
  throw ParseError("unknown optimizer '" + name + "'");
}

namespace {

// Shared bookkeeping: budget enforcement, bounds clamping, incumbent trace.
class Recorder {
 public:
  Recorder(const Objective& f, const OptimizerConfig& cfg, size_t dim)
      : f_(f), cfg_(cfg), dim_(dim) {}

  // throws BudgetExhausted once the evaluation budget is used up
  double eval(std::vector<double> x);

  void clamp(std::vector<double>& x) const {
    if (!cfg_.bounds) return;
    for (size_t i = 0; i < dim_; ++i)
      x[i] = std::clamp(x[i], (*cfg_.bounds)[i].first,
                        (*cfg_.bounds)[i].second);
  }

  bool exhausted() const {
    return static_cast<int>(trace_.size()) >= cfg_.max_evaluations;
  }
  int evaluations() const { return static_cast<int>(trace_.size()); }

  OptimizeResult finish(bool truncated) {
    OptimizeResult r;
    r.x = best_x_;
    r.f = best_f_;
    r.evaluations = evaluations();
    r.budget_exhausted = truncated;
    r.trace = std::move(trace_);
    return r;
  }

  double best_f() const { return best_f_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  const OptimizerConfig& cfg_;
  size_t dim_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
  std::vector<std::pair<std::vector<double>, double>> trace_;
};

struct BudgetExhausted {};

double Recorder::eval(std::vector<double> x) {
  if (exhausted()) throw BudgetExhausted{};
  clamp(x);
  const double v = f_(x);
  trace_.emplace_back(x, v);
  if (v < best_f_) {
    best_f_ = v;
    best_x_ = std::move(x);
  }
  return v;
}

// Brent line minimization of g(t) = f(x + t u) after golden-section
// bracketing. Parabolic steps solve quadratics essentially exactly.
class LineSearch {
 public:
  LineSearch(Recorder& rec, const std::vector<double>& x,
             const std::vector<double>& u)
      : rec_(rec), x_(x), u_(u) {}

  double g(double t) {
    std::vector<double> p(x_.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = x_[i] + t * u_[i];
    return rec_.eval(std::move(p));
  }

  // returns (t*, g(t*)) starting from the bracket seed step
  std::pair<double, double> minimize(double f0, double step = 0.1) {
    constexpr double kGold = 1.618033988749895;
    double a = 0, fa = f0;
    double b = step, fb = g(b);
    if (fb > fa) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    double c = b + kGold * (b - a), fc = g(c);
    int guard = 0;
    while (fc < fb && ++guard < 60) {
      const double d = c + kGold * (c - b);
      a = b;
      fa = fb;
      b = c;
      fb = fc;
      c = d;
      fc = g(c);
    }
    if (a > c) {
      std::swap(a, c);
      std::swap(fa, fc);
    }
    return brent(a, b, fb, c);
  }

 private:
  std::pair<double, double> brent(double a, double b, double fb, double c) {
    constexpr double kCGold = 0.3819660112501051;
    constexpr double kEps = 1e-12;
    double x = b, w = b, v = b;
    double fx = fb, fw = fb, fv = fb;
    double d = 0, e = 0;
    // loose line minima: Powell gains more from extra outer sweeps than
    // from polishing each 1-d minimum
    for (int iter = 0; iter < 60; ++iter) {
      const double xm = 0.5 * (a + c);
      const double tol1 = 1e-4 * std::abs(x) + kEps;
      const double tol2 = 2 * tol1;
      if (std::abs(x - xm) <= tol2 - 0.5 * (c - a)) break;
      bool golden = true;
      if (std::abs(e) > tol1) {
        const double r = (x - w) * (fx - fv);
        double q = (x - v) * (fx - fw);
        double p = (x - v) * q - (x - w) * r;
        q = 2 * (q - r);
        if (q > 0) p = -p;
        q = std::abs(q);
        const double etemp = e;
        e = d;
        if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
            p < q * (c - x)) {
          d = p / q;
          const double u = x + d;
          if (u - a < tol2 || c - u < tol2)
            d = std::copysign(tol1, xm - x);
          golden = false;
        }
      }
      if (golden) {
        e = (x >= xm) ? a - x : c - x;
        d = kCGold * e;
      }
      const double u =
          (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
      const double fu = g(u);
      if (fu <= fx) {
        if (u >= x)
          a = x;
        else
          c = x;
        v = w;
        fv = fw;
        w = x;
        fw = fx;
        x = u;
        fx = fu;
      } else {
        if (u < x)
          a = u;
        else
          c = u;
        if (fu <= fw || w == x) {
          v = w;
          fv = fw;
          w = u;
          fw = fu;
        } else if (fu <= fv || v == x || v == w) {
          v = u;
          fv = fu;
        }
      }
    }
    return {x, fx};
  }

  Recorder& rec_;
  const std::vector<double>& x_;
  const std::vector<double>& u_;
};

}  // namespace

OptimizeResult powell_minimize(const Objective& f, std::span<const double> x0,
                               const OptimizerConfig& cfg) {
  const size_t n = x0.size();
  cfg.validate(n);
  Recorder rec(f, cfg, n);
  std::vector<double> x(x0.begin(), x0.end());
  rec.clamp(x);

  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  try {
    double fx = rec.eval(x);
    if (n == 0) return rec.finish(false);
    for (int iter = 0; iter < 200; ++iter) {
      const double f_start = fx;
      const std::vector<double> x_start = x;
      double biggest_drop = 0;
      size_t biggest_dir = 0;
      for (size_t i = 0; i < n; ++i) {
        LineSearch ls(rec, x, dirs[i]);
        const auto [t, ft] = ls.minimize(fx);
        if (fx - ft > biggest_drop) {
          biggest_drop = fx - ft;
          biggest_dir = i;
        }
        for (size_t j = 0; j < n; ++j) x[j] += t * dirs[i][j];
        rec.clamp(x);
        fx = ft;
      }
      if (2 * (f_start - fx) <=
          cfg.f_tol * (std::abs(f_start) + std::abs(fx)) + 1e-20)
        return rec.finish(false);

      // direction replacement test (extrapolated point heuristic)
      std::vector<double> x_extra(n), new_dir(n);
      double dir_norm = 0;
      for (size_t j = 0; j < n; ++j) {
        new_dir[j] = x[j] - x_start[j];
        x_extra[j] = x[j] + new_dir[j];
        dir_norm += new_dir[j] * new_dir[j];
      }
      if (std::sqrt(dir_norm) < cfg.x_tol) return rec.finish(false);
      const double f_extra = rec.eval(x_extra);
      if (f_extra < f_start) {
        const double t1 = f_start - fx - biggest_drop;
        const double t2 = f_start - f_extra;
        if (2 * (f_start - 2 * fx + f_extra) * t1 * t1 <
            biggest_drop * t2 * t2) {
          LineSearch ls(rec, x, new_dir);
          const auto [t, ft] = ls.minimize(fx, 1.0);
          for (size_t j = 0; j < n; ++j) x[j] += t * new_dir[j];
          rec.clamp(x);
          fx = ft;
          dirs[biggest_dir] = dirs[n - 1];
          dirs[n - 1] = new_dir;
        }
      }
      if (rec.exhausted()) return rec.finish(true);
    }
  } catch (const BudgetExhausted&) {
    return rec.finish(true);
  }
  return rec.finish(false);
}

OptimizeResult nelder_mead_minimize(const Objective& f,
                                    std::span<const double> x0,
                                    const OptimizerConfig& cfg) {
  const size_t n = x0.size();
  cfg.validate(n);
  Recorder rec(f, cfg, n);
  if (n == 0) {
    rec.eval({});
    return rec.finish(false);
  }

  constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;
  constexpr double kStep = 0.1;  // initial simplex spread in radians

  std::vector<std::vector<double>> pts(n + 1,
                                       std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> fs(n + 1);
  try {
    for (size_t i = 0; i <= n; ++i) {
      if (i > 0) pts[i][i - 1] += kStep;
      fs[i] = rec.eval(pts[i]);
    }
    for (int iter = 0; iter < 100 * cfg.max_evaluations; ++iter) {
      // order simplex
      std::vector<size_t> order(n + 1);
      for (size_t i = 0; i <= n; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](size_t a, size_t b) { return fs[a] < fs[b]; });
      std::vector<std::vector<double>> spts(n + 1);
      std::vector<double> sfs(n + 1);
      for (size_t i = 0; i <= n; ++i) {
        spts[i] = pts[order[i]];
        sfs[i] = fs[order[i]];
      }
      pts = std::move(spts);
      fs = std::move(sfs);

      double size = 0;
      for (size_t i = 1; i <= n; ++i)
        for (size_t j = 0; j < n; ++j)
          size = std::max(size, std::abs(pts[i][j] - pts[0][j]));
      if (std::abs(fs[n] - fs[0]) <=
              cfg.f_tol * (std::abs(fs[0]) + std::abs(fs[n])) + 1e-20 &&
          size < cfg.x_tol)
        return rec.finish(false);
      if (rec.exhausted()) return rec.finish(true);

      std::vector<double> centroid(n, 0.0);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;

      auto blend = [&](double coeff) {
        std::vector<double> p(n);
        for (size_t j = 0; j < n; ++j)
          p[j] = centroid[j] + coeff * (pts[n][j] - centroid[j]);
        return p;
      };

      const auto reflected = blend(-kAlpha);
      const double fr = rec.eval(reflected);
      if (fr < fs[0]) {
        const auto expanded = blend(-kAlpha * kGamma);
        const double fe = rec.eval(expanded);
        if (fe < fr) {
          pts[n] = expanded;
          fs[n] = fe;
        } else {
          pts[n] = reflected;
          fs[n] = fr;
        }
        continue;
      }
      if (fr < fs[n - 1]) {
        pts[n] = reflected;
        fs[n] = fr;
        continue;
      }
      const auto contracted = blend(fr < fs[n] ? -kAlpha * kRho : kRho);
      const double fc = rec.eval(contracted);
      if (fc < std::min(fr, fs[n])) {
        pts[n] = contracted;
        fs[n] = fc;
        continue;
      }
      // shrink toward the best vertex
      for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 0; j < n; ++j)
          pts[i][j] = pts[0][j] + kSigma * (pts[i][j] - pts[0][j]);
        fs[i] = rec.eval(pts[i]);
      }
    }
  } catch (const BudgetExhausted&) {
    return rec.finish(true);
  }
  return rec.finish(false);
}

OptimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const OptimizerConfig& cfg) {
  return cfg.method == OptimizerConfig::Method::powell
             ? powell_minimize(f, x0, cfg)
             : nelder_mead_minimize(f, x0, cfg);
}

}  // namespace twirlzne
