// Copyright 2026 The switchgrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "switchgrade/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "switchgrade/error.hpp"
#include "switchgrade/quadrature.hpp"
#include "switchgrade/spectral.hpp"

namespace switchgrade {

std::string_view to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::product_search: return "product_search";
    case EstimateMethod::planar_angular: return "planar_angular";
    case EstimateMethod::extremal_certificate: return "extremal_certificate";
    case EstimateMethod::singleton: return "singleton";
  }
  return "unknown";
}

std::string_view to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::passed: return "passed";
    case ClauseStatus::failed: return "failed";
    case ClauseStatus::inapplicable: return "inapplicable";
  }
  return "unknown";
}

double LyapunovEstimate::value() const noexcept { return std::isfinite(upper) ? upper : lower; }

LyapunovEstimate lambda_singleton(const Mat& a) {
  LyapunovEstimate e;
  e.lower = e.upper = spectral_abscissa(a);
  e.method = EstimateMethod::singleton;
  return e;
}

LyapunovEstimate lambda_lower_product_search(const SwitchingSystem& sys, double horizon,
                                             const BeamOptions& options) {
  const auto found = search_products(sys, horizon, options);
  LyapunovEstimate e;
  e.lower = found.score > 0.0 ? std::log(found.score) / horizon : -std::numeric_limits<double>::infinity();
  e.method = EstimateMethod::product_search;
  e.budget.horizon = horizon;
  e.budget.grid_step = options.grid.step;
  e.budget.grid_size = options.grid.multiples.size();
  e.budget.beam = found.beam_used;
  e.witness = found.witness;
  e.low_confidence = found.low_confidence;
  return e;
}

double PolarField::Rates::operator()(double theta) const noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return one + cos2 * c * c + sin2 * s * s + sincos * s * c;
}

PolarField::PolarField(const SwitchingSystem& sys) {
  if (sys.dim() != 2) fail(Errc::method_inapplicable, "polar field needs planar generators");
  for (const auto& g : sys.generators()) {
    const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    rho_.push_back(Rates{0.0, a, d, b + c});
    omega_.push_back(Rates{0.0, c, -b, d - a});
  }
  constexpr int kGrid = 10000;
  for (std::size_t u = 0; u < omega_.size(); ++u) {
    for (int k = 0; k < kGrid; ++k) {
      const double theta = std::numbers::pi * k / kGrid;
      if (!(omega_[u](theta) > 0.0)) {
        fail(Errc::method_inapplicable,
             "generator " + std::to_string(u) + " does not rotate counterclockwise at every angle");
      }
    }
  }
}

double PolarField::gain(std::size_t u, double theta, double lambda) const {
  return (rho(u, theta) - lambda) / omega(u, theta);
}

std::size_t PolarField::best(double theta, double lambda) const {
  std::size_t arg = 0;
  double top = gain(0, theta, lambda);
  for (std::size_t u = 1; u < size(); ++u) {
    const double g = gain(u, theta, lambda);
    if (g > top) {
      top = g;
      arg = u;
    }
  }
  return arg;
}

std::vector<double> PolarField::switching_angles(double lambda) const {
  // Sign changes of the gap between the best and runner-up gains, located on
  // a grid and refined by bisection.
  std::vector<double> out;
  constexpr int kGrid = 20000;
  auto winner = [&](double t) { return best(t, lambda); };
  std::size_t prev = winner(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double hi_t = std::numbers::pi * k / kGrid;
    const std::size_t now = winner(hi_t);
    if (now != prev) {
      double lo = std::numbers::pi * (k - 1) / kGrid;
      double hi = hi_t;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (winner(mid) == prev) lo = mid;
        else hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      if (root < std::numbers::pi) out.push_back(root);
      prev = now;
    }
  }
  return out;
}

double angular_objective(const PolarField& field, double lambda, const AngularOptions& options) {
  auto f = [&](double theta) {
    double top = field.gain(0, theta, lambda);
    for (std::size_t u = 1; u < field.size(); ++u) top = std::max(top, field.gain(u, theta, lambda));
    return top;
  };
  // The maximum has kinks at the switching angles; Simpson runs on each
  // smooth piece separately.
  std::vector<double> cuts{0.0};
  for (double a : field.switching_angles(lambda)) {
    if (a > cuts.back()) cuts.push_back(a);
  }
  if (cuts.back() < std::numbers::pi) cuts.push_back(std::numbers::pi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = (cuts[i + 1] - cuts[i]) / std::numbers::pi * options.intervals;
    const int n = 2 * std::max(1, static_cast<int>(std::ceil(share / 2.0)));
    total += simpson(f, cuts[i], cuts[i + 1], n, options.execution);
  }
  return 2.0 * total;
}

double angular_objective(const PolarField& field, double lambda,
                         const std::function<std::size_t(double)>& policy,
                         const AngularOptions& options) {
  auto f = [&](double theta) { return field.gain(policy(theta), theta, lambda); };
  return 2.0 * simpson(f, 0.0, std::numbers::pi, options.intervals, options.execution);
}

LyapunovEstimate lambda_planar_angular(const SwitchingSystem& sys, const AngularOptions& options) {
  const PolarField field(sys);
  if (options.intervals < 2 || options.intervals % 2 != 0) {
    fail(Errc::invalid_input, "angular method needs an even number of Simpson intervals");
  }
  // F(lambda) >= 0 below every radial rate and <= 0 above all of them.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t u = 0; u < field.size(); ++u) {
    for (int k = 0; k <= 1000; ++k) {
      const double r = field.rho(u, std::numbers::pi * k / 1000);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  lo -= 1.0;
  hi += 1.0;
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (angular_objective(field, mid, options) > 0.0) lo = mid;
    else hi = mid;
  }
  LyapunovEstimate e;
  e.lower = e.upper = 0.5 * (lo + hi);
  e.method = EstimateMethod::planar_angular;
  e.budget.quadrature_intervals = options.intervals;
  e.budget.bisection_tolerance = options.tolerance;
  return e;
}

namespace {

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

}  // namespace

std::vector<Vec> sphere_samples(int dim, int count) {
  if (dim < 1 || dim > kMaxDim) fail(Errc::dimension, "sphere_samples: unsupported dimension");
  if (count < 1) fail(Errc::invalid_input, "sphere_samples: count must be positive");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 1) {
    for (int k = 0; k < count; ++k) out.push_back(Vec{k % 2 == 0 ? 1.0 : -1.0});
    return out;
  }
  if (dim == 2) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < count; ++k) {
      const double frac = std::fmod((k + 0.5) * golden, 1.0);
      const double theta = 2.0 * std::numbers::pi * frac;
      out.push_back(Vec{std::cos(theta), std::sin(theta)});
    }
    return out;
  }
  // Box-Muller on Halton points, then normalize.
  static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  for (int k = 0; k < count; ++k) {
    Vec v(dim);
    const auto index = static_cast<std::uint64_t>(k) + 1;
    for (int i = 0; i < dim; i += 2) {
      const double u1 = radical_inverse(index, kPrimes[i]);
      const double u2 = radical_inverse(index, kPrimes[i + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0.5));
      v[i] = r * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < dim) v[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    v *= 1.0 / norm2(v);
    out.push_back(v);
  }
  return out;
}

ExtremalReport lambda_upper_extremal(const SwitchingSystem& sys, const NormFn& norm, double mu,
                                     int samples, const ExtremalOptions& options) {
  if (!(options.dt > 0.0) || !(options.t_max > 0.0)) fail(Errc::invalid_input, "extremal check: bad time grid");
  const auto steps = static_cast<int>(std::llround(options.t_max / options.dt));
  const auto points = sphere_samples(sys.dim(), samples);

  ExtremalReport report;
  report.mu = mu;
  report.samples = samples;
  report.max_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    std::vector<Mat> flows;
    flows.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) flows.push_back(expm(sys[i], k * options.dt));
    for (const auto& v : points) {
      double prev = norm(v);
      for (int k = 1; k <= steps; ++k) {
        const double t = k * options.dt;
        const double now = std::exp(-mu * t) * norm(flows[static_cast<std::size_t>(k)] * v);
        const double inc = now - prev;
        if (inc > report.max_increase) {
          report.max_increase = inc;
          if (inc > options.slack) report.witness = ExtremalWitness{i, v, t - options.dt, t, inc};
        }
        prev = now;
      }
    }
  }
  report.pass = report.max_increase <= options.slack;
  report.estimate.method = EstimateMethod::extremal_certificate;
  report.estimate.budget.samples = samples;
  report.estimate.budget.horizon = options.t_max;
  if (report.pass) report.estimate.upper = mu;
  return report;
}

LyapunovEstimate estimate_exponent(const SwitchingSystem& sys, double horizon, const BeamOptions& options) {
  if (sys.size() == 1) return lambda_singleton(sys[0]);
  if (sys.dim() == 2 && sys.size() == 2) {
    try {
      return lambda_planar_angular(sys);
    } catch (const Error& e) {
      if (e.code() != Errc::method_inapplicable) throw;
    }
  }
  return lambda_lower_product_search(sys, horizon, options);
}

BeamOptions calculus_beam() {
  BeamOptions o;
  o.grid = DurationGrid::uniform(std::numbers::pi / 16.0, 16);
  o.beam = 8;
  return o;
}

bool CalculusReport::pass() const noexcept {
  return subset.status != ClauseStatus::failed && union_max.status != ClauseStatus::failed &&
         sum_bound.status != ClauseStatus::failed;
}

CalculusReport lambda_calculus_checks(const SwitchingSystem& sys_a, const SwitchingSystem& sys_b,
                                      const CalculusOptions& options) {
  if (sys_a.dim() != sys_b.dim()) fail(Errc::dimension, "calculus checks: systems differ in dimension");
  CalculusReport r;
  r.commuting = true;
  for (const auto& a : sys_a.generators()) {
    for (const auto& b : sys_b.generators()) {
      const double scale = std::max(1.0, opnorm(a) * opnorm(b));
      if (max_abs_diff(a * b, b * a) > options.commute_tolerance * scale) r.commuting = false;
    }
  }

  std::vector<Mat> joined(sys_a.generators());
  joined.insert(joined.end(), sys_b.generators().begin(), sys_b.generators().end());
  const SwitchingSystem union_sys(joined, "union");

  r.a = estimate_exponent(sys_a, options.horizon, options.beam);
  r.b = estimate_exponent(sys_b, options.horizon, options.beam);
  r.union_hull = estimate_exponent(union_sys, options.horizon, options.beam);

  r.subset.lhs = std::max(r.a.lower, r.b.lower);
  r.subset.rhs = r.union_hull.value();
  r.subset.status = r.subset.lhs <= r.subset.rhs + options.slack ? ClauseStatus::passed : ClauseStatus::failed;

  if (!r.commuting) return r;

  std::vector<Mat> sums;
  for (const auto& a : sys_a.generators())
    for (const auto& b : sys_b.generators()) sums.push_back(a + b);
  r.sum_hull = estimate_exponent(SwitchingSystem(sums, "sum"), options.horizon, options.beam);

  r.union_max.lhs = r.union_hull.value();
  r.union_max.rhs = std::max(r.a.value(), r.b.value());
  r.union_max.status = std::abs(r.union_max.lhs - r.union_max.rhs) <= options.slack ? ClauseStatus::passed
                                                                                     : ClauseStatus::failed;
  r.sum_bound.lhs = r.sum_hull.lower;
  r.sum_bound.rhs = r.a.value() + r.b.value();
  r.sum_bound.status =
      r.sum_bound.lhs <= r.sum_bound.rhs + options.slack ? ClauseStatus::passed : ClauseStatus::failed;
  return r;
}

}  // namespace switchgrade
