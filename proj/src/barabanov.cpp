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

#include "switchgrade/barabanov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "switchgrade/catalog.hpp"
#include "switchgrade/error.hpp"
#include "switchgrade/quadrature.hpp"

namespace switchgrade {

SupResult spiral_sup(const Mat& m, const Vec& v) {
  if (m.dim() != 2 || v.dim() != 2) fail(Errc::dimension, "spiral_sup: planar input required");
  const double a = 0.5 * m.trace();
  const Mat n = m - a * Mat::identity(2);
  const double b2 = n(0, 0) * n(1, 1) - n(0, 1) * n(1, 0);
  if (!(a < 0.0) || !(b2 > 0.0)) fail(Errc::invalid_input, "spiral_sup: needs a stable spiral");
  const double b = std::sqrt(b2);
  const double p = v[0];
  const double q = (n(0, 0) * v[0] + n(0, 1) * v[1]) / b;
  SupResult best{std::abs(p), 0.0};
  double c = a * p + b * q;
  double s = a * q - b * p;
  if (c == 0.0 && s == 0.0) return best;
  // The critical time only matters mod pi/b; fixing the sign makes v and -v
  // take bit-identical paths.
  if (s < 0.0 || (s == 0.0 && c > 0.0)) {
    c = -c;
    s = -s;
  }
  double phi = std::atan2(-c, s);
  if (phi < 0.0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  const double t = phi / b;
  const double value = std::abs(std::exp(a * t) * (p * std::cos(phi) + q * std::sin(phi)));
  if (value > best.value) best = SupResult{value, t};
  return best;
}

SupResult norm_A_sup(const Vec& v) { return spiral_sup(catalog::A1(), v); }

double norm_A(const Vec& v) { return norm_A_sup(v).value; }

double norm_cgm(const Vec& v, double alpha) { return spiral_sup(catalog::cgm_M1(alpha), v).value; }

PolarTable::PolarTable(std::vector<double> nodes, std::vector<double> log_radius, std::vector<double> slope)
    : nodes_(std::move(nodes)), log_radius_(std::move(log_radius)), slope_(std::move(slope)) {
  if (nodes_.size() < 2 || nodes_.size() != log_radius_.size() || nodes_.size() != slope_.size()) {
    fail(Errc::invalid_input, "polar table: node, radius and slope counts differ");
  }
  if (nodes_.front() != 0.0 || std::abs(nodes_.back() - std::numbers::pi) > 1e-12) {
    fail(Errc::invalid_input, "polar table: nodes must span [0, pi]");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) fail(Errc::invalid_input, "polar table: nodes must increase");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(log_radius_[i]) || !std::isfinite(slope_[i])) {
      fail(Errc::invalid_input, "polar table: non-finite entry");
    }
  }
}

double PolarTable::log_radius_at(double theta) const {
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
  const double h = nodes_[i + 1] - nodes_[i];
  const double s = (t - nodes_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * log_radius_[i] + h10 * h * slope_[i] + h01 * log_radius_[i + 1] + h11 * h * slope_[i + 1];
}

double PolarTable::radius(double theta) const { return std::exp(log_radius_at(theta)); }

ExtremalRevolution extremal_revolution(const SwitchingSystem& sys_b) {
  const PolarField field(sys_b);
  ExtremalRevolution rev;
  rev.switching_angles = field.switching_angles(0.0);
  std::vector<double> cuts{0.0};
  for (double a : rev.switching_angles) {
    if (a > 0.0) cuts.push_back(a);
  }
  cuts.push_back(std::numbers::pi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    rev.arc_generator.push_back(field.best(0.5 * (cuts[i] + cuts[i + 1]), 0.0));
  }

  rev.schedule = Schedule(sys_b.size());
  std::size_t current = rev.arc_generator.front();
  double pending = 0.0;
  for (int half = 0; half < 2; ++half) {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const std::size_t u = rev.arc_generator[i];
      const double lo = cuts[i] + half * std::numbers::pi;
      const double hi = cuts[i + 1] + half * std::numbers::pi;
      const double dt = integrate_adaptive([&](double th) { return 1.0 / field.omega(u, th); }, lo, hi, 1e-14);
      if (u != current) {
        rev.schedule.append_vertex(pending, current);
        current = u;
        pending = 0.0;
      }
      pending += dt;
    }
  }
  rev.schedule.append_vertex(pending, current);
  rev.period = rev.schedule.total_duration();
  const Vec y0{1.0, 0.0};
  const Vec y1 = flow_product(sys_b, rev.schedule) * y0;
  rev.return_error = norm2(y1 - y0);
  return rev;
}

PolarBuild norm_B_build(const SwitchingSystem& sys_b, int resolution, double closure_tolerance) {
  if (resolution < 4 || resolution % 2 != 0) fail(Errc::invalid_input, "polar table resolution must be even and >= 4");
  const PolarField field(sys_b);
  const auto angles = field.switching_angles(0.0);
  auto growth = [&](double th) {
    double top = field.gain(0, th, 0.0);
    for (std::size_t u = 1; u < field.size(); ++u) top = std::max(top, field.gain(u, th, 0.0));
    return top;
  };

  const int half = resolution / 2;
  std::vector<double> nodes;
  for (int k = 0; k <= half; ++k) {
    const double th = std::numbers::pi * k / half;
    const bool near_switch = std::any_of(angles.begin(), angles.end(), [&](double a) {
      return std::abs(a - th) < 1e-9;
    });
    if (!near_switch || k == 0 || k == half) nodes.push_back(th);
  }
  for (double a : angles) {
    if (a > 1e-9 && a < std::numbers::pi - 1e-9) nodes.push_back(a);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.back() = std::numbers::pi;

  std::vector<double> log_r(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    log_r[i] = log_r[i - 1] + integrate_adaptive(growth, nodes[i - 1], nodes[i], 1e-15);
  }
  const double drift = log_r.back();
  PolarBuild out{PolarTable({0.0, std::numbers::pi}, {0.0, 0.0}, {0.0, 0.0}), 2.0 * drift, {}};
  if (!(std::abs(out.closure) <= closure_tolerance)) {
    fail(Errc::lambda_inconsistency,
         "polar table does not close: log R(2 pi) - log R(0) = " + std::to_string(out.closure));
  }
  // Remove the residual drift so that R is exactly pi-periodic.
  std::vector<double> slope(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    log_r[i] -= drift * nodes[i] / std::numbers::pi;
    slope[i] = growth(nodes[i]) - drift / std::numbers::pi;
  }
  log_r.back() = 0.0;
  out.table = PolarTable(std::move(nodes), std::move(log_r), std::move(slope));
  out.revolution = extremal_revolution(sys_b);
  return out;
}

NormFn tensor_potential(const PolarTable& b_table) {
  return [table = std::make_shared<const PolarTable>(b_table)](const Vec& z) {
    // z = vec of the 2x2 matrix Z = x y^T; the top eigenpair of Z^T Z gives
    // sigma and the direction of y.
    const double p = z[0] * z[0] + z[2] * z[2];
    const double q = z[0] * z[1] + z[2] * z[3];
    const double r = z[1] * z[1] + z[3] * z[3];
    const double mu = 0.5 * (p + r) + std::hypot(0.5 * (p - r), q);
    if (!(mu > 0.0)) return 0.0;
    double y0 = q, y1 = mu - p;
    if (std::abs(mu - r) + std::abs(q) > std::abs(y0) + std::abs(y1)) {
      y0 = mu - r;
      y1 = q;
    }
    if (y0 == 0.0 && y1 == 0.0) y0 = 1.0;
    return std::sqrt(mu) / table->radius(std::atan2(y1, y0));
  };
}

BeamOptions x_norm_budget(const PolarTable& b_table, int beam) {
  BeamOptions o;
  o.beam = beam;
  o.merge_tolerance = 1e-2;
  o.potential = tensor_potential(b_table);
  return o;
}

double norm_X_finite_horizon(const SwitchingSystem& sys_x, const Vec& z, double horizon,
                             const BeamOptions& budget, bool* low_confidence) {
  if (!(horizon > 0.0) || horizon > 200.0) fail(Errc::invalid_input, "finite-horizon norm needs 0 < T <= 200");
  if (z.dim() != sys_x.dim()) fail(Errc::dimension, "finite-horizon norm: dimension mismatch");
  double peak = 0.0;
  for (double x : z.entries()) peak = std::max(peak, std::abs(x));
  if (low_confidence) *low_confidence = false;
  if (peak == 0.0) return 0.0;
  // Rescale by a power of two so that N(2^k z) = 2^k N(z) holds bit for bit.
  int e = 0;
  std::frexp(peak, &e);
  Vec scaled = z;
  for (double& x : scaled.entries()) x = std::ldexp(x, -e);
  const auto found = search_endpoints(sys_x, scaled, horizon, budget);
  if (low_confidence) *low_confidence = found.low_confidence;
  return std::ldexp(found.score, e);
}

std::string_view to_string(NormModel::Kind k) {
  switch (k) {
    case NormModel::Kind::closed_form_A: return "closed_form_A";
    case NormModel::Kind::polar_table: return "polar_table";
    case NormModel::Kind::finite_horizon: return "finite_horizon";
    case NormModel::Kind::euclidean: return "euclidean";
  }
  return "unknown";
}

NormModel NormModel::euclidean(int dim) {
  if (dim < 1 || dim > kMaxDim) fail(Errc::dimension, "euclidean norm: unsupported dimension");
  return NormModel(Kind::euclidean, dim);
}

NormModel NormModel::closed_form_A() { return NormModel(Kind::closed_form_A, 2); }

NormModel NormModel::polar(PolarTable table) {
  NormModel m(Kind::polar_table, 2);
  m.table_ = std::make_shared<const PolarTable>(std::move(table));
  return m;
}

NormModel NormModel::finite_horizon(SwitchingSystem sys, double horizon, BeamOptions budget) {
  if (!(horizon > 0.0) || horizon > 200.0) fail(Errc::invalid_input, "finite-horizon norm needs 0 < T <= 200");
  NormModel m(Kind::finite_horizon, sys.dim());
  m.horizon_ = horizon;
  m.finite_ = std::make_shared<const FiniteHorizon>(FiniteHorizon{std::move(sys), std::move(budget)});
  return m;
}

double NormModel::operator()(const Vec& v) const {
  if (v.dim() != dim_) fail(Errc::dimension, "norm: vector dimension does not match the model");
  switch (kind_) {
    case Kind::euclidean: return norm2(v);
    case Kind::closed_form_A: return norm_A(v);
    case Kind::polar_table: {
      const double r = norm2(v);
      if (r == 0.0) return 0.0;
      return r / table_->radius(std::atan2(v[1], v[0]));
    }
    case Kind::finite_horizon: {
      bool low = false;
      const double value = norm_X_finite_horizon(finite_->sys, v, horizon_, finite_->budget, &low);
      if (low) *low_confidence_ = true;
      return value;
    }
  }
  return 0.0;
}

bool NormModel::low_confidence() const noexcept { return *low_confidence_; }

const PolarTable* NormModel::table() const noexcept { return table_.get(); }

const BeamOptions* NormModel::budget() const noexcept { return finite_ ? &finite_->budget : nullptr; }

NormFn NormModel::as_function() const {
  return [model = *this](const Vec& v) { return model(v); };
}

FlatnessReport flatness_check(const NormModel& norm, double u1, const Vec& v, int samples,
                              double sphere_tolerance) {
  if (samples < 1) fail(Errc::invalid_input, "flatness_check: samples must be positive");
  if (norm.dim() != 4 && norm.dim() != 2) fail(Errc::dimension, "flatness_check: norm must be planar or 4D");
  if (norm.dim() == 4 && v.dim() != 2) fail(Errc::dimension, "flatness_check: v must be planar");
  auto point = [&](double u2) { return norm.dim() == 4 ? kron(Vec{u1, u2}, v) : Vec{u1, u2}; };

  FlatnessReport r;
  const double w = std::abs(u1);
  for (int k = 0; k < samples; ++k) {
    r.u2.push_back(samples == 1 ? 0.0 : -w + 2.0 * w * k / (samples - 1));
  }
  r.reference = norm(point(0.0));
  for (double u2 : r.u2) {
    const double value = norm(point(u2));
    r.values.push_back(value);
    if (r.reference > 0.0) {
      r.max_relative_deviation = std::max(r.max_relative_deviation, std::abs(value - r.reference) / r.reference);
    }
  }
  if (r.reference > 0.0) {
    const Vec lo = point(-w);
    const Vec hi = point(w);
    r.endpoint_low = norm(lo) / r.reference;
    r.endpoint_high = norm(hi) / r.reference;
    r.midpoint = norm(0.5 * (lo + hi)) / r.reference;
    r.segment_on_sphere = w > 0.0 && std::abs(r.endpoint_low - 1.0) <= sphere_tolerance &&
                          std::abs(r.endpoint_high - 1.0) <= sphere_tolerance &&
                          std::abs(r.midpoint - 1.0) <= sphere_tolerance;
  }
  return r;
}

double cgm_g(double alpha, double t_max) {
  const Mat m = catalog::cgm_M1(alpha);
  const Vec x0{-1.0, 0.0};
  auto first = [&](double t) { return (expm(m, t) * x0)[0]; };
  auto slope = [&](double t) { return (m * (expm(m, t) * x0))[0]; };
  constexpr double kStep = 1e-2;
  const int n = static_cast<int>(std::ceil(t_max / kStep));
  double best = first(t_max);
  double prev_t = 0.0;
  double prev_s = slope(0.0);
  for (int k = 1; k <= n; ++k) {
    const double t = std::min(t_max, k * kStep);
    const double s = slope(t);
    if (prev_s > 0.0 && s <= 0.0) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) lo = mid;
        else hi = mid;
      }
      best = std::max(best, first(0.5 * (lo + hi)));
    }
    prev_t = t;
    prev_s = s;
  }
  return best;
}

double cgm_alpha(double tolerance) {
  double lo = -1.0, hi = -0.8;
  if (!(cgm_g(lo) < 1.0 && cgm_g(hi) > 1.0)) {
    bool found = false;
    double prev = -2.0;
    double prev_g = cgm_g(prev) - 1.0;
    for (int k = 1; k <= 40 && !found; ++k) {
      const double a = -2.0 + 0.05 * k;
      const double ga = cgm_g(a) - 1.0;
      if ((prev_g < 0.0) != (ga < 0.0)) {
        lo = prev_g < 0.0 ? prev : a;
        hi = prev_g < 0.0 ? a : prev;
        found = true;
      }
      prev = a;
      prev_g = ga;
    }
    if (!found) fail(Errc::configuration, "cgm_alpha: no bracket for g(alpha) = 1 in [-2, 0]");
  }
  while (std::abs(hi - lo) > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (cgm_g(mid) < 1.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

LimitReport x_limit_behavior(const MeasurableLaw& law, const Vec& x0, const LimitOptions& options) {
  if (law.width() != 2) fail(Errc::invalid_input, "x_limit_behavior: law must have two weights");
  if (x0.dim() != 2) fail(Errc::dimension, "x_limit_behavior: planar start required");
  if (!(options.horizon > 0.0) || !(options.window > 0.0)) fail(Errc::invalid_input, "x_limit_behavior: bad horizon");
  const auto sys = catalog::system_A();
  const auto windows = static_cast<std::uint64_t>(std::ceil(0.5 * options.horizon / options.window));
  // Two halves, so the second coordinate can be compared midway.
  const auto first = chatter_discretize(law, 0.5 * options.horizon, windows);
  const MeasurableLaw later(2, [&](double t, std::span<double> w) { law(t + 0.5 * options.horizon, w); });
  const auto second = chatter_discretize(later, 0.5 * options.horizon, windows);

  LimitReport r;
  const Vec mid = evolve_endpoint(sys, first, x0);
  r.limit = evolve_endpoint(sys, second, mid);
  r.second_coordinate = r.limit[1];
  r.second_coordinate_midway = mid[1];
  auto alpha = [&](double t, std::span<double> out) {
    double w[2];
    law(t, std::span<double>(w, 2));
    out[0] = w[1];
  };
  r.alpha_integral = integrate_adaptive(alpha, 1, 0.0, options.horizon).value[0];
  r.alpha_tail = integrate_adaptive(alpha, 1, 0.5 * options.horizon, options.horizon).value[0];
  const double scale = norm2(x0);
  r.limit_nonzero = norm2(r.limit) > 1e-6 * scale;
  // Settling on the axis: y is at roundoff level or still shrinking.
  const bool on_axis = std::abs(r.second_coordinate) <= std::max(1e-6 * scale, 0.5 * std::abs(mid[1]));
  r.consistent = on_axis && (!r.limit_nonzero || r.alpha_tail <= 0.5 * r.alpha_integral);
  return r;
}

}  // namespace switchgrade
