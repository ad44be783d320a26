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

// Extremal and Barabanov norms: the closed-form planar norm, polar tables
// built from extremal revolutions, the finite-horizon 4D surrogate, the
// flatness detector and the tangency constant of the non-strictly-convex
// planar example.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "switchgrade/beam_search.hpp"
#include "switchgrade/lyapunov.hpp"
#include "switchgrade/matexp.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade {

struct SupResult {
  double value = 0.0;
  /// A maximizing time in [0, pi/b).
  double argmax = 0.0;
};

/// sup over t >= 0 of |(e^{tM} v)_1| for a planar M with eigenvalues a +- ib,
/// a < 0, b > 0. Since e^{(t + pi/b)M} = -e^{a pi/b} e^{tM}, the supremum is
/// attained on [0, pi/b), at t = 0 or at the single critical point there.
SupResult spiral_sup(const Mat& m, const Vec& v);

/// sup over tau >= 0 of |e^{-tau}(v1 cos tau + v2 sin tau)|.
double norm_A(const Vec& v);
SupResult norm_A_sup(const Vec& v);

/// The same construction for the pair {diag(0,-1), [[alpha,3],[-3/5,7/10]]}.
double norm_cgm(const Vec& v, double alpha);

/// log R(theta) on [0, pi] for a rotation pair whose top exponent is zero;
/// R(theta + pi) = R(theta). Evaluated by cubic Hermite interpolation with
/// exact slopes; the switching angles of the extremal control are nodes, so
/// every interval sees a smooth integrand.
class PolarTable {
 public:
  PolarTable(std::vector<double> nodes, std::vector<double> log_radius, std::vector<double> slope);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& log_radius() const noexcept { return log_radius_; }
  const std::vector<double>& slope() const noexcept { return slope_; }

  /// R(theta) for any real theta.
  double radius(double theta) const;
  double log_radius_at(double theta) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> log_radius_;
  std::vector<double> slope_;
};

/// One revolution of the extremal trajectory starting on the positive first
/// axis, as a vertex schedule.
struct ExtremalRevolution {
  Schedule schedule{1};
  std::vector<double> switching_angles;
  /// Generator used on each arc between consecutive switching angles of [0, pi).
  std::vector<std::size_t> arc_generator;
  double period = 0.0;
  /// |y(period) - y(0)| / |y(0)|.
  double return_error = 0.0;
};

ExtremalRevolution extremal_revolution(const SwitchingSystem& sys_b);

struct PolarBuild {
  PolarTable table;
  /// log R(2 pi) - log R(0) before the drift is removed.
  double closure = 0.0;
  ExtremalRevolution revolution;
};

class NormModel {
 public:
  enum class Kind { closed_form_A, polar_table, finite_horizon, euclidean };

  static NormModel euclidean(int dim);
  static NormModel closed_form_A();
  static NormModel polar(PolarTable table);
  /// N_T(z): the largest endpoint norm beam search finds over vertex
  /// schedules of duration T started at z.
  static NormModel finite_horizon(SwitchingSystem sys, double horizon, BeamOptions budget);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double operator()(const Vec& v) const;
  /// Set after a finite-horizon evaluation that ran out of budget.
  bool low_confidence() const noexcept;

  const PolarTable* table() const noexcept;
  double horizon() const noexcept { return horizon_; }
  const BeamOptions* budget() const noexcept;

  NormFn as_function() const;

 private:
  struct FiniteHorizon {
    SwitchingSystem sys;
    BeamOptions budget;
  };

  NormModel(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  double horizon_ = 0.0;
  std::shared_ptr<const PolarTable> table_;
  std::shared_ptr<const FiniteHorizon> finite_;
  std::shared_ptr<bool> low_confidence_ = std::make_shared<bool>(false);
};

std::string_view to_string(NormModel::Kind k);

/// Polar table for the shifted rotation pair. Raises
/// Errc::lambda_inconsistency when |log R(2 pi) - log R(0)| exceeds
/// closure_tolerance, which happens exactly when the pair's exponent is not 0.
PolarBuild norm_B_build(const SwitchingSystem& sys_b, int resolution = 4096,
                        double closure_tolerance = 1e-6);

/// Ranking potential for states of the 4D system. A rank-one state
/// z = x (x) y scores |x| * |||y|||_B, where the second factor is the polar
/// table norm; a general z is scored through its top singular pair.
NormFn tensor_potential(const PolarTable& b_table);

/// Search budget for N_T: the given beam, merge tolerance 1e-2 and the
/// tensor potential.
BeamOptions x_norm_budget(const PolarTable& b_table, int beam = 64);

/// N_T(z) for the 4D system; T must lie in (0, 200].
double norm_X_finite_horizon(const SwitchingSystem& sys_x, const Vec& z, double horizon,
                             const BeamOptions& budget, bool* low_confidence = nullptr);

struct FlatnessReport {
  std::vector<double> u2;
  std::vector<double> values;
  double reference = 0.0;
  double max_relative_deviation = 0.0;
  /// Norms of the two extreme points and of their midpoint, each divided by
  /// the reference value.
  double endpoint_low = 0.0;
  double endpoint_high = 0.0;
  double midpoint = 0.0;
  bool segment_on_sphere = false;
};

/// Evaluates the norm at (u1, u2) (x) v for u2 on a uniform grid of
/// [-|u1|, |u1|] and compares with u2 = 0. A planar norm is evaluated at
/// (u1, u2) directly and v is ignored.
FlatnessReport flatness_check(const NormModel& norm, double u1, const Vec& v, int samples,
                              double sphere_tolerance = 1e-2);

/// g(alpha) = max over t in (0, t_max] of the first coordinate of
/// e^{t M1(alpha)} (-1, 0).
double cgm_g(double alpha, double t_max = 20.0);

/// The root of g(alpha) = 1, bracketed in [-2, 0].
double cgm_alpha(double tolerance = 1e-13);

struct LimitOptions {
  double horizon = 100.0;
  double window = 1e-3;
};

struct LimitReport {
  Vec limit;
  double second_coordinate = 0.0;
  double second_coordinate_midway = 0.0;
  double alpha_integral = 0.0;
  /// Integral of alpha over the second half of the horizon.
  double alpha_tail = 0.0;
  bool limit_nonzero = false;
  bool consistent = false;
};

/// Runs the system A under a two-state law (weights (1 - alpha, alpha)) to
/// the horizon and checks the limit dichotomy: the state settles on the
/// horizontal axis, and a nonzero limit comes with a finite alpha integral.
LimitReport x_limit_behavior(const MeasurableLaw& law, const Vec& x0, const LimitOptions& options = {});

}  // namespace switchgrade
