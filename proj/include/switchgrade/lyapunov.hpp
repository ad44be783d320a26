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

// Estimates of the top Lyapunov exponent of a switching system.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "switchgrade/beam_search.hpp"
#include "switchgrade/matexp.hpp"
#include "switchgrade/parallel.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade {

enum class EstimateMethod { product_search, planar_angular, extremal_certificate, singleton };

std::string_view to_string(EstimateMethod m);

/// Parameters an estimate was produced with; fields a method does not use
/// stay zero.
struct SearchBudget {
  double horizon = 0.0;
  double grid_step = 0.0;
  std::size_t grid_size = 0;
  int beam = 0;
  int quadrature_intervals = 0;
  double bisection_tolerance = 0.0;
  int samples = 0;
};

struct LyapunovEstimate {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  EstimateMethod method = EstimateMethod::singleton;
  SearchBudget budget;
  std::vector<BeamStep> witness;
  bool low_confidence = false;

  /// upper when finite, otherwise lower.
  double value() const noexcept;
};

LyapunovEstimate lambda_singleton(const Mat& a);

/// (1/T) log of the best product norm found by search_products.
LyapunovEstimate lambda_lower_product_search(const SwitchingSystem& sys, double horizon,
                                             const BeamOptions& options = {});

/// Radial and angular rates of x' = Ax in polar form, per generator:
///   rho(theta)   = r'/r
///   omega(theta) = theta'
/// stored as coefficients of {1, cos^2, sin^2, sin cos}.
class PolarField {
 public:
  struct Rates {
    double one = 0.0;
    double cos2 = 0.0;
    double sin2 = 0.0;
    double sincos = 0.0;
    double operator()(double theta) const noexcept;
  };

  /// Requires dimension 2 and omega > 0 for every generator on a 10^4 point
  /// grid of [0, pi); otherwise Errc::method_inapplicable.
  explicit PolarField(const SwitchingSystem& sys);

  std::size_t size() const noexcept { return rho_.size(); }
  double rho(std::size_t u, double theta) const { return rho_.at(u)(theta); }
  double omega(std::size_t u, double theta) const { return omega_.at(u)(theta); }
  const Rates& rho_rates(std::size_t u) const { return rho_.at(u); }
  const Rates& omega_rates(std::size_t u) const { return omega_.at(u); }

  /// (rho_u - lambda) / omega_u: log-radius gain per radian under generator u.
  double gain(std::size_t u, double theta, double lambda) const;
  /// Generator with the largest gain; ties go to the lower index.
  std::size_t best(double theta, double lambda) const;
  /// Angles in [0, pi) where the best generator changes.
  std::vector<double> switching_angles(double lambda) const;

 private:
  std::vector<Rates> rho_;
  std::vector<Rates> omega_;
};

struct AngularOptions {
  /// Simpson subintervals on [0, pi].
  int intervals = 1 << 14;
  double tolerance = 1e-10;
  Execution execution = Execution::serial;
};

/// F(lambda): integral over one revolution of max_u gain(u, theta, lambda).
double angular_objective(const PolarField& field, double lambda, const AngularOptions& options = {});

/// F(lambda) with the inner maximum replaced by a fixed policy theta -> u,
/// evaluated on [0, pi) and extended by pi-periodicity.
double angular_objective(const PolarField& field, double lambda,
                         const std::function<std::size_t(double)>& policy,
                         const AngularOptions& options = {});

/// The root of F by bisection; lower = upper = root.
LyapunovEstimate lambda_planar_angular(const SwitchingSystem& sys, const AngularOptions& options = {});

using NormFn = std::function<double(const Vec&)>;

/// Deterministic low-discrepancy points on the unit sphere of R^dim.
std::vector<Vec> sphere_samples(int dim, int count);

struct ExtremalOptions {
  double t_max = 5.0;
  double dt = 1e-2;
  double slack = 1e-9;
};

struct ExtremalWitness {
  std::size_t generator = 0;
  Vec v;
  double t0 = 0.0;
  double t1 = 0.0;
  double increase = 0.0;
};

struct ExtremalReport {
  bool pass = false;
  double mu = 0.0;
  int samples = 0;
  /// Largest one-step increase of e^{-mu t} norm(e^{t A_i} v) observed.
  double max_increase = 0.0;
  std::optional<ExtremalWitness> witness;
  /// upper = mu on pass.
  LyapunovEstimate estimate;
};

/// Checks that t -> e^{-mu t} norm(e^{t A_i} v) is non-increasing on a time
/// grid for every generator and sampled unit vector.
ExtremalReport lambda_upper_extremal(const SwitchingSystem& sys, const NormFn& norm, double mu,
                                     int samples, const ExtremalOptions& options = {});

/// Picks the sharpest applicable method: singleton, planar angular, else
/// product search with the given horizon and beam options.
LyapunovEstimate estimate_exponent(const SwitchingSystem& sys, double horizon,
                                   const BeamOptions& options = {});

enum class ClauseStatus { passed, failed, inapplicable };

std::string_view to_string(ClauseStatus s);

struct CalculusClause {
  ClauseStatus status = ClauseStatus::inapplicable;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// pi/16 * j for j = 1..16, beam 8.
BeamOptions calculus_beam();

struct CalculusOptions {
  /// Product-search overshoot of the union hull is about 0.13/T, so T = 40
  /// keeps it inside the default slack.
  double horizon = 40.0;
  /// Product-search budget for systems no sharper method applies to.
  BeamOptions beam = calculus_beam();
  double slack = 5e-3;
  double commute_tolerance = 1e-12;
};

struct CalculusReport {
  LyapunovEstimate a;
  LyapunovEstimate b;
  LyapunovEstimate union_hull;
  LyapunovEstimate sum_hull;
  bool commuting = false;
  /// Monotonicity: estimates of A and B against the union hull.
  CalculusClause subset;
  /// Union hull equals the larger of the two.
  CalculusClause union_max;
  /// Sum hull bounded by the sum.
  CalculusClause sum_bound;

  bool pass() const noexcept;
};

CalculusReport lambda_calculus_checks(const SwitchingSystem& sys_a, const SwitchingSystem& sys_b,
                                      const CalculusOptions& options = {});

}  // namespace switchgrade
