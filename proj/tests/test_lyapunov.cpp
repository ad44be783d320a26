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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "switchgrade/barabanov.hpp"
#include "switchgrade/catalog.hpp"
#include "switchgrade/error.hpp"
#include "switchgrade/lyapunov.hpp"
#include "switchgrade/quadrature.hpp"
#include "switchgrade/spectral.hpp"

namespace sg = switchgrade;
namespace cat = switchgrade::catalog;
using std::numbers::pi;

namespace {

// Root of the angular equation for the unshifted pair, evaluated to 20
// digits in extended precision outside this code base.
constexpr double kLambdaReference = 0.48390194969758995685;

sg::SwitchingSystem tensor_left(const sg::SwitchingSystem& s) {
  std::vector<sg::Mat> g;
  for (const auto& m : s.generators()) g.push_back(sg::kron(m, sg::Mat::identity(2)));
  return sg::SwitchingSystem(g);
}

sg::SwitchingSystem tensor_right(const sg::SwitchingSystem& s) {
  std::vector<sg::Mat> g;
  for (const auto& m : s.generators()) g.push_back(sg::kron(sg::Mat::identity(2), m));
  return sg::SwitchingSystem(g);
}

}  // namespace

TEST(Singleton, EqualsSpectralAbscissa) {
  for (const auto& [m, want] : std::vector<std::pair<sg::Mat, double>>{{cat::A0(), 0.0}, {cat::A1(), -1.0}, {cat::X2(), -1.0}}) {
    const auto e = sg::lambda_singleton(m);
    EXPECT_NEAR(e.lower, want, 1e-12);
    EXPECT_EQ(e.lower, e.upper);
    EXPECT_EQ(e.method, sg::EstimateMethod::singleton);
  }
}

TEST(ProductSearch, StationaryGeneratorGivesZero) {
  const sg::SwitchingSystem s({cat::A0()});
  for (double horizon : {1.0, 7.3, 30.0}) {
    const auto e = sg::lambda_lower_product_search(s, horizon);
    EXPECT_NEAR(e.lower, 0.0, 1e-14);
    EXPECT_TRUE(std::isinf(e.upper));
    EXPECT_EQ(e.method, sg::EstimateMethod::product_search);
  }
}

TEST(ProductSearch, UnshiftedPairBeatsQuarterTurnBound) {
  for (int n : {2, 4, 8}) {
    const auto e = sg::lambda_lower_product_search(cat::system_unshifted(), n * pi);
    EXPECT_GE(e.lower, cat::log4_over_pi() - 1e-12) << "T = " << n << " pi";
    EXPECT_EQ(e.budget.beam, 64);
    EXPECT_EQ(e.budget.grid_size, 64u);
  }
}

TEST(ProductSearch, ShiftedPairWithinDistortionOfZero) {
  // Every product is bounded by the distortion kappa = max R / min R of the
  // invariant polar norm, so T * lower <= log kappa.
  const auto build = sg::norm_B_build(cat::system_B());
  double rmin = INFINITY, rmax = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double r = build.table.radius(pi * k / 20000);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  const double log_kappa = std::log(rmax / rmin);
  double prev = INFINITY;
  for (double horizon : {20.0, 40.0}) {
    const auto e = sg::lambda_lower_product_search(cat::system_B(), horizon);
    EXPECT_GE(e.lower, -1e-3);
    EXPECT_LE(e.lower * horizon, log_kappa + 1e-9);
    EXPECT_LT(e.lower, prev);
    prev = e.lower;
  }
}

TEST(ProductSearch, AgreesWithAngularMethod) {
  const auto e = sg::lambda_lower_product_search(cat::system_unshifted(), 16 * pi);
  EXPECT_NEAR(e.lower, cat::lambda_star(), 2e-3);
}

TEST(Angular, UnshiftedPairValue) {
  const auto e = sg::lambda_planar_angular(cat::system_unshifted());
  EXPECT_EQ(e.method, sg::EstimateMethod::planar_angular);
  EXPECT_EQ(e.lower, e.upper);
  EXPECT_NEAR(e.lower, kLambdaReference, 1e-9);
  EXPECT_GT(e.lower, cat::log4_over_pi());
  const sg::PolarField f(cat::system_unshifted());
  EXPECT_GT(sg::angular_objective(f, cat::log4_over_pi()), 1e-4);
}

TEST(Angular, ObjectiveStrictlyDecreasing) {
  const sg::PolarField f(cat::system_unshifted());
  double prev = INFINITY;
  for (int k = 0; k <= 40; ++k) {
    const double v = sg::angular_objective(f, -1.0 + 0.05 * k);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Angular, QuarterTurnPolicyGivesBound) {
  auto rate = [](double th) { return 2 * std::cos(th) * std::cos(th) + 0.5 * std::sin(th) * std::sin(th); };
  EXPECT_NEAR(sg::integrate_adaptive([&](double th) { return 1.5 * std::sin(th) * std::cos(th) / rate(th); }, 0.0, pi / 2, 1e-13),
              std::log(2.0), 1e-12);
  EXPECT_NEAR(sg::integrate_adaptive([&](double th) { return 1.0 / rate(th); }, 0.0, pi / 2, 1e-13), pi / 2, 1e-12);
  const sg::PolarField f(cat::system_unshifted());
  const auto policy = [](double th) -> std::size_t { return th < pi / 2 ? 1 : 0; };
  // Simpson is first order across the policy's jump, so the value tends to 0 like h.
  const double coarse = sg::angular_objective(f, cat::log4_over_pi(), policy);
  sg::AngularOptions fine;
  fine.intervals = 1 << 18;
  const double refined = sg::angular_objective(f, cat::log4_over_pi(), policy, fine);
  EXPECT_LE(std::abs(coarse), 2e-4);
  EXPECT_NEAR(refined * 16, coarse, 1e-2 * std::abs(coarse));
  // the optimal policy does strictly better
  EXPECT_GT(sg::angular_objective(f, cat::log4_over_pi()), sg::angular_objective(f, cat::log4_over_pi(), policy));
}

TEST(Angular, RepeatedRotationIsZero) {
  const sg::Mat r{{0.0, -1.0}, {1.0, 0.0}};
  EXPECT_NEAR(sg::lambda_planar_angular(sg::SwitchingSystem({r, r})).value(), 0.0, 1e-9);
}

TEST(Angular, ShiftEquivariance) {
  for (double mu : {-0.3, 0.25, 1.0}) {
    const auto e = sg::lambda_planar_angular(sg::shift(cat::system_unshifted(), mu));
    EXPECT_NEAR(e.value(), cat::lambda_star() - mu, 1e-9);
  }
}

TEST(Angular, SwitchingAnglesOfShiftedPair) {
  const sg::PolarField f(cat::system_B());
  const auto angles = f.switching_angles(0.0);
  ASSERT_EQ(angles.size(), 2u);
  for (double a : angles) {
    EXPECT_NEAR(f.gain(0, a, 0.0), f.gain(1, a, 0.0), 1e-10);
  }
}

TEST(Angular, InapplicableWithoutUniformRotation) {
  try {
    sg::lambda_planar_angular(cat::system_A());
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::Errc::method_inapplicable);
  }
}

TEST(Angular, ParallelQuadratureMatchesSerial) {
  const sg::PolarField f(cat::system_unshifted());
  sg::AngularOptions a, b;
  b.execution = sg::Execution::parallel;
  EXPECT_EQ(sg::angular_objective(f, 0.45, a), sg::angular_objective(f, 0.45, b));
}

TEST(Extremal, NormAIsExtremal) {
  const auto r = sg::lambda_upper_extremal(cat::system_A(), [](const sg::Vec& v) { return sg::norm_A(v); }, 0.0, 200);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.samples, 200);
  EXPECT_EQ(r.estimate.upper, 0.0);
  EXPECT_EQ(r.estimate.method, sg::EstimateMethod::extremal_certificate);
}

TEST(Extremal, EuclideanNormIsContractiveForA) {
  // A0 + A0^T and A1 + A1^T are negative semidefinite, so the Euclidean norm
  // is also non-increasing for this system.
  for (const auto& m : {cat::A0(), cat::A1()}) {
    for (double ev : sg::symmetric_eigenvalues(m + m.transposed())) EXPECT_LE(ev, 1e-15);
  }
  const auto r = sg::lambda_upper_extremal(cat::system_A(), [](const sg::Vec& v) { return sg::norm2(v); }, 0.0, 200);
  EXPECT_TRUE(r.pass);
  const auto single = sg::lambda_upper_extremal(sg::SwitchingSystem({cat::A0()}),
                                                [](const sg::Vec& v) { return sg::norm2(v); }, 0.0, 200);
  EXPECT_TRUE(single.pass);
}

TEST(Extremal, EuclideanNormFailsForShiftedPairWithWitness) {
  const auto sys = cat::system_B();
  const auto r = sg::lambda_upper_extremal(sys, [](const sg::Vec& v) { return sg::norm2(v); }, 0.0, 200);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  const auto& w = *r.witness;
  EXPECT_GT(w.increase, 1e-9);
  EXPECT_LT(w.t0, w.t1);
  const double n0 = sg::norm2(sg::expm(sys[w.generator], w.t0) * w.v);
  const double n1 = sg::norm2(sg::expm(sys[w.generator], w.t1) * w.v);
  EXPECT_NEAR(n1 - n0, w.increase, 1e-12);
  EXPECT_EQ(r.max_increase, w.increase);
}

TEST(Extremal, ShiftedUpperBoundFromGrowthRate) {
  // e^{-mu t} |e^{t A} v| is non-increasing once mu exceeds the spectral
  // abscissa of the symmetric part.
  const auto r = sg::lambda_upper_extremal(cat::system_unshifted(), [](const sg::Vec& v) { return sg::norm2(v); }, 0.75, 50);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.estimate.upper, 0.75);
}

TEST(Estimate, MethodSelection) {
  EXPECT_EQ(sg::estimate_exponent(sg::SwitchingSystem({cat::A1()}), 10.0).method, sg::EstimateMethod::singleton);
  EXPECT_EQ(sg::estimate_exponent(cat::system_B(), 10.0).method, sg::EstimateMethod::planar_angular);
  EXPECT_EQ(sg::estimate_exponent(cat::system_A(), 10.0, sg::calculus_beam()).method, sg::EstimateMethod::product_search);
}

TEST(Calculus, TensorFamiliesOfTheFourDimensionalExample) {
  const auto r = sg::lambda_calculus_checks(tensor_left(cat::system_A()), tensor_right(cat::system_B()));
  EXPECT_TRUE(r.commuting);
  EXPECT_EQ(r.subset.status, sg::ClauseStatus::passed);
  EXPECT_EQ(r.union_max.status, sg::ClauseStatus::passed);
  EXPECT_EQ(r.sum_bound.status, sg::ClauseStatus::passed);
  EXPECT_TRUE(r.pass());
}

TEST(Calculus, CommutingDiagonalFamilies) {
  const sg::SwitchingSystem a({sg::Mat::diagonal({-1.0, -2.0}), sg::Mat::diagonal({-3.0, 0.5})});
  const sg::SwitchingSystem b({sg::Mat::diagonal({0.2, -1.0})});
  const auto r = sg::lambda_calculus_checks(a, b);
  EXPECT_TRUE(r.commuting);
  EXPECT_NEAR(r.a.value(), 0.5, 1e-12);
  EXPECT_NEAR(r.b.value(), 0.2, 1e-12);
  EXPECT_NEAR(r.union_hull.value(), 0.5, 1e-12);
  EXPECT_TRUE(r.pass());
}

TEST(Calculus, NonCommutingLeavesSumClausesOpen) {
  const auto r = sg::lambda_calculus_checks(cat::system_A(), sg::SwitchingSystem({cat::B0()}));
  EXPECT_FALSE(r.commuting);
  EXPECT_EQ(r.subset.status, sg::ClauseStatus::passed);
  EXPECT_EQ(r.union_max.status, sg::ClauseStatus::inapplicable);
  EXPECT_EQ(r.sum_bound.status, sg::ClauseStatus::inapplicable);
}

TEST(Calculus, SupersetRaisesLowerBound) {
  const auto small = sg::lambda_lower_product_search(cat::system_A(), 10.0, sg::calculus_beam());
  const auto big = sg::lambda_lower_product_search(
      sg::SwitchingSystem({cat::A0(), cat::A1(), sg::Mat::diagonal({0.1, -1.0})}), 10.0, sg::calculus_beam());
  EXPECT_GE(big.lower, small.lower);
}
