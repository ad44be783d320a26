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
#include <random>

#include "oracles.hpp"
#include "switchgrade/catalog.hpp"
#include "switchgrade/spectral.hpp"

namespace sg = switchgrade;
namespace cat = switchgrade::catalog;

namespace {

// Residual of the subspace spanned by `basis` under `g`, after projecting
// out the subspace; Gram-Schmidt done here to stay independent.
double invariance_residual(const std::vector<sg::Vec>& basis, const sg::Mat& g) {
  std::vector<sg::Vec> q;
  for (sg::Vec v : basis) {
    for (const auto& e : q) v -= sg::dot(v, e) * e;
    q.push_back((1.0 / sg::norm2(v)) * v);
  }
  double worst = 0.0;
  for (const auto& e : q) {
    sg::Vec w = g * e;
    for (const auto& f : q) w -= sg::dot(w, f) * f;
    worst = std::max(worst, sg::norm2(w));
  }
  return worst;
}

}  // namespace

TEST(SpectralAbscissa, Examples) {
  EXPECT_NEAR(sg::spectral_abscissa(cat::A0()), 0.0, 1e-15);
  const auto [r1, r2] = sg::oracle::quadratic_roots(2.0, 2.0);
  EXPECT_NEAR(sg::spectral_abscissa(cat::A1()), std::max(r1.real(), r2.real()), 1e-14);
  EXPECT_NEAR(sg::spectral_abscissa(cat::A1()), -1.0, 1e-14);
  const double lam = cat::lambda_star();
  EXPECT_NEAR(sg::spectral_abscissa(cat::B0(lam)), -lam, 1e-14);
  EXPECT_NEAR(sg::spectral_abscissa(cat::B1(lam)), -lam, 1e-14);
}

TEST(Hurwitz, Examples) {
  EXPECT_TRUE(sg::is_hurwitz(cat::A1()));
  EXPECT_FALSE(sg::is_hurwitz(cat::A0()));
  EXPECT_TRUE(sg::is_hurwitz(0.5 * cat::X0() + 0.3 * cat::X1() + 0.2 * cat::X2()));
  EXPECT_FALSE(sg::is_hurwitz(cat::B0_unshifted()));
}

TEST(Hurwitz, ImpliesDecayingExponentials) {
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> ex(1.0);
  const auto sys = cat::system_X();
  for (int k = 0; k < 30; ++k) {
    std::vector<double> w(3);
    double s = 0.0;
    for (double& x : w) s += (x = ex(rng));
    for (double& x : w) x /= s;
    const sg::Mat m = sys.combination(w);
    ASSERT_TRUE(sg::is_hurwitz(m));
    const double n10 = sg::opnorm(sg::expm(m, 10.0));
    const double n50 = sg::opnorm(sg::expm(m, 50.0));
    EXPECT_LT(n50, n10);
    EXPECT_LT(n50, 1.0);
  }
}

TEST(AlgebraRank, Examples) {
  EXPECT_EQ(sg::algebra_closure_rank(cat::system_X()), 16);
  EXPECT_EQ(sg::algebra_closure_rank(sg::SwitchingSystem({sg::Mat::identity(3)})), 1);
  EXPECT_EQ(sg::algebra_closure_rank(cat::system_A()), 4);
  EXPECT_EQ(sg::oracle::brute_span_rank({cat::A0(), cat::A1()}, 4), 4);
}

TEST(AlgebraRank, MatchesBruteForceSpans) {
  const std::vector<std::vector<sg::Mat>> cases = {
      {cat::X0(), cat::X1(), cat::X2()},
      {cat::X2()},
      {sg::kron(cat::A0(), sg::Mat::identity(2)), sg::kron(cat::A1(), sg::Mat::identity(2))},
      {sg::Mat::diagonal({1.0, 2.0}), sg::Mat::diagonal({3.0, 4.0})},
      {cat::B0(), cat::B1(), sg::Mat(2)},
  };
  for (const auto& gens : cases) {
    EXPECT_EQ(sg::algebra_closure_rank(sg::SwitchingSystem(gens)), sg::oracle::brute_span_rank(gens, 6));
  }
}

TEST(AlgebraRank, InvariantUnderSimilarity) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::vector<std::vector<sg::Mat>> cases = {
      {cat::X0(), cat::X1(), cat::X2()},
      {sg::kron(cat::A0(), sg::Mat::identity(2)), sg::kron(cat::A1(), sg::Mat::identity(2))},
  };
  for (const auto& gens : cases) {
    const int base = sg::algebra_closure_rank(sg::SwitchingSystem(gens));
    for (int trial = 0; trial < 5; ++trial) {
      sg::Mat p = 3.0 * sg::Mat::identity(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p(i, j) += u(rng);
      const sg::Mat pinv = sg::solve(p, sg::Mat::identity(4));
      std::vector<sg::Mat> conj;
      for (const auto& g : gens) conj.push_back(pinv * g * p);
      EXPECT_EQ(sg::algebra_closure_rank(sg::SwitchingSystem(conj)), base);
    }
  }
}

TEST(Irreducible, PlanarExamples) {
  EXPECT_TRUE(sg::is_irreducible(cat::system_A()));
  EXPECT_TRUE(sg::is_irreducible(cat::system_B()));
  EXPECT_TRUE(sg::is_irreducible(cat::system_B0()));
  EXPECT_FALSE(sg::is_irreducible(sg::SwitchingSystem({sg::Mat::diagonal({1.0, 2.0}), sg::Mat::diagonal({3.0, 4.0})})));
  EXPECT_FALSE(sg::is_irreducible(sg::SwitchingSystem({cat::A0(), sg::Mat{{-1.0, 0.0}, {5.0, -2.0}}})));
}

TEST(Irreducible, FullRankImpliesIrreducible) {
  const auto x = cat::system_X();
  ASSERT_EQ(sg::algebra_closure_rank(x), 16);
  EXPECT_TRUE(sg::is_irreducible(x));
  EXPECT_FALSE(sg::find_invariant_subspace(x).has_value());
}

TEST(Irreducible, FourDimensionalReducibleSystemsExhibitSubspace) {
  const std::vector<sg::SwitchingSystem> cases = {
      sg::SwitchingSystem({sg::kron(cat::A0(), sg::Mat::identity(2)), sg::kron(cat::A1(), sg::Mat::identity(2))}),
      sg::SwitchingSystem({sg::kron(sg::Mat::identity(2), cat::B0()), sg::kron(sg::Mat::identity(2), cat::B1())}),
      sg::SwitchingSystem({sg::kron(cat::A0(), sg::Mat::identity(2)) + sg::kron(sg::Mat::identity(2), cat::B0()),
                           sg::kron(cat::A0(), sg::Mat::identity(2)) + sg::kron(sg::Mat::identity(2), cat::B1())}),
  };
  for (const auto& sys : cases) {
    EXPECT_LT(sg::algebra_closure_rank(sys), 16);
    const auto sub = sg::find_invariant_subspace(sys);
    ASSERT_TRUE(sub.has_value());
    EXPECT_GT(sub->size(), 0u);
    EXPECT_LT(sub->size(), 4u);
    for (const auto& g : sys.generators()) EXPECT_LE(invariance_residual(*sub, g), 1e-8);
    EXPECT_FALSE(sg::is_irreducible(sys));
  }
}
