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
#include <functional>
#include <numbers>

#include "switchgrade/beam_search.hpp"
#include "switchgrade/catalog.hpp"
#include "switchgrade/error.hpp"
#include "switchgrade/system.hpp"

namespace sg = switchgrade;
namespace cat = switchgrade::catalog;
using std::numbers::pi;

namespace {

// Every admissible vertex sequence, enumerated recursively. Buckets are
// integer step counts; a state that cannot fit another grid duration takes
// the leftover time with each generator.
template <class State, class Apply, class Score>
double exhaustive(const sg::SwitchingSystem& sys, const sg::DurationGrid& grid, double horizon, State start,
                  Apply apply, Score score) {
  const auto last = static_cast<long>(std::floor(horizon / grid.step + 1e-9));
  const int min_m = *std::min_element(grid.multiples.begin(), grid.multiples.end());
  double best = -1.0;
  std::function<void(long, const State&)> rec = [&](long b, const State& s) {
    if (b + min_m > last) {
      const double left = horizon - static_cast<double>(b) * grid.step;
      if (left <= 1e-12 * horizon) {
        best = std::max(best, score(s));
      } else {
        for (std::size_t g = 0; g < sys.size(); ++g) best = std::max(best, score(apply(sg::expm(sys[g], left), s)));
      }
      return;
    }
    for (std::size_t j = 0; j < grid.multiples.size(); ++j) {
      if (b + grid.multiples[j] > last) continue;
      for (std::size_t g = 0; g < sys.size(); ++g) {
        rec(b + grid.multiples[j], apply(sg::expm(sys[g], grid.duration(j)), s));
      }
    }
  };
  rec(0, start);
  return best;
}

double exhaustive_products(const sg::SwitchingSystem& sys, const sg::DurationGrid& grid, double horizon) {
  return exhaustive(
      sys, grid, horizon, sg::Mat::identity(sys.dim()), [](const sg::Mat& e, const sg::Mat& m) { return e * m; },
      [](const sg::Mat& m) { return sg::opnorm(m); });
}

double exhaustive_endpoints(const sg::SwitchingSystem& sys, const sg::DurationGrid& grid, double horizon,
                            const sg::Vec& z0) {
  return exhaustive(
      sys, grid, horizon, z0, [](const sg::Mat& e, const sg::Vec& v) { return e * v; },
      [](const sg::Vec& v) { return sg::norm2(v); });
}

sg::BeamOptions wide(sg::DurationGrid grid) {
  sg::BeamOptions o;
  o.grid = std::move(grid);
  o.beam = 1 << 20;
  return o;
}

}  // namespace

TEST(DurationGrid, Construction) {
  const auto g = sg::DurationGrid::from_values({pi / 2, pi / 4, 3 * pi / 4, pi / 4});
  EXPECT_NEAR(g.step, pi / 4, 1e-15);
  EXPECT_EQ(g.multiples, (std::vector<int>{1, 2, 3}));
  const auto s = sg::DurationGrid::standard();
  EXPECT_EQ(s.multiples.size(), 64u);
  EXPECT_EQ(s.duration(31), pi / 2);
  EXPECT_THROW(sg::DurationGrid::from_values({}), sg::Error);
  EXPECT_THROW(sg::DurationGrid::from_values({1.0, std::sqrt(2.0)}), sg::Error);
  EXPECT_THROW(sg::DurationGrid::from_values({1.0, -1.0}), sg::Error);
  EXPECT_THROW(sg::DurationGrid::uniform(0.1, 0), sg::Error);
}

TEST(SearchProducts, WideBeamEqualsExhaustiveSearch) {
  const std::vector<std::pair<sg::SwitchingSystem, sg::DurationGrid>> cases = {
      {cat::system_unshifted(), sg::DurationGrid::uniform(0.3, 3)},
      {cat::system_A(), sg::DurationGrid::from_values({0.4, 0.8})},
      {cat::system_B0(), sg::DurationGrid::from_values({0.5, 1.5})},
  };
  for (const auto& [sys, grid] : cases) {
    for (double horizon : {1.8, 2.05, 2.4}) {
      const auto r = sg::search_products(sys, horizon, wide(grid));
      EXPECT_NEAR(r.score, exhaustive_products(sys, grid, horizon), 1e-12 * std::max(1.0, r.score))
          << sys.label() << " T=" << horizon;
      EXPECT_FALSE(r.low_confidence);
    }
  }
}

TEST(SearchProducts, WitnessReproducesScore) {
  const auto sys = cat::system_unshifted();
  sg::BeamOptions o;
  o.beam = 16;
  const double horizon = 4 * pi + 0.01;
  const auto r = sg::search_products(sys, horizon, o);
  const auto s = sg::witness_schedule(r.witness, sys.size());
  EXPECT_NEAR(s.total_duration(), horizon, 1e-12);
  EXPECT_NEAR(sg::opnorm(sg::flow_product(sys, s)), r.score, 1e-12 * r.score);
  EXPECT_NEAR(sg::opnorm(r.state), r.score, 1e-12 * r.score);
}

TEST(SearchProducts, QuarterTurnsReachPowersOfFour) {
  sg::BeamOptions o;
  o.grid = sg::DurationGrid::from_values({pi / 2});
  o.beam = 8;
  const auto r = sg::search_products(cat::system_unshifted(), 4 * pi, o);
  EXPECT_GE(r.score, std::pow(4.0, 4) * (1 - 1e-12));
}

TEST(SearchProducts, ParallelMatchesSerialBitForBit) {
  sg::BeamOptions o;
  o.beam = 12;
  for (const auto& sys : {cat::system_unshifted(), cat::system_X()}) {
    o.execution = sg::Execution::serial;
    const auto a = sg::search_products(sys, 3 * pi, o);
    o.execution = sg::Execution::parallel;
    const auto b = sg::search_products(sys, 3 * pi, o);
    EXPECT_EQ(a.score, b.score);
    EXPECT_EQ(a.state, b.state);
    ASSERT_EQ(a.witness.size(), b.witness.size());
    for (std::size_t i = 0; i < a.witness.size(); ++i) {
      EXPECT_EQ(a.witness[i].generator, b.witness[i].generator);
      EXPECT_EQ(a.witness[i].duration, b.witness[i].duration);
    }
  }
}

TEST(SearchProducts, MonotoneInBeamWidth) {
  double prev = 0.0;
  for (int beam : {1, 2, 4, 8, 16, 32, 64}) {
    sg::BeamOptions o;
    o.beam = beam;
    const double s = sg::search_products(cat::system_unshifted(), 4 * pi, o).score;
    EXPECT_GE(s, prev * (1 - 1e-12)) << "beam " << beam;
    prev = s;
  }
}

TEST(SearchProducts, ExpansionCapFlagsLowConfidence) {
  sg::BeamOptions o;
  o.beam = 64;
  o.max_expansions = 10000;
  const auto r = sg::search_products(cat::system_unshifted(), 2 * pi, o);
  EXPECT_TRUE(r.low_confidence);
  EXPECT_LT(r.beam_used, 64);
}

TEST(SearchProducts, InputErrors) {
  sg::BeamOptions o;
  o.beam = 0;
  EXPECT_THROW(sg::search_products(cat::system_A(), 1.0, o), sg::Error);
  o.beam = 4;
  EXPECT_THROW(sg::search_products(cat::system_A(), 0.0, o), sg::Error);
  o.grid.multiples.clear();
  EXPECT_THROW(sg::search_products(cat::system_A(), 1.0, o), sg::Error);
}

TEST(SearchEndpoints, WideBeamEqualsExhaustiveSearch) {
  const auto grid = sg::DurationGrid::from_values({0.5, 1.0});
  const auto sys = cat::system_X();
  const sg::Vec z0{1.0, 0.0, 0.3, -0.2};
  const auto r = sg::search_endpoints(sys, z0, 3.0, wide(grid));
  EXPECT_NEAR(r.score, exhaustive_endpoints(sys, grid, 3.0, z0), 1e-12);
  EXPECT_NEAR(sg::norm2(r.state), r.score, 0.0);
  const auto s = sg::witness_schedule(r.witness, sys.size());
  EXPECT_LE(sg::max_abs_diff(sg::evolve_endpoint(sys, s, z0), r.state), 1e-13);
}

TEST(SearchEndpoints, PotentialRanksButScoreIsEuclidean) {
  sg::BeamOptions o;
  o.beam = 4;
  o.merge_tolerance = 1e-2;
  o.potential = [](const sg::Vec& v) { return std::abs(v[0]) + 0.1 * std::abs(v[1]); };
  const sg::Vec z0{0.2, 1.0};
  const auto r = sg::search_endpoints(cat::system_A(), z0, 5.0, o);
  EXPECT_EQ(r.score, sg::norm2(r.state));
  const auto s = sg::witness_schedule(r.witness, 2);
  EXPECT_LE(sg::max_abs_diff(sg::evolve_endpoint(cat::system_A(), s, z0), r.state), 1e-13);
}

TEST(SearchEndpoints, ParallelMatchesSerialWithMerging) {
  sg::BeamOptions o;
  o.beam = 16;
  o.merge_tolerance = 1e-2;
  const sg::Vec z0{1.0, 0.0, 0.5, 0.0};
  o.execution = sg::Execution::serial;
  const auto a = sg::search_endpoints(cat::system_X(), z0, 6.0, o);
  o.execution = sg::Execution::parallel;
  const auto b = sg::search_endpoints(cat::system_X(), z0, 6.0, o);
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.witness.size(), b.witness.size());
}
