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


// Serial reference vs OpenMP path for the data-parallel kernels. The second
// benchmark argument selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "switchgrade/barabanov.hpp"
#include "switchgrade/beam_search.hpp"
#include "switchgrade/catalog.hpp"
#include "switchgrade/lyapunov.hpp"
#include "switchgrade/quadrature.hpp"
#include "switchgrade/system.hpp"

namespace sg = switchgrade;
namespace cat = switchgrade::catalog;

namespace {

sg::Execution execution(const benchmark::State& state) {
  return state.range(1) ? sg::Execution::parallel : sg::Execution::serial;
}

void BM_ProductSearch(benchmark::State& state) {
  const auto sys = cat::system_unshifted();
  sg::BeamOptions o;
  o.beam = static_cast<int>(state.range(0));
  o.execution = execution(state);
  for (auto _ : state) benchmark::DoNotOptimize(sg::search_products(sys, 4 * std::numbers::pi, o).score);
}
BENCHMARK(BM_ProductSearch)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EndpointSearchX(benchmark::State& state) {
  const auto sys = cat::system_X();
  const sg::PolarBuild b = sg::norm_B_build(cat::system_B());
  sg::BeamOptions o = sg::x_norm_budget(b.table, static_cast<int>(state.range(0)));
  o.execution = execution(state);
  const sg::Vec z = sg::kron(sg::Vec{1.0, 0.3}, sg::Vec{1.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(sg::search_endpoints(sys, z, 5.0, o).score);
}
BENCHMARK(BM_EndpointSearchX)->ArgsProduct({{16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_AngularObjective(benchmark::State& state) {
  const sg::PolarField field(cat::system_unshifted());
  sg::AngularOptions o;
  o.intervals = static_cast<int>(state.range(0));
  o.execution = execution(state);
  for (auto _ : state) benchmark::DoNotOptimize(sg::angular_objective(field, cat::log4_over_pi(), o));
}
BENCHMARK(BM_AngularObjective)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Simpson(benchmark::State& state) {
  auto f = [](double t) { return std::exp(-t) * std::sin(40 * t); };
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sg::simpson(f, 0.0, 3.0, n, execution(state)));
}
BENCHMARK(BM_Simpson)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Chatter(benchmark::State& state) {
  const auto law = sg::MeasurableLaw::two_state([](double t) { return 0.5 + 0.4 * std::sin(3 * t); });
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sg::chatter_discretize(law, 2.0, k, execution(state)).size());
}
BENCHMARK(BM_Chatter)->ArgsProduct({{1 << 14, 1 << 18}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
