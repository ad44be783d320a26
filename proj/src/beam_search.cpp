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

#include "switchgrade/beam_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "switchgrade/error.hpp"

namespace switchgrade {

DurationGrid DurationGrid::uniform(double step, int count) {
  DurationGrid g;
  g.step = step;
  for (int j = 1; j <= count; ++j) g.multiples.push_back(j);
  g.validate();
  return g;
}

DurationGrid DurationGrid::standard() { return uniform(std::numbers::pi / 64.0, 64); }

DurationGrid DurationGrid::from_values(const std::vector<double>& values) {
  if (values.empty()) fail(Errc::invalid_input, "duration grid is empty");
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0) fail(Errc::invalid_input, "duration grid values must be positive");
  }
  const double smallest = *std::min_element(values.begin(), values.end());
  for (int q = 1; q <= 4096; ++q) {
    const double step = smallest / q;
    std::vector<int> m;
    bool ok = true;
    for (double v : values) {
      const double ratio = v / step;
      const double r = std::round(ratio);
      if (std::abs(ratio - r) > 1e-9 * ratio) {
        ok = false;
        break;
      }
      m.push_back(static_cast<int>(r));
    }
    if (!ok) continue;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return DurationGrid{step, std::move(m)};
  }
  fail(Errc::invalid_input, "duration grid values have no common step");
}

void DurationGrid::validate() const {
  if (multiples.empty()) fail(Errc::invalid_input, "duration grid is empty");
  if (!std::isfinite(step) || step <= 0.0) fail(Errc::invalid_input, "duration grid step must be positive");
  for (int m : multiples) {
    if (m <= 0) fail(Errc::invalid_input, "duration grid multiples must be positive");
  }
}

Schedule witness_schedule(const std::vector<BeamStep>& witness, std::size_t generators) {
  Schedule s(generators);
  s.reserve(witness.size());
  for (const auto& w : witness) s.append_vertex(w.duration, w.generator);
  return s;
}

namespace {

struct MatPolicy {
  using State = Mat;
  static State apply(const Mat& e, const State& s) { return e * s; }
  static double score(const State& s) { return opnorm(s); }
  static double rank(const State& s, const BeamOptions&) { return opnorm(s); }
  static State identity(const SwitchingSystem& sys, const Vec&) { return Mat::identity(sys.dim()); }
};

struct VecPolicy {
  using State = Vec;
  static State apply(const Mat& e, const State& s) { return e * s; }
  static double score(const State& s) { return norm2(s); }
  static double rank(const State& s, const BeamOptions& o) { return o.potential ? o.potential(s) : norm2(s); }
  static State identity(const SwitchingSystem&, const Vec& z0) { return z0; }
};

struct Node {
  std::int64_t parent;
  std::int32_t generator;
  std::int32_t duration;  // grid index, or -1 for the leftover piece
};

template <class State>
struct Candidate {
  State state;
  double score;
  std::int64_t parent;
  std::int32_t duration;
  std::int32_t generator;
};

// Total order: higher score first, then lower parent id, duration index and
// generator index. Parent ids grow with bucket and rank, so ties resolve the
// same way on every run.
template <class State>
bool ranks_before(const Candidate<State>& a, const Candidate<State>& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.parent != b.parent) return a.parent < b.parent;
  if (a.duration != b.duration) return a.duration < b.duration;
  return a.generator < b.generator;
}

template <class State>
double peak(const State& s) {
  double m = 0.0;
  for (double x : s.entries()) m = std::max(m, std::abs(x));
  return m;
}

template <class State>
bool same_state(const Candidate<State>& a, const Candidate<State>& b, double tol) {
  return max_abs_diff(a.state, b.state) <= tol * std::max(peak(a.state), peak(b.state));
}

// Sorts by rank and keeps the best `beam`. With a merge tolerance, a
// candidate within that relative distance of an already kept state is
// dropped, so near-copies of one trajectory do not crowd the beam.
template <class Policy>
void prune(std::vector<Candidate<typename Policy::State>>& pool, int beam, double merge) {
  using State = typename Policy::State;
  if (merge <= 0.0) {
    const auto keep = std::min(pool.size(), static_cast<std::size_t>(beam));
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                      ranks_before<State>);
    pool.resize(keep);
    return;
  }
  std::sort(pool.begin(), pool.end(), ranks_before<State>);
  std::vector<Candidate<State>> kept;
  kept.reserve(static_cast<std::size_t>(beam));
  for (auto& c : pool) {
    if (static_cast<int>(kept.size()) == beam) break;
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (same_state(*it, c, merge)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(c));
  }
  pool = std::move(kept);
}

template <class Policy>
BeamResult<typename Policy::State> run(const SwitchingSystem& sys, const Vec& z0, double horizon,
                                       const BeamOptions& opts) {
  using State = typename Policy::State;
  using C = Candidate<State>;
  opts.grid.validate();
  if (opts.beam < 1) fail(Errc::invalid_input, "beam width must be at least 1");
  if (!std::isfinite(horizon) || horizon <= 0.0) fail(Errc::invalid_input, "horizon must be positive");

  const auto& grid = opts.grid;
  const std::size_t gens = sys.size();
  const std::size_t durs = grid.multiples.size();
  const double steps_real = horizon / grid.step;
  if (steps_real > 1e7) fail(Errc::invalid_input, "horizon spans too many grid steps");
  const auto last = static_cast<std::int64_t>(std::floor(steps_real + 1e-9));
  const int min_m = *std::min_element(grid.multiples.begin(), grid.multiples.end());

  BeamResult<State> result;
  result.beam_used = opts.beam;
  if (opts.max_expansions > 0) {
    const double projected = static_cast<double>(last + 1) * opts.beam * static_cast<double>(durs * gens);
    if (projected > static_cast<double>(opts.max_expansions)) {
      const double per_entry = static_cast<double>(last + 1) * static_cast<double>(durs * gens);
      result.beam_used = std::max(1, static_cast<int>(static_cast<double>(opts.max_expansions) / per_entry));
      result.low_confidence = true;
    }
  }
  const int beam = result.beam_used;
  const std::size_t cap = std::max<std::size_t>(256, 8 * static_cast<std::size_t>(beam));

  std::vector<std::vector<Mat>> step_exp(gens, std::vector<Mat>(durs));
  for (std::size_t g = 0; g < gens; ++g)
    for (std::size_t j = 0; j < durs; ++j) step_exp[g][j] = expm(sys[g], grid.duration(j));

  std::vector<Node> arena;
  std::vector<std::vector<C>> pending(static_cast<std::size_t>(last) + 1);
  pending[0].push_back(C{Policy::identity(sys, z0), Policy::score(Policy::identity(sys, z0)), -1, -1, -1});

  std::vector<C> finals;
  std::vector<C> slots;
  const int threads = opts.execution == Execution::parallel ? worker_threads() : 1;

  for (std::int64_t b = 0; b <= last; ++b) {
    auto& here = pending[static_cast<std::size_t>(b)];
    if (b > 0) prune<Policy>(here, beam, opts.merge_tolerance);
    if (here.empty()) continue;
    std::vector<std::int64_t> ids;
    std::vector<State> states;
    for (auto& c : here) {
      ids.push_back(static_cast<std::int64_t>(arena.size()));
      arena.push_back(Node{c.parent, c.generator, c.duration});
      states.push_back(std::move(c.state));
    }
    std::vector<C>().swap(here);

    if (b + min_m > last) {
      const double leftover = horizon - static_cast<double>(b) * grid.step;
      if (leftover <= 1e-12 * horizon) {
        for (std::size_t e = 0; e < states.size(); ++e) {
          finals.push_back(C{states[e], Policy::score(states[e]), ids[e], -2, -2});
        }
      } else {
        for (std::size_t g = 0; g < gens; ++g) {
          const Mat tail = expm(sys[g], leftover);
          for (std::size_t e = 0; e < states.size(); ++e) {
            State s = Policy::apply(tail, states[e]);
            const double sc = Policy::score(s);
            finals.push_back(C{std::move(s), sc, ids[e], -1, static_cast<std::int32_t>(g)});
            ++result.expansions;
          }
        }
      }
      continue;
    }

    // Expansion kernel: every (entry, duration, generator) triple writes its
    // own slot, so serial and threaded runs produce identical arrays.
    const std::size_t per_entry = durs * gens;
    const std::size_t total = states.size() * per_entry;
    slots.assign(total, C{State{}, 0.0, 0, 0, 0});
    int bad = 0;
#pragma omp parallel for schedule(static) num_threads(threads) reduction(| : bad)
    for (std::size_t k = 0; k < total; ++k) {
      const std::size_t e = k / per_entry;
      const std::size_t j = (k % per_entry) / gens;
      const std::size_t g = k % gens;
      C& c = slots[k];
      c.parent = ids[e];
      c.duration = static_cast<std::int32_t>(j);
      c.generator = static_cast<std::int32_t>(g);
      if (b + grid.multiples[j] > last) {
        c.score = -1.0;  // overshoots the horizon
        continue;
      }
      c.state = Policy::apply(step_exp[g][j], states[e]);
      if (!c.state.is_finite()) {
        bad = 1;
        c.score = -1.0;
        continue;
      }
      c.score = Policy::rank(c.state, opts);
    }
    if (bad) fail(Errc::overflow, "beam search: product overflowed");

    for (auto& c : slots) {
      if (c.score < 0.0) continue;
      ++result.expansions;
      auto& dest = pending[static_cast<std::size_t>(b + grid.multiples[static_cast<std::size_t>(c.duration)])];
      dest.push_back(std::move(c));
      if (dest.size() >= cap) prune<Policy>(dest, beam, opts.merge_tolerance);
    }
  }

  if (finals.empty()) fail(Errc::invalid_input, "no grid sequence reaches the horizon");
  const auto best = std::min_element(finals.begin(), finals.end(), ranks_before<State>);
  result.score = best->score;
  result.state = best->state;
  std::vector<BeamStep> steps;
  double used = 0.0;
  for (std::int64_t id = best->parent; id >= 0;) {
    const Node& n = arena[static_cast<std::size_t>(id)];
    if (n.duration < 0) break;  // root
    const double d = grid.duration(static_cast<std::size_t>(n.duration));
    steps.push_back(BeamStep{static_cast<std::size_t>(n.generator), d});
    used += static_cast<double>(grid.multiples[static_cast<std::size_t>(n.duration)]);
    id = n.parent;
  }
  std::reverse(steps.begin(), steps.end());
  if (best->duration == -1) {
    steps.push_back(BeamStep{static_cast<std::size_t>(best->generator), horizon - used * grid.step});
  }
  result.witness = std::move(steps);
  return result;
}

}  // namespace

BeamResult<Mat> search_products(const SwitchingSystem& sys, double horizon, const BeamOptions& options) {
  return run<MatPolicy>(sys, Vec(sys.dim()), horizon, options);
}

BeamResult<Vec> search_endpoints(const SwitchingSystem& sys, const Vec& z0, double horizon,
                                 const BeamOptions& options) {
  if (z0.dim() != sys.dim()) fail(Errc::dimension, "search_endpoints: start vector dimension mismatch");
  if (!z0.is_finite()) fail(Errc::invalid_input, "search_endpoints: start vector not finite");
  return run<VecPolicy>(sys, z0, horizon, options);
}

}  // namespace switchgrade
