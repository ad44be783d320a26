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

#include "switchgrade/system.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "switchgrade/error.hpp"
#include "switchgrade/quadrature.hpp"

namespace switchgrade {
namespace {

std::int32_t indicator_index(std::span<const double> w) {
  std::int32_t hit = -1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1.0) {
      if (hit >= 0) return -1;
      hit = static_cast<std::int32_t>(i);
    } else if (w[i] != 0.0) {
      return -1;
    }
  }
  return hit;
}

void check_state(const Vec& x) {
  if (!x.is_finite()) fail(Errc::overflow, "trajectory state left double range");
}

}  // namespace

// ------------------------------------------------------- SwitchingSystem

SwitchingSystem::SwitchingSystem(std::vector<Mat> generators, std::string label)
    : generators_(std::move(generators)), label_(std::move(label)) {
  if (generators_.empty()) fail(Errc::invalid_input, "switching system needs at least one generator");
  const int d = generators_.front().dim();
  for (const auto& g : generators_) {
    if (g.dim() != d) fail(Errc::dimension, "switching system generators differ in dimension");
    if (!g.is_finite()) fail(Errc::invalid_input, "switching system generator has non-finite entries");
  }
}

Mat SwitchingSystem::combination(std::span<const double> weights) const {
  if (weights.size() != generators_.size()) {
    fail(Errc::dimension, "weight vector length " + std::to_string(weights.size()) +
                              " != generator count " + std::to_string(generators_.size()));
  }
  if (const auto v = indicator_index(weights); v >= 0) return generators_[static_cast<std::size_t>(v)];
  Mat m(dim());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) m += weights[i] * generators_[i];
  }
  return m;
}

double SwitchingSystem::max_generator_norm() const {
  double best = 0.0;
  for (const auto& g : generators_) best = std::max(best, opnorm(g));
  return best;
}

// -------------------------------------------------------------- Schedule

Schedule::Schedule(std::size_t weight_count) : width_(weight_count) {
  if (weight_count == 0) fail(Errc::invalid_input, "schedule needs at least one weight per piece");
}

void Schedule::append(double duration, std::span<const double> weights) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    fail(Errc::invalid_input, "schedule piece duration must be positive and finite");
  }
  if (weights.size() != width_) {
    fail(Errc::dimension, "schedule piece has " + std::to_string(weights.size()) + " weights, expected " +
                              std::to_string(width_));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(Errc::invalid_input, "schedule weight outside [0, 1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "schedule weights sum to " << sum << ", not 1";
    fail(Errc::invalid_input, os.str());
  }
  durations_.push_back(duration);
  weights_.insert(weights_.end(), weights.begin(), weights.end());
  vertex_.push_back(indicator_index(weights));
}

void Schedule::append_vertex(double duration, std::size_t generator) {
  if (generator >= width_) fail(Errc::invalid_input, "vertex index out of range");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    fail(Errc::invalid_input, "schedule piece duration must be positive and finite");
  }
  durations_.push_back(duration);
  weights_.resize(weights_.size() + width_, 0.0);
  weights_[weights_.size() - width_ + generator] = 1.0;
  vertex_.push_back(static_cast<std::int32_t>(generator));
}

void Schedule::append(const Schedule& other) {
  if (other.width_ != width_) fail(Errc::dimension, "cannot concatenate schedules of different widths");
  durations_.insert(durations_.end(), other.durations_.begin(), other.durations_.end());
  weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
  vertex_.insert(vertex_.end(), other.vertex_.begin(), other.vertex_.end());
}

void Schedule::reserve(std::size_t pieces) {
  durations_.reserve(pieces);
  weights_.reserve(pieces * width_);
  vertex_.reserve(pieces);
}

std::span<const double> Schedule::weights(std::size_t i) const {
  if (i >= durations_.size()) fail(Errc::invalid_input, "schedule piece index out of range");
  return {weights_.data() + i * width_, width_};
}

std::optional<std::size_t> Schedule::vertex(std::size_t i) const {
  const auto v = vertex_.at(i);
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

double Schedule::total_duration() const {
  // Neumaier summation; chattered schedules carry millions of pieces.
  double sum = 0.0;
  double comp = 0.0;
  for (double d : durations_) {
    const double t = sum + d;
    comp += std::abs(sum) >= std::abs(d) ? (sum - t) + d : (d - t) + sum;
    sum = t;
  }
  return sum + comp;
}

// ---------------------------------------------------------- MeasurableLaw

MeasurableLaw::MeasurableLaw(std::size_t width, Fn fn) : width_(width), fn_(std::move(fn)) {
  if (width == 0) fail(Errc::invalid_input, "measurable law needs at least one weight");
}

MeasurableLaw MeasurableLaw::constant(std::vector<double> weights) {
  const std::size_t n = weights.size();
  return MeasurableLaw(n, [w = std::move(weights)](double, std::span<double> out) {
    std::copy(w.begin(), w.end(), out.begin());
  });
}

MeasurableLaw MeasurableLaw::two_state(std::function<double(double)> alpha) {
  return MeasurableLaw(2, [a = std::move(alpha)](double t, std::span<double> out) {
    const double x = a(t);
    out[0] = 1.0 - x;
    out[1] = x;
  });
}

std::vector<double> MeasurableLaw::operator()(double t) const {
  std::vector<double> out(width_);
  fn_(t, out);
  return out;
}

// -------------------------------------------------------------- evolution

Trajectory evolve(const SwitchingSystem& sys, const Schedule& sched, const Vec& x0,
                  const EvolveOptions& options) {
  if (x0.dim() != sys.dim()) fail(Errc::dimension, "initial state dimension differs from system");
  if (sched.weight_count() != sys.size()) fail(Errc::dimension, "schedule width differs from generator count");
  Trajectory traj;
  traj.schedule = sched;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  double t0 = 0.0;
  Vec x = x0;
  for (std::size_t p = 0; p < sched.size(); ++p) {
    const double d = sched.duration(p);
    const Mat gen = sys.combination(sched.weights(p));
    const double h = options.sample_step;
    if (h > 0.0 && h < d) {
      // Each sample from the piece start, so roundoff does not compound.
      for (std::int64_t m = 1;; ++m) {
        const double local = static_cast<double>(m) * h;
        if (local >= d * (1.0 - 1e-12)) break;
        const Vec y = expm(gen, local) * x;
        check_state(y);
        traj.times.push_back(t0 + local);
        traj.states.push_back(y);
      }
    }
    x = expm(gen, d) * x;
    check_state(x);
    t0 += d;
    traj.times.push_back(t0);
    traj.states.push_back(x);
  }
  return traj;
}

Vec evolve_endpoint(const SwitchingSystem& sys, const Schedule& sched, const Vec& x0) {
  if (x0.dim() != sys.dim()) fail(Errc::dimension, "initial state dimension differs from system");
  if (sched.weight_count() != sys.size()) fail(Errc::dimension, "schedule width differs from generator count");
  Vec x = x0;
  for (std::size_t p = 0; p < sched.size(); ++p) {
    x = expm(sys.combination(sched.weights(p)), sched.duration(p)) * x;
  }
  check_state(x);
  return x;
}

Mat flow_product(const SwitchingSystem& sys, const Schedule& sched) {
  if (sched.weight_count() != sys.size()) fail(Errc::dimension, "schedule width differs from generator count");
  Mat p = Mat::identity(sys.dim());
  for (std::size_t i = 0; i < sched.size(); ++i) {
    p = expm(sys.combination(sched.weights(i)), sched.duration(i)) * p;
  }
  if (!p.is_finite()) fail(Errc::overflow, "flow product left double range");
  return p;
}

// ---------------------------------------------------------- chattering

Schedule chatter_discretize(const MeasurableLaw& law, double horizon, std::uint64_t windows,
                            Execution exec) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail(Errc::invalid_input, "chatter: horizon must be positive");
  if (windows == 0) fail(Errc::invalid_input, "chatter: window count must be >= 1");
  const std::size_t width = law.width();
  const auto k = static_cast<std::int64_t>(windows);
  std::vector<double> occupation(static_cast<std::size_t>(k) * width);
  const VectorIntegrand f = [&law](double t, std::span<double> out) { law(t, out); };
  auto window = [&](std::int64_t j) {
    const double a = horizon * static_cast<double>(j) / static_cast<double>(k);
    const double b = horizon * static_cast<double>(j + 1) / static_cast<double>(k);
    const auto q = integrate_adaptive(f, width, a, b, 1e-10);
    double* occ = occupation.data() + static_cast<std::size_t>(j) * width;
    double rest = b - a;
    for (std::size_t i = 1; i < width; ++i) {
      occ[i] = q.value[i];
      rest -= q.value[i];
    }
    occ[0] = rest;
  };

  if (exec == Execution::parallel) {
    std::atomic<bool> failed{false};
    std::string message;
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (std::int64_t j = 0; j < k; ++j) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        window(j);
      } catch (const std::exception& e) {
        if (!failed.exchange(true)) {
#pragma omp critical(switchgrade_chatter_error)
          message = e.what();
        }
      }
    }
    if (failed) fail(Errc::accuracy, "chatter: " + message);
  } else {
    for (std::int64_t j = 0; j < k; ++j) window(j);
  }

  Schedule sched(width);
  sched.reserve(static_cast<std::size_t>(k) * std::min<std::size_t>(width, 2));
  for (std::int64_t j = 0; j < k; ++j) {
    const double len = horizon / static_cast<double>(k);
    const double* occ = occupation.data() + static_cast<std::size_t>(j) * width;
    for (std::size_t i = 0; i < width; ++i) {
      if (occ[i] < -1e-9 * len) fail(Errc::accuracy, "chatter: law left the simplex (negative occupation)");
      if (occ[i] > 1e-15 * len) sched.append_vertex(occ[i], i);
    }
  }
  return sched;
}

double chatter_constant(double horizon, const SwitchingSystem& sys) {
  return 1.0 / horizon + sys.max_generator_norm();
}

std::uint64_t required_k(double eps, double horizon, double x0_norm, const SwitchingSystem& sys) {
  if (!(eps > 0.0) || !(horizon > 0.0) || !(x0_norm > 0.0)) {
    fail(Errc::invalid_input, "required_k: arguments must be positive");
  }
  const double c = chatter_constant(horizon, sys);
  const double growth = std::exp(c * horizon);
  const double lipschitz = c * growth * x0_norm;
  const double bound = 4.0 * c * lipschitz * horizon * growth;
  const double q = bound / eps;
  if (!std::isfinite(q) || q >= 9.2e18) fail(Errc::range, "required_k: window count overflows 64 bits");
  auto k = static_cast<std::uint64_t>(std::ceil(q));
  k = std::max<std::uint64_t>(k, 1);
  while (static_cast<double>(k) * eps < bound) ++k;
  while (k > 1 && static_cast<double>(k - 1) * eps >= bound) --k;
  return k;
}

SwitchingSystem shift(const SwitchingSystem& sys, double mu) {
  std::vector<Mat> gens;
  gens.reserve(sys.size());
  for (const auto& g : sys.generators()) gens.push_back(g - mu * Mat::identity(sys.dim()));
  std::ostringstream label;
  label.precision(17);
  label << (sys.label().empty() ? "sys" : sys.label()) << " shifted by " << mu;
  return SwitchingSystem(std::move(gens), label.str());
}

}  // namespace switchgrade
