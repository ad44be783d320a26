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

// Switching-system model: convex hulls of finitely many generators,
// piecewise-constant switching laws and their exact evolution, plus the
// chattering reduction of a measurable law to a vertex-valued schedule.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "switchgrade/matexp.hpp"
#include "switchgrade/parallel.hpp"

namespace switchgrade {

/// Convex hull of a nonempty list of same-dimension generators.
class SwitchingSystem {
 public:
  explicit SwitchingSystem(std::vector<Mat> generators, std::string label = {});

  int dim() const noexcept { return generators_.front().dim(); }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<Mat>& generators() const noexcept { return generators_; }
  const Mat& operator[](std::size_t i) const { return generators_.at(i); }
  const std::string& label() const noexcept { return label_; }

  /// sum_i w_i A_i; an exact 0/1 indicator returns the generator itself.
  Mat combination(std::span<const double> weights) const;
  double max_generator_norm() const;

 private:
  std::vector<Mat> generators_;
  std::string label_;
};

/// Piecewise-constant switching law: positive durations, each paired with a
/// weight vector on the probability simplex (one weight per generator).
class Schedule {
 public:
  static constexpr double kSimplexTolerance = 1e-12;

  explicit Schedule(std::size_t weight_count);

  void append(double duration, std::span<const double> weights);
  void append_vertex(double duration, std::size_t generator);
  void append(const Schedule& other);
  void reserve(std::size_t pieces);

  std::size_t size() const noexcept { return durations_.size(); }
  bool empty() const noexcept { return durations_.empty(); }
  std::size_t weight_count() const noexcept { return width_; }
  double duration(std::size_t i) const { return durations_.at(i); }
  std::span<const double> weights(std::size_t i) const;
  /// Generator index when piece i is a 0/1 indicator.
  std::optional<std::size_t> vertex(std::size_t i) const;
  double total_duration() const;

 private:
  std::size_t width_;
  std::vector<double> durations_;
  std::vector<double> weights_;
  std::vector<std::int32_t> vertex_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  Schedule schedule{1};
};

/// Measurable switching law t -> simplex weights over the generators.
class MeasurableLaw {
 public:
  using Fn = std::function<void(double t, std::span<double> weights)>;

  MeasurableLaw(std::size_t width, Fn fn);
  static MeasurableLaw constant(std::vector<double> weights);
  /// Two-generator law with weights (1 - alpha(t), alpha(t)).
  static MeasurableLaw two_state(std::function<double(double)> alpha);

  std::size_t width() const noexcept { return width_; }
  void operator()(double t, std::span<double> out) const { fn_(t, out); }
  std::vector<double> operator()(double t) const;

 private:
  std::size_t width_;
  Fn fn_;
};

struct EvolveOptions {
  /// Spacing of intra-piece samples; <= 0 keeps only piece boundaries.
  double sample_step = 1e-2;
};

Trajectory evolve(const SwitchingSystem& sys, const Schedule& sched, const Vec& x0,
                  const EvolveOptions& options = {});

/// Final state only; the same per-piece exponentials as evolve.
Vec evolve_endpoint(const SwitchingSystem& sys, const Schedule& sched, const Vec& x0);

/// Ordered product e^{t_k A_k} ... e^{t_1 A_1} of the schedule's pieces.
Mat flow_product(const SwitchingSystem& sys, const Schedule& sched);

/// Vertex schedule of total duration T whose occupation time for generator i
/// on each window [jT/k, (j+1)T/k) equals the integral of the law's weight i
/// there. Pieces within a window follow generator index order.
Schedule chatter_discretize(const MeasurableLaw& law, double horizon, std::uint64_t windows,
                            Execution exec = Execution::parallel);

/// Least k with k * eps >= 4 C K T e^{CT}, where C = 1/T + max_i |A_i| and
/// K = C e^{CT} |x(0)|.
std::uint64_t required_k(double eps, double horizon, double x0_norm, const SwitchingSystem& sys);

/// The constant C = 1/T + max_i |A_i| of the chattering bound.
double chatter_constant(double horizon, const SwitchingSystem& sys);

/// Replaces every generator A by A - mu I.
SwitchingSystem shift(const SwitchingSystem& sys, double mu);

}  // namespace switchgrade
