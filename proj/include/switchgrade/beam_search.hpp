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

// Beam search over vertex schedules of fixed total duration.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "switchgrade/matexp.hpp"
#include "switchgrade/parallel.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade {

/// Durations step * m for m in multiples. Accumulated time is tracked in
/// whole steps, so bucket keys are exact integers.
struct DurationGrid {
  double step = 0.0;
  std::vector<int> multiples;

  /// {step * j : j = 1..count}.
  static DurationGrid uniform(double step, int count);
  /// Recovers a common step from explicit values, which must all be integer
  /// multiples of it (relative tolerance 1e-9).
  static DurationGrid from_values(const std::vector<double>& values);
  /// pi/64 * j for j = 1..64.
  static DurationGrid standard();

  double duration(std::size_t j) const { return step * multiples.at(j); }
  void validate() const;
};

struct BeamOptions {
  DurationGrid grid = DurationGrid::standard();
  int beam = 64;
  Execution execution = Execution::parallel;
  /// Cap on scored candidates; 0 means unlimited. When the projected count
  /// exceeds it the beam is narrowed and the result flagged low-confidence.
  std::uint64_t max_expansions = 0;
  /// When positive, a candidate whose state lies within this relative
  /// max-entry distance of a better-ranked one in the same bucket is dropped.
  double merge_tolerance = 0.0;
  /// Endpoint searches only: ranks partial states in place of the Euclidean
  /// norm. The reported score is still the endpoint's Euclidean norm.
  std::function<double(const Vec&)> potential;
};

struct BeamStep {
  std::size_t generator;
  double duration;
};

template <class State>
struct BeamResult {
  double score = 0.0;
  State state;
  std::vector<BeamStep> witness;
  bool low_confidence = false;
  int beam_used = 0;
  std::uint64_t expansions = 0;
};

/// Maximizes opnorm(e^{t_k A_{i_k}} ... e^{t_1 A_{i_1}}) over vertex sequences
/// with grid durations summing to T. If T is not a whole number of steps the
/// leftover time is spent as one final piece on the best generator.
BeamResult<Mat> search_products(const SwitchingSystem& sys, double horizon,
                                const BeamOptions& options = {});

/// Same search maximizing the Euclidean norm of the endpoint from z0.
BeamResult<Vec> search_endpoints(const SwitchingSystem& sys, const Vec& z0, double horizon,
                                 const BeamOptions& options = {});

/// The witness as a vertex schedule.
Schedule witness_schedule(const std::vector<BeamStep>& witness, std::size_t generators);

}  // namespace switchgrade
