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

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "switchgrade/parallel.hpp"

namespace switchgrade {

/// Integrand writing `width` component values at t into the output span.
using VectorIntegrand = std::function<void(double t, std::span<double> out)>;

struct QuadratureResult {
  std::vector<double> value;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b] for a vector-valued integrand.
/// Bisects the worst panel until the summed error estimate (max over
/// components) is below abs_tol; throws
/// Errc::accuracy when the worst panel is already max_depth deep.
QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t width, double a,
                                    double b, double abs_tol = 1e-10, int max_depth = 40);

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 40);

/// Composite Simpson on [a, b] with `intervals` (even) subintervals. The sum
/// is accumulated in fixed blocks so the parallel path matches the serial one
/// bit for bit.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals,
               Execution exec = Execution::serial);

}  // namespace switchgrade
