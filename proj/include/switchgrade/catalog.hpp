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

// The concrete matrices and systems studied by the library.
#pragma once

#include "switchgrade/matexp.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade::catalog {

/// diag(0, -1).
Mat A0();
/// [[-1, 1], [-1, -1]]: e^{tA1} = e^{-t} R(-t).
Mat A1();

/// The rotation pair before shifting.
Mat B0_unshifted();
Mat B1_unshifted();

/// Top exponent of the unshifted pair, computed once by the angular method
/// and cached for the process.
double lambda_star();

/// log 4 / pi, the lower bound the pi/2 product witness gives for lambda_star.
double log4_over_pi();

Mat B0(double lambda = lambda_star());
Mat B1(double lambda = lambda_star());

/// A0 (x) I + I (x) B0, A0 (x) I + I (x) B1, A1 (x) I.
Mat X0(double lambda = lambda_star());
Mat X1(double lambda = lambda_star());
Mat X2();

SwitchingSystem system_A();
SwitchingSystem system_unshifted();
/// {B0, B1}: the shifted pair, top exponent 0.
SwitchingSystem system_B(double lambda = lambda_star());
/// {B0, B1, 0}.
SwitchingSystem system_B0(double lambda = lambda_star());
/// {X0, X1, X2}.
SwitchingSystem system_X(double lambda = lambda_star());

/// The two generators of the planar example whose extremal norm is not
/// strictly convex: diag(0, -1) and [[alpha, 3], [-3/5, 7/10]].
Mat cgm_M0();
Mat cgm_M1(double alpha);

}  // namespace switchgrade::catalog
