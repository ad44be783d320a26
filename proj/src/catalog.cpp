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

#include "switchgrade/catalog.hpp"

#include <cmath>
#include <numbers>

#include "switchgrade/lyapunov.hpp"

namespace switchgrade::catalog {

Mat A0() { return Mat::diagonal({0.0, -1.0}); }
Mat A1() { return Mat{{-1.0, 1.0}, {-1.0, -1.0}}; }

Mat B0_unshifted() { return Mat{{0.0, -2.0}, {0.5, 0.0}}; }
Mat B1_unshifted() { return Mat{{0.0, -0.5}, {2.0, 0.0}}; }

double lambda_star() {
  static const double value = lambda_planar_angular(system_unshifted()).value();
  return value;
}

double log4_over_pi() { return std::log(4.0) / std::numbers::pi; }

Mat B0(double lambda) { return B0_unshifted() - lambda * Mat::identity(2); }
Mat B1(double lambda) { return B1_unshifted() - lambda * Mat::identity(2); }

Mat X0(double lambda) { return kron(A0(), Mat::identity(2)) + kron(Mat::identity(2), B0(lambda)); }
Mat X1(double lambda) { return kron(A0(), Mat::identity(2)) + kron(Mat::identity(2), B1(lambda)); }
Mat X2() { return kron(A1(), Mat::identity(2)); }

SwitchingSystem system_A() { return SwitchingSystem({A0(), A1()}, "A"); }
SwitchingSystem system_unshifted() { return SwitchingSystem({B0_unshifted(), B1_unshifted()}, "B unshifted"); }
SwitchingSystem system_B(double lambda) { return SwitchingSystem({B0(lambda), B1(lambda)}, "B"); }
SwitchingSystem system_B0(double lambda) {
  return SwitchingSystem({B0(lambda), B1(lambda), Mat(2)}, "B0");
}
SwitchingSystem system_X(double lambda) { return SwitchingSystem({X0(lambda), X1(lambda), X2()}, "X"); }

Mat cgm_M0() { return Mat::diagonal({0.0, -1.0}); }
Mat cgm_M1(double alpha) { return Mat{{alpha, 3.0}, {-0.6, 0.7}}; }

}  // namespace switchgrade::catalog
