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


// Independent reference computations used only by the tests. None of these
// call into the library's numerical kernels.

#pragma once

#include <algorithm>
#include <complex>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "switchgrade/matexp.hpp"

namespace switchgrade::oracle {

using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline LMat to_long(const Mat& a) {
  LMat m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

inline Mat from_long(const LMat& m) {
  Mat a(static_cast<int>(m.rows()));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) a(i, j) = static_cast<double>(m(i, j));
  return a;
}

// Taylor series in long double after halving the argument until its
// 1-norm is below 1/2, then repeated squaring.
inline Mat series_expm(const Mat& a, double t) {
  LMat x = to_long(a) * static_cast<long double>(t);
  int squarings = 0;
  while (x.cwiseAbs().colwise().sum().maxCoeff() > 0.5L) {
    x /= 2.0L;
    ++squarings;
  }
  const auto n = x.rows();
  LMat sum = LMat::Identity(n, n);
  LMat term = LMat::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x / static_cast<long double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return from_long(sum);
}

// Classical RK4 for x' = A(t) x with a fixed step.
inline Vec rk4(const std::function<Mat(double)>& a, const Vec& x0, double horizon, double h) {
  const auto steps = static_cast<long>(std::llround(horizon / h));
  const double dt = horizon / static_cast<double>(steps);
  Vec x = x0;
  for (long s = 0; s < steps; ++s) {
    const double t = dt * static_cast<double>(s);
    const Vec k1 = a(t) * x;
    const Vec k2 = a(t + dt / 2) * (x + (dt / 2) * k1);
    const Vec k3 = a(t + dt / 2) * (x + (dt / 2) * k2);
    const Vec k4 = a(t + dt) * (x + dt * k3);
    x += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

// max of f over the uniform grid a, a + h, ..., b.
inline double grid_max(const std::function<double(double)>& f, double a, double b, double h) {
  const auto n = static_cast<long>(std::floor((b - a) / h));
  double best = -INFINITY;
  for (long i = 0; i <= n; ++i) best = std::max(best, f(a + h * static_cast<double>(i)));
  return best;
}

// Largest singular value by maximizing |A v| over a unit-circle grid (2D).
inline double circle_opnorm(const Mat& a, int points) {
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const double th = std::numbers::pi * k / points;
    best = std::max(best, norm2(a * Vec{std::cos(th), std::sin(th)}));
  }
  return best;
}

// Dimension of span{products of the generators of length 0..max_len}, by
// full-pivot LU on the vectorized words.
inline int brute_span_rank(const std::vector<Mat>& gens, int max_len) {
  const int d = gens.front().dim();
  std::vector<Mat> words{Mat::identity(d)};
  std::vector<Mat> frontier = words;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Mat> next;
    for (const Mat& w : frontier)
      for (const Mat& g : gens) next.push_back(g * w);
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  Eigen::MatrixXd m(d * d, static_cast<Eigen::Index>(words.size()));
  for (std::size_t c = 0; c < words.size(); ++c)
    for (int i = 0; i < d * d; ++i) m(i, static_cast<Eigen::Index>(c)) = words[c].entries()[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

// Roots of z^2 + p z + q.
inline std::pair<std::complex<double>, std::complex<double>> quadratic_roots(double p, double q) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(p * p / 4 - q));
  return {-p / 2 + disc, -p / 2 - disc};
}

}  // namespace switchgrade::oracle
