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

#include "switchgrade/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "switchgrade/error.hpp"

namespace switchgrade {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  int depth;
};

// One G7K15 panel; returns the largest component error.
double gk15(const VectorIntegrand& f, std::size_t width, double a, double b,
            std::vector<double>& kronrod, std::vector<double>& gauss,
            std::vector<double>& scratch_lo, std::vector<double>& scratch_hi) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  gauss.assign(width, 0.0);
  kronrod.assign(width, 0.0);
  f(center, scratch_lo);
  for (std::size_t c = 0; c < width; ++c) {
    kronrod[c] = kKronrodWeights[7] * scratch_lo[c];
    gauss[c] = kGaussWeights[3] * scratch_lo[c];
  }
  for (std::size_t k = 0; k < 7; ++k) {
    const double dx = half * kKronrodNodes[k];
    f(center - dx, scratch_lo);
    f(center + dx, scratch_hi);
    for (std::size_t c = 0; c < width; ++c) {
      const double pair = scratch_lo[c] + scratch_hi[c];
      kronrod[c] += kKronrodWeights[k] * pair;
      if (k % 2 == 1) gauss[c] += kGaussWeights[k / 2] * pair;
    }
  }
  double err = 0.0;
  for (std::size_t c = 0; c < width; ++c) {
    kronrod[c] *= half;
    err = std::max(err, std::abs(kronrod[c] - half * gauss[c]));
  }
  return err;
}

}  // namespace

QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t width, double a,
                                    double b, double abs_tol, int max_depth) {
  if (!(b >= a) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(Errc::invalid_input, "integrate_adaptive: bad interval");
  }
  QuadratureResult out;
  out.value.assign(width, 0.0);
  if (b == a) return out;
  struct Done {
    Panel panel;
    double err;
    std::vector<double> value;
  };
  std::vector<double> gauss(width), lo(width), hi(width);
  auto evaluate = [&](const Panel& p) {
    Done d{p, 0.0, std::vector<double>(width)};
    d.err = gk15(f, width, p.a, p.b, d.value, gauss, lo, hi);
    out.evaluations += 15;
    return d;
  };
  // Global strategy: keep bisecting the panel with the largest error until
  // the summed estimate meets the tolerance.
  auto worse = [](const Done& x, const Done& y) { return x.err < y.err; };
  std::vector<Done> heap{evaluate({a, b, 0})};
  double total_err = heap.front().err;
  while (total_err > abs_tol) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Done top = std::move(heap.back());
    heap.pop_back();
    if (top.panel.depth >= max_depth) {
      fail(Errc::accuracy, "integrate_adaptive: no convergence on [" + std::to_string(top.panel.a) + ", " +
                               std::to_string(top.panel.b) + "]");
    }
    const double mid = 0.5 * (top.panel.a + top.panel.b);
    total_err -= top.err;
    for (const Panel& half : {Panel{top.panel.a, mid, top.panel.depth + 1}, Panel{mid, top.panel.b, top.panel.depth + 1}}) {
      heap.push_back(evaluate(half));
      total_err += heap.back().err;
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }
  // Sum left to right so the result does not depend on heap order.
  std::sort(heap.begin(), heap.end(), [](const Done& x, const Done& y) { return x.panel.a < y.panel.a; });
  for (const Done& d : heap) {
    for (std::size_t c = 0; c < width; ++c) out.value[c] += d.value[c];
    out.error_estimate += d.err;
  }
  return out;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  const VectorIntegrand g = [&f](double t, std::span<double> out) { out[0] = f(t); };
  return integrate_adaptive(g, 1, a, b, abs_tol, max_depth).value[0];
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals,
               Execution exec) {
  if (intervals < 2 || intervals % 2 != 0) {
    fail(Errc::invalid_input, "simpson: interval count must be even and >= 2");
  }
  const double h = (b - a) / intervals;
  const int pairs = intervals / 2;
  constexpr int kBlock = 512;
  const int blocks = (pairs + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
  auto block_sum = [&](int blk) {
    const int first = blk * kBlock;
    const int last = std::min(pairs, first + kBlock);
    double s = 0.0;
    for (int p = first; p < last; ++p) {
      const double x0 = a + (2 * p) * h;
      const double x1 = a + (2 * p + 1) * h;
      const double x2 = a + (2 * p + 2) * h;
      s += f(x0) + 4.0 * f(x1) + f(x2);
    }
    return s;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) num_threads(worker_threads())
    for (int blk = 0; blk < blocks; ++blk) partial[static_cast<std::size_t>(blk)] = block_sum(blk);
  } else {
    for (int blk = 0; blk < blocks; ++blk) partial[static_cast<std::size_t>(blk)] = block_sum(blk);
  }
  double s = 0.0;
  for (double x : partial) s += x;
  return s * h / 3.0;
}

}  // namespace switchgrade
