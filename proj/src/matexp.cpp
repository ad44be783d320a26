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

#include "switchgrade/matexp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "switchgrade/error.hpp"

namespace switchgrade {
namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    fail(Errc::dimension, "dimension " + std::to_string(n) + " outside 1.." + std::to_string(kMaxDim));
  }
}

void check_same(int a, int b, const char* op) {
  if (a != b) {
    fail(Errc::dimension, std::string(op) + ": dimension mismatch " + std::to_string(a) + " vs " +
                              std::to_string(b));
  }
}

void check_finite(const Mat& a, const char* op) {
  if (!a.is_finite()) fail(Errc::invalid_input, std::string(op) + ": non-finite matrix entry");
}

// Pade(13) numerator coefficients.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

Mat expm2(const Mat& m) {
  if (m(0, 1) == 0.0 && m(1, 0) == 0.0) return Mat::diagonal({std::exp(m(0, 0)), std::exp(m(1, 1))});
  const double tau = 0.5 * (m(0, 0) + m(1, 1));
  const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
  // N = M - tau*I is traceless, N^2 = q*I.
  const double q = half_gap * half_gap + m(0, 1) * m(1, 0);
  double c = 0.0;  // coefficient of I
  double s = 0.0;  // coefficient of N
  if (std::abs(4.0 * q) < 1e-12) {
    c = 1.0 + q / 2.0 + q * q / 24.0;
    s = 1.0 + q / 6.0 + q * q / 120.0;
  } else if (q > 0.0) {
    const double r = std::sqrt(q);
    c = std::cosh(r);
    s = std::sinh(r) / r;
  } else {
    const double w = std::sqrt(-q);
    c = std::cos(w);
    s = std::sin(w) / w;
  }
  const double e = std::exp(tau);
  Mat out(2);
  out(0, 0) = e * (c + s * half_gap);
  out(1, 1) = e * (c - s * half_gap);
  out(0, 1) = e * s * m(0, 1);
  out(1, 0) = e * s * m(1, 0);
  return out;
}

Mat expm_pade13(const Mat& m) {
  const int n = m.dim();
  const double nrm = norm1(m);
  int squarings = 0;
  if (nrm > 0.0) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm))) + 1);
  const Mat a = std::ldexp(1.0, -squarings) * m;
  const Mat id = Mat::identity(n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const auto& b = kPade13;
  const Mat u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                      b[3] * a2 + b[1] * id;
  const Mat u = a * u_inner;
  const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                b[0] * id;
  Mat r = solve(v - u, v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

std::array<std::complex<double>, 2> eig2(double a, double b, double c, double d) {
  const double tau = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double disc = half_gap * half_gap + b * c;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    // Avoid cancellation: form the larger-magnitude root first.
    const double big = tau >= 0.0 ? tau + r : tau - r;
    const double det = a * d - b * c;
    const double small = big != 0.0 ? det / big : 0.0;
    return {std::complex<double>(big, 0.0), std::complex<double>(small, 0.0)};
  }
  const double w = std::sqrt(-disc);
  return {std::complex<double>(tau, w), std::complex<double>(tau, -w)};
}

// Partition indices into blocks that the matrix does not couple.
std::vector<std::vector<int>> decoupled_blocks(const Mat& a) {
  const int n = a.dim();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && a(i, j) != 0.0) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
  }
  return blocks;
}

}  // namespace

// ---------------------------------------------------------------- Vec

Vec::Vec(int dim) : n_(dim) { check_dim(dim); }

Vec::Vec(std::initializer_list<double> entries) : n_(static_cast<int>(entries.size())) {
  check_dim(n_);
  std::copy(entries.begin(), entries.end(), v_.begin());
}

Vec Vec::from(std::span<const double> entries) {
  Vec v(static_cast<int>(entries.size()));
  std::copy(entries.begin(), entries.end(), v.v_.begin());
  return v;
}

Vec Vec::unit(int dim, int index) {
  Vec v(dim);
  if (index < 0 || index >= dim) fail(Errc::invalid_input, "unit vector index out of range");
  v[index] = 1.0;
  return v;
}

bool Vec::is_finite() const noexcept {
  return std::all_of(v_.begin(), v_.begin() + n_, [](double x) { return std::isfinite(x); });
}

Vec& Vec::operator+=(const Vec& o) {
  check_same(n_, o.n_, "vector +");
  for (int i = 0; i < n_; ++i) (*this)[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  check_same(n_, o.n_, "vector -");
  for (int i = 0; i < n_; ++i) (*this)[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double s) noexcept {
  for (int i = 0; i < n_; ++i) (*this)[i] *= s;
  return *this;
}

bool operator==(const Vec& a, const Vec& b) noexcept {
  return a.n_ == b.n_ && std::equal(a.v_.begin(), a.v_.begin() + a.n_, b.v_.begin());
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(double s, Vec v) { return v *= s; }

double dot(const Vec& a, const Vec& b) {
  check_same(a.dim(), b.dim(), "dot");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& v) {
  double scale = 0.0;
  for (int i = 0; i < v.dim(); ++i) scale = std::max(scale, std::abs(v[i]));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (int i = 0; i < v.dim(); ++i) {
    const double x = v[i] / scale;
    s += x * x;
  }
  return scale * std::sqrt(s);
}

double max_abs_diff(const Vec& a, const Vec& b) {
  check_same(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------- Mat

Mat::Mat(int dim) : n_(dim) { check_dim(dim); }

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : n_(static_cast<int>(rows.size())) {
  check_dim(n_);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) fail(Errc::dimension, "matrix literal is not square");
    int j = 0;
    for (double x : row) (*this)(i, j++) = x;
    ++i;
  }
}

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::initializer_list<double> diag) {
  Mat m(static_cast<int>(diag.size()));
  int i = 0;
  for (double x : diag) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

Mat Mat::from_row_major(int dim, std::span<const double> entries) {
  Mat m(dim);
  if (entries.size() != static_cast<std::size_t>(dim * dim)) {
    fail(Errc::dimension, "row-major entry count does not match dimension");
  }
  std::copy(entries.begin(), entries.end(), m.a_.begin());
  return m;
}

bool Mat::is_finite() const noexcept {
  return std::all_of(a_.begin(), a_.begin() + n_ * n_, [](double x) { return std::isfinite(x); });
}

Mat Mat::transposed() const {
  Mat t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::trace() const noexcept {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

Mat& Mat::operator+=(const Mat& o) {
  check_same(n_, o.n_, "matrix +");
  for (int k = 0; k < n_ * n_; ++k) a_[static_cast<std::size_t>(k)] += o.a_[static_cast<std::size_t>(k)];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  check_same(n_, o.n_, "matrix -");
  for (int k = 0; k < n_ * n_; ++k) a_[static_cast<std::size_t>(k)] -= o.a_[static_cast<std::size_t>(k)];
  return *this;
}

Mat& Mat::operator*=(double s) noexcept {
  for (int k = 0; k < n_ * n_; ++k) a_[static_cast<std::size_t>(k)] *= s;
  return *this;
}

bool operator==(const Mat& a, const Mat& b) noexcept {
  return a.n_ == b.n_ && std::equal(a.a_.begin(), a.a_.begin() + a.n_ * a.n_, b.a_.begin());
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  check_same(a.dim(), b.dim(), "matrix *");
  const int n = a.dim();
  Mat c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vec operator*(const Mat& a, const Vec& v) {
  check_same(a.dim(), v.dim(), "matrix-vector *");
  const int n = a.dim();
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  check_same(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

double norm1(const Mat& a) {
  double best = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

// ---------------------------------------------------------------- ops

Mat expm(const Mat& a, double t) {
  check_finite(a, "expm");
  if (!std::isfinite(t) || t < 0.0) fail(Errc::invalid_input, "expm: time must be finite and >= 0");
  const Mat m = t * a;
  Mat out(a.dim());
  switch (a.dim()) {
    case 1:
      out(0, 0) = std::exp(m(0, 0));
      break;
    case 2:
      out = expm2(m);
      break;
    default:
      out = expm_pade13(m);
      break;
  }
  if (!out.is_finite()) fail(Errc::overflow, "expm: result exceeds double range");
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  const int n = a.dim() * b.dim();
  if (n > kMaxDim) fail(Errc::dimension, "kron: product dimension " + std::to_string(n) + " exceeds 8");
  Mat out(n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l) out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return out;
}

Vec kron(const Vec& u, const Vec& v) {
  const int n = u.dim() * v.dim();
  if (n > kMaxDim) fail(Errc::dimension, "kron: product dimension " + std::to_string(n) + " exceeds 8");
  Vec out(n);
  for (int i = 0; i < u.dim(); ++i)
    for (int k = 0; k < v.dim(); ++k) out[i * v.dim() + k] = u[i] * v[k];
  return out;
}

std::vector<double> symmetric_eigenvalues(const Mat& s_in) {
  const int n = s_in.dim();
  if (n == 1) return {s_in(0, 0)};
  if (n == 2) {
    const double mid = 0.5 * (s_in(0, 0) + s_in(1, 1));
    const double half = 0.5 * (s_in(0, 0) - s_in(1, 1));
    const double off = 0.5 * (s_in(0, 1) + s_in(1, 0));
    const double r = std::hypot(half, off);
    return {mid + r, mid - r};
  }
  Mat s = s_in;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x = s(i, j) * s(i, j);
        total += x;
        if (i != j) off += x;
      }
    }
    if (off <= 1e-32 * total || off == 0.0) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double skp = s(k, p);
          const double skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          const double spk = s(p, k);
          const double sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = s(i, i);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double opnorm(const Mat& a) {
  check_finite(a, "opnorm");
  if (a.dim() == 1) return std::abs(a(0, 0));
  // Scale first so A^T A cannot overflow for large finite entries.
  double scale = 0.0;
  for (double x : a.entries()) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  const Mat b = (1.0 / scale) * a;
  const double top = symmetric_eigenvalues(b.transposed() * b).front();
  return scale * std::sqrt(std::max(0.0, top));
}

std::vector<std::complex<double>> eigenvalues(const Mat& a) {
  check_finite(a, "eigenvalues");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (const auto& block : decoupled_blocks(a)) {
    if (block.size() == 1) {
      out.emplace_back(a(block[0], block[0]), 0.0);
    } else if (block.size() == 2) {
      const auto e = eig2(a(block[0], block[0]), a(block[0], block[1]), a(block[1], block[0]),
                          a(block[1], block[1]));
      out.insert(out.end(), e.begin(), e.end());
    } else {
      const auto m = static_cast<Eigen::Index>(block.size());
      Eigen::MatrixXd sub(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          sub(i, j) = a(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
      Eigen::EigenSolver<Eigen::MatrixXd> solver(sub, false);
      if (solver.info() != Eigen::Success) fail(Errc::accuracy, "eigenvalues: QR iteration did not converge");
      for (Eigen::Index i = 0; i < m; ++i) out.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return out;
}

Mat solve(const Mat& a_in, const Mat& b_in) {
  check_same(a_in.dim(), b_in.dim(), "solve");
  const int n = a_in.dim();
  Mat a = a_in;
  Mat b = b_in;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) fail(Errc::invalid_input, "solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(b(piv, j), b(col, j));
      }
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      for (int j = 0; j < n; ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    for (int j = 0; j < n; ++j) {
      double s = b(col, j);
      for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
      b(col, j) = s / a(col, col);
    }
  }
  return b;
}

}  // namespace switchgrade
