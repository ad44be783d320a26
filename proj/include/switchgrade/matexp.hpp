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

// Small dense linear algebra for switching systems of dimension at most 8:
// value-semantic vectors and matrices, matrix exponentials, Kronecker
// products, spectral norms and eigenvalues.
#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace switchgrade {

inline constexpr int kMaxDim = 8;

/// Real column vector with 1..8 entries.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> entries);
  static Vec from(std::span<const double> entries);
  static Vec unit(int dim, int index);

  int dim() const noexcept { return n_; }
  double& operator[](int i) noexcept { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const noexcept { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> entries() const noexcept { return {v_.data(), static_cast<std::size_t>(n_)}; }
  std::span<double> entries() noexcept { return {v_.data(), static_cast<std::size_t>(n_)}; }

  bool is_finite() const noexcept;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s) noexcept;

  friend bool operator==(const Vec& a, const Vec& b) noexcept;

 private:
  int n_ = 0;
  std::array<double, kMaxDim> v_{};
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double s, Vec v);
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
double max_abs_diff(const Vec& a, const Vec& b);

/// Square real matrix, row-major, dimension 1..8.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim);
  Mat(std::initializer_list<std::initializer_list<double>> rows);
  static Mat identity(int dim);
  static Mat diagonal(std::initializer_list<double> diag);
  static Mat from_row_major(int dim, std::span<const double> entries);

  int dim() const noexcept { return n_; }
  double& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  std::span<const double> entries() const noexcept {
    return {a_.data(), static_cast<std::size_t>(n_ * n_)};
  }

  bool is_finite() const noexcept;
  Mat transposed() const;
  double trace() const noexcept;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s) noexcept;

  friend bool operator==(const Mat& a, const Mat& b) noexcept;

 private:
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);

/// Max-entrywise absolute difference; the comparison used throughout.
double max_abs_diff(const Mat& a, const Mat& b);
double norm1(const Mat& a);

/// e^{tA}. Closed form in dimension 2, degree-13 Pade with scaling and
/// squaring otherwise.
Mat expm(const Mat& a, double t = 1.0);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& u, const Vec& v);

/// Largest singular value, the square root of the top eigenvalue of A^T A.
double opnorm(const Mat& a);

/// Eigenvalues of a symmetric matrix in descending order (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(const Mat& s);

/// All eigenvalues with multiplicity, sorted by real part then imaginary
/// part, both descending.
std::vector<std::complex<double>> eigenvalues(const Mat& a);

/// Solves A X = B by LU with partial pivoting.
Mat solve(const Mat& a, const Mat& b);

}  // namespace switchgrade
