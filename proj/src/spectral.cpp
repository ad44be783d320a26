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

#include "switchgrade/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>

#include "switchgrade/error.hpp"

namespace switchgrade {
namespace {

using Eigen::MatrixXd;

MatrixXd to_eigen(const Mat& a) {
  MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  return m;
}

// Orthonormal basis of the column span, dropping directions whose singular
// value is below cutoff * sigma_max.
MatrixXd column_basis(const MatrixXd& cols, double cutoff) {
  if (cols.cols() == 0) return MatrixXd(cols.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(cols, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return MatrixXd(cols.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Orthonormal basis of ker(M); singular values below tol * max(1, sigma_max)
// count as zero.
MatrixXd null_space(const MatrixXd& m, double tol) {
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol * scale) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

bool preserves(const std::vector<MatrixXd>& gens, const MatrixXd& q) {
  const MatrixXd proj = MatrixXd::Identity(q.rows(), q.rows()) - q * q.transpose();
  for (const auto& g : gens) {
    const double scale = std::max(1.0, g.norm());
    if ((proj * g * q).cwiseAbs().maxCoeff() > 1e-8 * scale) return false;
  }
  return true;
}

// Basis (as matrices) of the span of all nonempty products of the generators.
std::vector<MatrixXd> algebra_basis(const std::vector<MatrixXd>& gens, double cutoff) {
  const Eigen::Index d = gens.front().rows();
  const Eigen::Index d2 = d * d;
  auto vec_of = [d2](const MatrixXd& m) {
    Eigen::VectorXd v = m.reshaped<Eigen::RowMajor>();
    const double n = v.norm();
    if (n > 0.0) v /= n;
    return v;
  };
  MatrixXd start(d2, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t g = 0; g < gens.size(); ++g) start.col(static_cast<Eigen::Index>(g)) = vec_of(gens[g]);
  MatrixXd basis = column_basis(start, cutoff);
  for (Eigen::Index iter = 0; iter < d2; ++iter) {
    const Eigen::Index r = basis.cols();
    if (r == d2 || r == 0) break;
    MatrixXd cols(d2, r + r * static_cast<Eigen::Index>(gens.size()));
    cols.leftCols(r) = basis;
    Eigen::Index c = r;
    for (Eigen::Index k = 0; k < r; ++k) {
      const MatrixXd b = basis.col(k).reshaped<Eigen::RowMajor>(d, d);
      for (const auto& g : gens) cols.col(c++) = vec_of(g * b);
    }
    MatrixXd next = column_basis(cols, cutoff);
    if (next.cols() == r) break;
    basis = std::move(next);
  }
  std::vector<MatrixXd> out;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k).reshaped<Eigen::RowMajor>(d, d));
  return out;
}

// Smallest subspace containing the columns of v and closed under gens.
MatrixXd submodule(const std::vector<MatrixXd>& gens, const MatrixXd& v) {
  MatrixXd q = column_basis(v, 1e-7);
  while (q.cols() > 0 && q.cols() < q.rows()) {
    MatrixXd cols(q.rows(), q.cols() * static_cast<Eigen::Index>(gens.size() + 1));
    cols.leftCols(q.cols()) = q;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      cols.middleCols(q.cols() * static_cast<Eigen::Index>(g + 1), q.cols()) = gens[g] * q;
    }
    MatrixXd next = column_basis(cols, 1e-7);
    if (next.cols() == q.cols()) break;
    q = std::move(next);
  }
  return q;
}

// Singular elements p(m) of the algebra, one per real eigenvalue or complex
// pair of m; their kernels are real.
std::vector<MatrixXd> singular_kernels(const MatrixXd& m) {
  std::vector<MatrixXd> out;
  const Eigen::Index d = m.rows();
  const MatrixXd id = MatrixXd::Identity(d, d);
  const Eigen::VectorXcd eig = m.eigenvalues();
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    const std::complex<double> z = eig(k);
    if (z.imag() < 0.0) continue;
    MatrixXd ker;
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z))) {
      ker = null_space(m - z.real() * id, 1e-7);
    } else {
      const MatrixXd shifted = m - z.real() * id;
      ker = null_space(shifted * shifted + z.imag() * z.imag() * id, 1e-7);
    }
    if (ker.cols() > 0) out.push_back(std::move(ker));
  }
  return out;
}

// Norton's criterion, searched constructively: for elements of the algebra
// (plus identity) take the kernel of a singular polynomial in them and close
// each kernel vector under the generators. A reducible module yields a proper
// submodule this way for the original or the transposed generators.
std::optional<MatrixXd> proper_submodule(const std::vector<MatrixXd>& gens) {
  const Eigen::Index d = gens.front().rows();
  const std::vector<MatrixXd> alg = algebra_basis(gens, 1e-9);
  std::vector<MatrixXd> elements = alg;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < 8; ++k) {
    MatrixXd m = MatrixXd::Zero(d, d);
    for (const auto& a : alg) m += normal(rng) * a;
    elements.push_back(std::move(m));
  }
  for (const auto& m : elements) {
    for (const auto& ker : singular_kernels(m)) {
      for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        MatrixXd q = submodule(gens, ker.col(c));
        if (q.cols() > 0 && q.cols() < d) return q;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

double spectral_abscissa(const Mat& a) { return eigenvalues(a).front().real(); }

bool is_hurwitz(const Mat& a, double tol) { return spectral_abscissa(a) < -tol; }

int algebra_closure_rank(const SwitchingSystem& sys, double cutoff) {
  std::vector<MatrixXd> gens;
  for (const auto& g : sys.generators()) gens.push_back(to_eigen(g));
  return static_cast<int>(algebra_basis(gens, cutoff).size());
}

std::optional<std::vector<Vec>> find_invariant_subspace(const SwitchingSystem& sys) {
  const int d = sys.dim();
  std::vector<MatrixXd> gens, transposed;
  for (const auto& g : sys.generators()) {
    gens.push_back(to_eigen(g));
    transposed.push_back(gens.back().transpose());
  }
  std::optional<MatrixXd> q = proper_submodule(gens);
  if (!q) {
    // W invariant under every transpose means its complement is invariant.
    if (const auto w = proper_submodule(transposed)) q = null_space(w->transpose(), 1e-9);
  }
  if (!q || !preserves(gens, *q)) return std::nullopt;
  std::vector<Vec> basis;
  for (Eigen::Index c = 0; c < q->cols(); ++c) {
    const Eigen::VectorXd col = q->col(c);
    basis.push_back(Vec::from(std::span<const double>(col.data(), static_cast<std::size_t>(d))));
  }
  return basis;
}

bool is_irreducible(const SwitchingSystem& sys) {
  const int d = sys.dim();
  if (d == 1) return true;
  if (d == 2) {
    const Mat* pivot = nullptr;
    for (const auto& g : sys.generators()) {
      if (eigenvalues(g).front().imag() != 0.0) return true;  // no real eigenvector at all
      const bool scalar = g(0, 1) == 0.0 && g(1, 0) == 0.0 && g(0, 0) == g(1, 1);
      if (!scalar && pivot == nullptr) pivot = &g;
    }
    if (pivot == nullptr) return false;  // all scalar: every line is invariant
    const Mat& p = *pivot;
    std::vector<Vec> lines;
    for (const auto& z : eigenvalues(p)) {
      const double lam = z.real();
      Vec a{p(0, 1), lam - p(0, 0)};
      Vec b{lam - p(1, 1), p(1, 0)};
      Vec v = norm2(a) >= norm2(b) ? a : b;
      v *= 1.0 / norm2(v);
      lines.push_back(v);
    }
    for (const auto& v : lines) {
      bool common = true;
      for (const auto& g : sys.generators()) {
        const Vec gv = g * v;
        const Vec resid = gv - dot(v, gv) * v;
        if (norm2(resid) > 1e-9 * std::max(1.0, opnorm(g))) common = false;
      }
      if (common) return false;
    }
    return true;
  }
  if (algebra_closure_rank(sys) == d * d) return true;
  if (find_invariant_subspace(sys)) return false;
  fail(Errc::inconclusive, "is_irreducible: algebra rank below d^2 and no invariant subspace found");
}

}  // namespace switchgrade
