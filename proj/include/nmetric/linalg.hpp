#pragma once

// Small dense kernels: determinant, square root of a Gram determinant and a
// one-sided Jacobi SVD. Everything is templated on the scalar type and takes
// Eigen expressions; storage is plain Eigen dense matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "nmetric/error.hpp"

namespace nmetric {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;
using Index = Eigen::Index;

/// Relative pivot threshold below which a Gram matrix is treated as singular.
inline constexpr double kGramPivotTolerance = 1e-12;

/// Determinant by LU with partial pivoting.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw UsageError("det: matrix is not square");
  }
  Matrix<Scalar> lu = m;
  const Index n = lu.rows();
  Scalar result(1);
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    for (Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    }
    if (lu(pivot, k) == Scalar(0)) return Scalar(0);
    if (pivot != k) {
      lu.row(pivot).swap(lu.row(k));
      result = -result;
    }
    const Index tail = n - k - 1;
    for (Index i = k + 1; i < n; ++i) {
      const Scalar factor = lu(i, k) / lu(k, k);
      lu.row(i).tail(tail) -= factor * lu.row(k).tail(tail);
    }
    result *= lu(k, k);
  }
  return result;
}

/// Square root of det(G) for a symmetric positive semidefinite G.
///
/// Uses a diagonally pivoted Cholesky elimination. With scale = max diagonal
/// entry, a pivot in [-1e-12 scale, 1e-12 scale] means the matrix is singular
/// to working precision and the result is exactly 0; a pivot below
/// -1e-12 scale means G cannot be a Gram matrix and InvalidGram is thrown.
template <typename Derived>
typename Derived::Scalar gram_det_sqrt(const Eigen::MatrixBase<Derived>& g) {
  using Scalar = typename Derived::Scalar;
  if (g.rows() != g.cols()) {
    throw UsageError("gram_det_sqrt: matrix is not square");
  }
  const Index n = g.rows();
  if (n == 0) return Scalar(1);

  const Scalar magnitude = std::max(Scalar(1), g.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(g(i, j) - g(j, i)) > Scalar(kGramPivotTolerance) * magnitude) {
        throw UsageError("gram_det_sqrt: matrix is not symmetric");
      }
    }
  }

  Matrix<Scalar> work = g;
  const Scalar scale = work.diagonal().maxCoeff();
  const Scalar threshold = Scalar(kGramPivotTolerance) * std::max(scale, Scalar(0));
  if (scale <= Scalar(0)) {
    if (work.diagonal().minCoeff() < -threshold) throw InvalidGram("gram_det_sqrt: negative diagonal");
    return Scalar(0);
  }

  Scalar product(1);
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    for (Index i = k + 1; i < n; ++i) {
      if (work(i, i) > work(p, p)) p = i;
    }
    const Scalar smallest = work.diagonal().tail(n - k).minCoeff();
    if (smallest < -threshold) {
      throw InvalidGram("gram_det_sqrt: pivot below -1e-12*scale, input is not a Gram matrix");
    }
    const Scalar pivot = work(p, p);
    if (pivot <= threshold) return Scalar(0);
    if (p != k) {
      work.row(p).swap(work.row(k));
      work.col(p).swap(work.col(k));
    }
    product *= pivot;
    const Index tail = n - k - 1;
    if (tail > 0) {
      const Vector<Scalar> column = work.col(k).tail(tail);
      work.bottomRightCorner(tail, tail).noalias() -= column * column.transpose() / pivot;
    }
  }
  return std::sqrt(product);
}

template <typename Scalar>
struct SvdResult {
  Vector<Scalar> singular_values;  // nonincreasing
  Matrix<Scalar> left_factors;     // rows x r, orthonormal columns
  Matrix<Scalar> right_factors;    // cols x r, orthonormal columns
};

/// Maximum number of sweeps of svd_small before NumericalFailure.
inline constexpr int kJacobiMaxSweeps = 60;
inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr Index kSvdMaxDimension = 64;

namespace detail {

// Fills zero columns of `u` (flagged in `missing`) with unit vectors orthogonal
// to every other column.
template <typename Scalar>
void complete_orthonormal_columns(Matrix<Scalar>& u, const std::vector<bool>& missing) {
  const Index rows = u.rows();
  Index candidate = 0;
  for (Index j = 0; j < u.cols(); ++j) {
    if (!missing[static_cast<std::size_t>(j)]) continue;
    for (; candidate < rows; ++candidate) {
      Vector<Scalar> v = Vector<Scalar>::Unit(rows, candidate);
      for (int pass = 0; pass < 2; ++pass) {
        for (Index c = 0; c < u.cols(); ++c) {
          if (c == j || (missing[static_cast<std::size_t>(c)] && c > j)) continue;
          v -= u.col(c).dot(v) * u.col(c);
        }
      }
      const Scalar norm = v.norm();
      if (norm > Scalar(0.5)) {
        u.col(j) = v / norm;
        ++candidate;
        break;
      }
    }
  }
}

// One-sided Jacobi on a tall matrix (rows >= cols).
template <typename Scalar>
SvdResult<Scalar> jacobi_svd_tall(Matrix<Scalar> w) {
  const Index cols = w.cols();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(cols, cols);
  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (Index p = 0; p + 1 < cols; ++p) {
      for (Index q = p + 1; q < cols; ++q) {
        const Scalar alpha = w.col(p).squaredNorm();
        const Scalar beta = w.col(q).squaredNorm();
        const Scalar gamma = w.col(p).dot(w.col(q));
        if (gamma == Scalar(0) ||
            std::abs(gamma) <= Scalar(kJacobiTolerance) * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        converged = false;
        const Scalar zeta = (beta - alpha) / (Scalar(2) * gamma);
        const Scalar t = (zeta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(zeta) + std::hypot(Scalar(1), zeta));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = c * t;
        const Vector<Scalar> wp = w.col(p);
        w.col(p) = c * wp - s * w.col(q);
        w.col(q) = s * wp + c * w.col(q);
        const Vector<Scalar> vp = v.col(p);
        v.col(p) = c * vp - s * v.col(q);
        v.col(q) = s * vp + c * v.col(q);
      }
    }
  }
  if (!converged) {
    throw NumericalFailure("svd_small: Jacobi sweeps did not converge");
  }

  Vector<Scalar> sigma(cols);
  for (Index j = 0; j < cols; ++j) sigma(j) = w.col(j).norm();
  std::vector<Index> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return sigma(a) > sigma(b); });

  SvdResult<Scalar> out;
  out.singular_values.resize(cols);
  out.left_factors.resize(w.rows(), cols);
  out.right_factors.resize(cols, cols);
  std::vector<bool> missing(static_cast<std::size_t>(cols), false);
  for (Index j = 0; j < cols; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.singular_values(j) = sigma(src);
    out.right_factors.col(j) = v.col(src);
    if (sigma(src) > std::numeric_limits<Scalar>::min()) {
      out.left_factors.col(j) = w.col(src) / sigma(src);
    } else {
      out.left_factors.col(j).setZero();
      missing[static_cast<std::size_t>(j)] = true;
    }
  }
  complete_orthonormal_columns(out.left_factors, missing);
  return out;
}

}  // namespace detail

/// Thin SVD M = U diag(sigma) V^T by one-sided (Hestenes) Jacobi rotations.
/// U is rows x r and V is cols x r with r = min(rows, cols).
template <typename Derived>
SvdResult<typename Derived::Scalar> svd_small(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) {
    throw UsageError("svd_small: empty matrix");
  }
  if (std::min(m.rows(), m.cols()) > kSvdMaxDimension) {
    throw CapacityError("svd_small: min(rows, cols) exceeds 64");
  }
  if (!m.allFinite()) {
    throw UsageError("svd_small: non-finite entries");
  }
  if (m.rows() >= m.cols()) {
    return detail::jacobi_svd_tall<Scalar>(m);
  }
  SvdResult<Scalar> t = detail::jacobi_svd_tall<Scalar>(m.transpose());
  std::swap(t.left_factors, t.right_factors);
  return t;
}

/// Largest absolute entry of A^T A - I.
template <typename Derived>
typename Derived::Scalar orthonormality_defect(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> gram = a.transpose() * a;
  return (gram - Matrix<Scalar>::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

}  // namespace nmetric
