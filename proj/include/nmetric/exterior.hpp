#pragma once

// Exterior-product norms in Euclidean space, computed through Gram
// determinants. A tuple x_1..x_k of vectors of R^m is passed as the m x k
// matrix whose columns are the x_i.

#include <span>
#include <vector>

#include "nmetric/axioms.hpp"
#include "nmetric/linalg.hpp"

namespace nmetric {

/// Packs points of a common dimension into the columns of a matrix.
template <typename Scalar>
Matrix<Scalar> columns_of(std::span<const Vector<Scalar>> points) {
  if (points.empty()) throw UsageError("columns_of: empty tuple");
  const Index m = points.front().size();
  Matrix<Scalar> out(m, static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m) throw UsageError("columns_of: points have different dimensions");
    out.col(static_cast<Index>(i)) = points[i];
  }
  return out;
}

/// G_il = <x_i, x_l>.
template <typename Derived>
Matrix<typename Derived::Scalar> gram_matrix(const Eigen::MatrixBase<Derived>& tuple) {
  if (tuple.cols() < 1) throw UsageError("gram_matrix: need at least one vector");
  Matrix<typename Derived::Scalar> g = tuple.transpose() * tuple;
  // Exact symmetry regardless of the product kernel's summation order.
  g.template triangularView<Eigen::StrictlyLower>() = g.transpose();
  return g;
}

/// ||x_1 ^ ... ^ x_k|| = sqrt(det Gram): the k-volume of the spanned
/// parallelepiped. Tuples with k > m are dependent and give 0.
template <typename Derived>
typename Derived::Scalar wedge_norm(const Eigen::MatrixBase<Derived>& tuple) {
  using Scalar = typename Derived::Scalar;
  if (tuple.cols() > tuple.rows()) return Scalar(0);
  return gram_det_sqrt(gram_matrix(tuple));
}

/// Volume form rule: columns of tuple * A are (A_X x)_j = sum_i A_ij x_i.
/// Returns | ||A_X x|| - |det A| ||x|| |.
template <typename DerivedA, typename DerivedT>
typename DerivedT::Scalar det_rule_margin(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedT>& tuple) {
  if (a.rows() != a.cols()) throw UsageError("det_rule_margin: A is not square");
  if (a.rows() != tuple.cols()) throw UsageError("det_rule_margin: A size differs from tuple length");
  const Matrix<typename DerivedT::Scalar> transformed = tuple * a;
  return std::abs(wedge_norm(transformed) - std::abs(det(a)) * wedge_norm(tuple));
}

/// ||x_1^..^x_j|| * ||x_{j+1}^..^x_k|| - ||x_1^..^x_k|| for 1 <= j <= k-1.
template <typename Derived>
typename Derived::Scalar hadamard_margin(const Eigen::MatrixBase<Derived>& tuple, Index j) {
  const Index k = tuple.cols();
  if (j < 1 || j > k - 1) throw UsageError("hadamard_margin: split index must lie in [1, k-1]");
  return wedge_norm(tuple.leftCols(j)) * wedge_norm(tuple.rightCols(k - j)) - wedge_norm(tuple);
}

/// ||(x_2 - x_1) ^ ... ^ (x_n - x_1)||, the pseudo n-metric induced by the
/// Gram (n-1)-norm; (n-1)! times the simplex volume.
template <typename Derived>
typename Derived::Scalar d_simplex(const Eigen::MatrixBase<Derived>& points) {
  const Index n = points.cols();
  if (n < 2) throw UsageError("d_simplex: need at least two points");
  const Matrix<typename Derived::Scalar> differences = points.rightCols(n - 1).colwise() - points.col(0);
  return wedge_norm(differences);
}

inline MetricEvaluator<VectorXd> simplex_metric(int n) {
  if (n < 2) throw UsageError("simplex_metric: n must be >= 2");
  return {n, [](std::span<const VectorXd> x) { return d_simplex(columns_of<double>(x)); }, "simplex"};
}

}  // namespace nmetric
