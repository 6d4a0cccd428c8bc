#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "nmetric/hypergraph.hpp"
#include "nmetric/linalg.hpp"
#include "nmetric/manifolds.hpp"
#include "nmetric/vandermonde.hpp"

namespace oracle {

using nmetric::Index;
using nmetric::MatrixXd;
using nmetric::VectorXd;

/// Laplace expansion along the first row.
template <typename Scalar>
Scalar cofactor_det(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  const Index n = m.rows();
  if (n == 0) return Scalar(1);
  if (n == 1) return m(0, 0);
  Scalar sum(0);
  for (Index j = 0; j < n; ++j) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index c2 = 0;
      for (Index c = 0; c < n; ++c) {
        if (c != j) minor(r - 1, c2++) = m(r, c);
      }
    }
    const Scalar sign = (j % 2 == 0) ? Scalar(1) : Scalar(-1);
    sum += sign * m(0, j) * cofactor_det(minor);
  }
  return sum;
}

inline double lu_det(const MatrixXd& m) { return Eigen::FullPivLU<MatrixXd>(m).determinant(); }

inline VectorXd singular_values(const MatrixXd& m) { return Eigen::JacobiSVD<MatrixXd>(m).singularValues(); }

/// Cauchy-Binet: ||x_1 ^ ... ^ x_k||^2 is the sum of squared k x k minors.
inline double wedge_norm_minors(const MatrixXd& tuple) {
  const Index m = tuple.rows();
  const Index k = tuple.cols();
  if (k > m) return 0.0;
  std::vector<Index> rows(static_cast<std::size_t>(k));
  std::iota(rows.begin(), rows.end(), 0);
  double sum = 0.0;
  for (;;) {
    MatrixXd minor(k, k);
    for (Index r = 0; r < k; ++r) minor.row(r) = tuple.row(rows[static_cast<std::size_t>(r)]);
    const double d = cofactor_det(minor);
    sum += d * d;
    Index i = k - 1;
    while (i >= 0 && rows[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++rows[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
  }
  return std::sqrt(sum);
}

/// det of the matrix [z_i^j] (rows i, powers j), which equals prod_{i<j} (z_j - z_i).
inline std::complex<double> vandermonde_matrix_det(const std::vector<std::complex<double>>& z) {
  using C = std::complex<double>;
  const auto n = static_cast<Index>(z.size());
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (Index i = 0; i < n; ++i) {
    C power(1.0, 0.0);
    for (Index j = 0; j < n; ++j) {
      m(i, j) = power;
      power *= z[static_cast<std::size_t>(i)];
    }
  }
  return cofactor_det(m);
}

/// Multilinear evaluation by summing over every index tuple (i_1, ..., i_M).
inline VectorXd tensor_apply_bruteforce(const nmetric::SymmetricTensorMap& a, const std::vector<VectorXd>& args) {
  const int dx = a.dim_in();
  const auto order = static_cast<std::size_t>(a.order());
  VectorXd out = VectorXd::Zero(a.dim_out());
  std::vector<int> idx(order, 0);
  for (;;) {
    double weight = 1.0;
    for (std::size_t r = 0; r < order; ++r) weight *= args[r](idx[r]);
    if (weight != 0.0) {
      std::vector<int> multiset(idx);
      std::sort(multiset.begin(), multiset.end());
      for (int o = 0; o < a.dim_out(); ++o) out(o) += weight * a.coefficient(o, multiset);
    }
    std::size_t pos = 0;
    while (pos < order && ++idx[pos] == dx) idx[pos++] = 0;
    if (pos == order) break;
  }
  return out;
}

inline bool subset_connected(const nmetric::Hypergraph& h, const std::vector<std::size_t>& subset) {
  // Breadth-first search over the intersection graph.
  std::vector<bool> seen(subset.size(), false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto& e = h.edges()[subset[queue[q]]];
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (seen[j]) continue;
      const auto& f = h.edges()[subset[j]];
      const bool meet = std::any_of(e.begin(), e.end(),
                                    [&](int v) { return std::find(f.begin(), f.end(), v) != f.end(); });
      if (meet) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  return queue.size() == subset.size();
}

/// Minimum over all 2^|E| - 1 edge subsets.
inline int hyper_bruteforce(const nmetric::Hypergraph& h, const std::vector<int>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if (tuple[i] == tuple[j]) return 0;
    }
  }
  const std::size_t m = h.edge_count();
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::vector<std::size_t> subset;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask & (1u << e)) subset.push_back(e);
    }
    bool covers = true;
    for (int v : tuple) {
      bool hit = false;
      for (std::size_t e : subset) {
        const auto& edge = h.edges()[e];
        if (std::find(edge.begin(), edge.end(), v) != edge.end()) hit = true;
      }
      covers = covers && hit;
    }
    if (covers && subset_connected(h, subset)) best = size;
  }
  return best;
}

/// min over a (2 * steps)-point grid of O(2) of d_stiefel(A1, A2 Q).
inline double o2_grid_min(const nmetric::StiefelFrame& a1, const nmetric::StiefelFrame& a2, int steps) {
  const double pi = std::acos(-1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int reflect = 0; reflect < 2; ++reflect) {
    for (int s = 0; s < steps; ++s) {
      const double t = 2.0 * pi * s / steps;
      MatrixXd q(2, 2);
      if (reflect) {
        q << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
      } else {
        q << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      }
      // n = 2 closed form of sqrt(det Gram): sqrt(1 - <A1, A2 Q>^2).
      const double inner = (a1.matrix().cwiseProduct(a2.matrix() * q)).sum() / 2.0;
      best = std::min(best, std::sqrt(std::max(0.0, 1.0 - inner * inner)));
    }
  }
  return best;
}

// Projection distance of two k-frames from principal angles. Factored as
// (k - sum cos^2)(k + sum cos^2) with sum sin^2 = |(I - P1) A2|_F^2 to avoid cancellation.
inline double grassmann_pair(const MatrixXd& a1, const MatrixXd& a2) {
  const double k = static_cast<double>(a1.cols());
  const double sin2 = (a2 - a1 * (a1.transpose() * a2)).squaredNorm();
  const double cos2 = k - sin2;
  return std::sqrt(std::max(0.0, sin2 * (k + cos2))) / k;
}

}  // namespace oracle
