#pragma once

// Finite n-metric tables and the Hausdorff-style n-distance on subsets.

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nmetric/axioms.hpp"
#include "nmetric/linalg.hpp"

namespace nmetric {

/// Symmetric table d: X^n -> [0, inf) on a labelled finite set. Only sorted
/// index tuples are stored, so symmetry holds by construction; tuples with a
/// repeated index read as 0.
class FiniteMetricTable {
 public:
  FiniteMetricTable(int n, std::vector<std::string> points);

  int arity() const { return n_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

  double value(std::span<const int> tuple) const;
  void set_value(std::span<const int> tuple, double value);

  /// Strictly increasing index tuples, lexicographically.
  std::vector<std::vector<int>> canonical_tuples() const;

 private:
  std::size_t slot(std::span<const int> tuple, bool& repeated) const;

  int n_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> values_;  // indexed by the sorted tuple in base |X|
};

using Subset = std::vector<int>;

namespace detail {

// min over (r_1, ..., r_{n-1}) in the product of `rest` of d(x1, r_1, ...).
template <typename Point, typename Metric>
double dist_point_impl(const Point& x1, std::span<const std::vector<Point>> rest, const Metric& d) {
  for (const auto& s : rest) {
    if (s.empty()) throw UsageError("dist_point: empty subset");
  }
  std::vector<Point> tuple(rest.size() + 1, x1);
  std::vector<std::size_t> pick(rest.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < rest.size(); ++i) tuple[i + 1] = rest[i][pick[i]];
    best = std::min(best, d(std::span<const Point>(tuple)));
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == rest[pos].size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return best;
}

}  // namespace detail

/// Hausdorff-style n-distance for an arbitrary n-ary function d on points.
template <typename Point, typename Metric>
double hausdorff_n(std::span<const std::vector<Point>> family, const Metric& d) {
  if (family.size() < 2) throw UsageError("hausdorff_n: need at least two subsets");
  double out = 0.0;
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].empty()) throw UsageError("hausdorff_n: empty subset");
    std::vector<std::vector<Point>> rest;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (i != j) rest.push_back(family[i]);
    }
    for (const auto& x : family[j]) {
      out = std::max(out, detail::dist_point_impl<Point>(x, std::span<const std::vector<Point>>(rest), d));
    }
  }
  return out;
}

/// min of d(x1, a_2, ..., a_n) over a_i in rest[i].
double dist_point(const FiniteMetricTable& d, int x1, std::span<const Subset> rest);

/// max over x1 in a1 of dist_point(d, x1, rest).
double dist_set(const FiniteMetricTable& d, const Subset& a1, std::span<const Subset> rest);

/// max over j of dist_set(A_j; the other subsets).
double d_hausdorff_n(const FiniteMetricTable& d, std::span<const Subset> family);

struct HausdorffCounterexample {
  int N = 0;
  FiniteMetricTable table;
  std::array<Subset, 4> subsets;  // A1 = {w1}, A2 = {x_j}, A3 = {y_k}, A4 = {z_l}
};

/// Point set X = {w1, x1..xN, y1..yN, z1..zN} with a 3-metric table whose
/// Hausdorff extension breaks the simplicial inequality.
HausdorffCounterexample build_counterexample(int N);

/// Value the construction assigns to three points given as (set, index)
/// pairs, set 0..3 for w, x, y, z; index is 1-based.
int counterexample_rule(std::array<std::pair<int, int>, 3> points);

struct TableAxiomReport {
  std::size_t semidefinite_checks = 0;
  std::size_t symmetry_checks = 0;
  std::size_t simplicial_checks = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // min rhs - lhs
};

/// Exhaustive check over all |X|^n tuples and all y. Values are compared
/// exactly unless `tol` > 0.
TableAxiomReport verify_table_axioms(const FiniteMetricTable& d, double tol = 0.0);

struct CounterexampleReport {
  int N = 0;
  std::size_t points = 0;
  TableAxiomReport axioms;
  double d_h = 0.0;                  // d_H(A1, A2, A3)
  std::array<double, 3> substituted{};  // A4 in slot 1, 2, 3
  double margin = 0.0;               // sum(substituted) - d_h
};

/// N in [2, 4]. Throws ConstructionBug if the table is not a pseudo 3-metric
/// or deviates from the construction rules.
CounterexampleReport verify_counterexample(int N);

/// Hausdorff n-distance of finite point sets (columns of each matrix) over
/// the simplex n-metric. Experimental: not known to be a pseudo n-metric.
MetricEvaluator<MatrixXd> hausdorff_simplex_metric(int n);

}  // namespace nmetric
