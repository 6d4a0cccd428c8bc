#include "nmetric/sets.hpp"

#include <algorithm>
#include <cmath>

#include "nmetric/exterior.hpp"

namespace nmetric {

FiniteMetricTable::FiniteMetricTable(int n, std::vector<std::string> points) : n_(n), labels_(std::move(points)) {
  if (n < 2) throw UsageError("FiniteMetricTable: arity must be >= 2");
  if (labels_.empty()) throw UsageError("FiniteMetricTable: empty point set");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], static_cast<int>(i)).second) {
      throw UsageError("FiniteMetricTable: duplicate point '" + labels_[i] + "'");
    }
  }
  const double cells = std::pow(static_cast<double>(labels_.size()), n);
  if (cells > 1e8) throw CapacityError("FiniteMetricTable: table too large");
  values_.assign(static_cast<std::size_t>(cells), 0.0);
}

int FiniteMetricTable::index_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw UsageError("FiniteMetricTable: unknown point '" + label + "'");
  return it->second;
}

std::size_t FiniteMetricTable::slot(std::span<const int> tuple, bool& repeated) const {
  if (static_cast<int>(tuple.size()) != n_) throw UsageError("FiniteMetricTable: wrong tuple length");
  std::vector<int> sorted(tuple.begin(), tuple.end());
  for (int v : sorted) {
    if (v < 0 || v >= size()) throw UsageError("FiniteMetricTable: point index out of range");
  }
  std::sort(sorted.begin(), sorted.end());
  repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  std::size_t out = 0;
  for (int v : sorted) out = out * labels_.size() + static_cast<std::size_t>(v);
  return out;
}

double FiniteMetricTable::value(std::span<const int> tuple) const {
  bool repeated = false;
  const std::size_t s = slot(tuple, repeated);
  return repeated ? 0.0 : values_[s];
}

void FiniteMetricTable::set_value(std::span<const int> tuple, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw UsageError("FiniteMetricTable: values must be finite and >= 0");
  bool repeated = false;
  const std::size_t s = slot(tuple, repeated);
  if (repeated) {
    if (value != 0.0) throw UsageError("FiniteMetricTable: tuples with a repeated point must map to 0");
    return;
  }
  values_[s] = value;
}

std::vector<std::vector<int>> FiniteMetricTable::canonical_tuples() const {
  std::vector<std::vector<int>> out;
  if (n_ > size()) return out;
  std::vector<int> t(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) t[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(t);
    int i = n_ - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == size() - n_ + i) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n_; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

namespace {

auto table_metric(const FiniteMetricTable& d) {
  return [&d](std::span<const int> tuple) { return d.value(tuple); };
}

void require_family(const FiniteMetricTable& d, std::size_t count) {
  if (static_cast<int>(count) != d.arity()) throw UsageError("Hausdorff distance: need exactly n subsets");
}

}  // namespace

double dist_point(const FiniteMetricTable& d, int x1, std::span<const Subset> rest) {
  require_family(d, rest.size() + 1);
  return detail::dist_point_impl<int>(x1, rest, table_metric(d));
}

double dist_set(const FiniteMetricTable& d, const Subset& a1, std::span<const Subset> rest) {
  require_family(d, rest.size() + 1);
  if (a1.empty()) throw UsageError("dist_set: empty subset");
  double out = 0.0;
  for (int x : a1) out = std::max(out, dist_point(d, x, rest));
  return out;
}

double d_hausdorff_n(const FiniteMetricTable& d, std::span<const Subset> family) {
  require_family(d, family.size());
  return hausdorff_n<int>(family, table_metric(d));
}

int counterexample_rule(std::array<std::pair<int, int>, 3> p) {
  std::sort(p.begin(), p.end());
  if (p[0] == p[1] || p[1] == p[2]) return 0;
  const auto [a, i] = p[0];
  const auto [b, j] = p[1];
  const auto [c, k] = p[2];
  if (a == c) return 0;  // all three from one set

  constexpr int w = 0, x = 1, y = 2, z = 3;
  if (a != b && b != c) {
    // One point from each of three sets.
    if (a == x) return (i == j && j == k) ? 0 : 1;  // (x_j, y_k, z_l)
    if (b == y && c == z) return j == k ? 1 : 0;    // (w, y_k, z_l)
    if (b == x && c == z) return j == k ? 1 : 0;    // (w, x_j, z_l)
    return 1;                                       // (w, x_j, y_k)
  }
  // Two points from one set, one from another.
  if (a == w) return 0;
  if (a == x && b == x && c == z) return (j == k || i == k) ? 1 : 0;  // (x_j, x_i, z_l)
  if (a == x && b == z) return (i == j || i == k) ? 1 : 0;            // (x_j, z_l, z_m)
  if (a == y && b == y) return (j == k || i == k) ? 1 : 0;            // (y_k, y_m, z_l)
  if (a == y && b == z) return (i == j || i == k) ? 1 : 0;            // (y_k, z_l, z_m)
  return 1;                                                           // (x, x, y) and (x, y, y)
}

namespace {

std::pair<int, int> member(int index, int N) {
  if (index == 0) return {0, 1};
  return {1 + (index - 1) / N, 1 + (index - 1) % N};
}

}  // namespace

HausdorffCounterexample build_counterexample(int N) {
  if (N < 2) throw UsageError("build_counterexample: N must be >= 2");
  std::vector<std::string> labels{"w1"};
  for (const char* prefix : {"x", "y", "z"}) {
    for (int j = 1; j <= N; ++j) labels.push_back(prefix + std::to_string(j));
  }
  HausdorffCounterexample out{N, FiniteMetricTable(3, labels), {}};
  for (const auto& t : out.table.canonical_tuples()) {
    out.table.set_value(t, counterexample_rule({member(t[0], N), member(t[1], N), member(t[2], N)}));
  }
  out.subsets[0] = {0};
  for (int s = 1; s <= 3; ++s) {
    for (int j = 0; j < N; ++j) out.subsets[static_cast<std::size_t>(s)].push_back(1 + (s - 1) * N + j);
  }
  return out;
}

TableAxiomReport verify_table_axioms(const FiniteMetricTable& d, double tol) {
  const int n = d.arity();
  const int size = d.size();
  TableAxiomReport report;
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  std::vector<int> replaced;
  for (;;) {
    const double lhs = d.value(t);
    std::vector<int> sorted(t);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      ++report.semidefinite_checks;
      if (lhs != 0.0) ++report.violations;
    } else {
      ++report.symmetry_checks;
      if (d.value(sorted) != lhs || lhs < 0.0) ++report.violations;
    }
    for (int y = 0; y < size; ++y) {
      replaced = t;
      double rhs = 0.0;
      for (int i = 0; i < n; ++i) {
        replaced[static_cast<std::size_t>(i)] = y;
        rhs += d.value(replaced);
        replaced[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
      }
      ++report.simplicial_checks;
      report.worst_margin = std::min(report.worst_margin, rhs - lhs);
      if (rhs - lhs < -tol * std::max({1.0, lhs, rhs})) ++report.violations;
    }
    std::size_t pos = 0;
    while (pos < t.size() && ++t[pos] == size) t[pos++] = 0;
    if (pos == t.size()) break;
  }
  return report;
}

CounterexampleReport verify_counterexample(int N) {
  if (N < 2 || N > 4) throw UsageError("verify_counterexample: N must lie in [2, 4]");
  const HausdorffCounterexample ce = build_counterexample(N);
  const int size = ce.table.size();

  // Every ordered triple must match the rule table, not just the stored sorted ones.
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      for (int c = 0; c < size; ++c) {
        const int t[3] = {a, b, c};
        if (ce.table.value(t) != counterexample_rule({member(a, N), member(b, N), member(c, N)})) {
          throw ConstructionBug("verify_counterexample: table is not symmetric at (" + ce.table.labels()[a] + ", " +
                                ce.table.labels()[b] + ", " + ce.table.labels()[c] + ")");
        }
      }
    }
  }

  CounterexampleReport report;
  report.N = N;
  report.points = static_cast<std::size_t>(size);
  report.axioms = verify_table_axioms(ce.table);
  if (report.axioms.violations != 0) {
    throw ConstructionBug("verify_counterexample: table violates the 3-metric axioms " +
                          std::to_string(report.axioms.violations) + " times");
  }

  const auto& A = ce.subsets;
  const std::array<Subset, 3> base{A[0], A[1], A[2]};
  report.d_h = d_hausdorff_n(ce.table, base);
  for (std::size_t i = 0; i < 3; ++i) {
    std::array<Subset, 3> family = base;
    family[i] = A[3];
    report.substituted[i] = d_hausdorff_n(ce.table, family);
  }
  report.margin = report.substituted[0] + report.substituted[1] + report.substituted[2] - report.d_h;
  return report;
}

MetricEvaluator<MatrixXd> hausdorff_simplex_metric(int n) {
  if (n < 2) throw UsageError("hausdorff_simplex_metric: n must be >= 2");
  return {n,
          [](std::span<const MatrixXd> sets) {
            std::vector<std::vector<VectorXd>> family;
            for (const auto& s : sets) {
              std::vector<VectorXd> points;
              for (Index j = 0; j < s.cols(); ++j) points.push_back(s.col(j));
              family.push_back(std::move(points));
            }
            const auto simplex = [](std::span<const VectorXd> x) { return d_simplex(columns_of<double>(x)); };
            return hausdorff_n<VectorXd>(std::span<const std::vector<VectorXd>>(family), simplex);
          },
          "hausdorff-simplex"};
}

}  // namespace nmetric
