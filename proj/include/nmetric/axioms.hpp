#pragma once

// Metric-agnostic checks of the three pseudo n-metric axioms
// (semidefiniteness, permutation symmetry, simplicial inequality) and a
// deterministic randomized harness built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "nmetric/error.hpp"
#include "nmetric/rng.hpp"

namespace nmetric {

/// Default relative tolerances.
inline constexpr double kClosedFormTolerance = 1e-9;
inline constexpr double kSvdTolerance = 1e-7;

template <typename Point>
struct MetricEvaluator {
  int arity = 2;
  std::function<double(std::span<const Point>)> evaluate;
  std::string label;

  double operator()(std::span<const Point> tuple) const {
    if (static_cast<int>(tuple.size()) != arity) {
      throw UsageError(label + ": expected " + std::to_string(arity) + " points, got " +
                       std::to_string(tuple.size()));
    }
    return evaluate(tuple);
  }
};

/// sample(seed, index) must be a pure function of its arguments.
template <typename Point>
struct PointSampler {
  std::function<Point(std::uint64_t seed, std::size_t index)> sample;
  std::string description;
};

enum class Axiom { semidefinite, symmetry, simplicial };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::semidefinite: return "semidefinite";
    case Axiom::symmetry: return "symmetry";
    case Axiom::simplicial: return "simplicial";
  }
  return "?";
}

/// Outcome of one axiom check. passed <=> margin >= -tol * scale.
template <typename Point>
struct CheckResult {
  Axiom axiom = Axiom::simplicial;
  bool passed = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double scale = 1.0;
  std::size_t trial = 0;
  // Witness, filled in only for failed checks.
  std::vector<Point> tuple;
  std::optional<Point> y;
  std::vector<int> permutation;

  double relative_margin() const { return margin / scale; }
};

template <typename Point>
struct FuzzReport {
  std::string metric_label;
  std::string sampler;
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::vector<CheckResult<Point>> violations;
  /// Smallest margin / scale over all checks of all trials.
  double worst_margin = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  double tol = 0.0;
};

namespace detail {

template <typename Point>
bool same_point(const Point& a, const Point& b) {
  if constexpr (requires { a.rows(); a.cols(); a.cwiseEqual(b); }) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
  } else {
    return a == b;
  }
}

template <typename Point>
void require_arity(const MetricEvaluator<Point>& metric, std::size_t size) {
  if (static_cast<int>(size) != metric.arity) {
    throw UsageError(metric.label + ": tuple has " + std::to_string(size) + " points, metric arity is " +
                     std::to_string(metric.arity));
  }
}

template <typename Point>
void finish(CheckResult<Point>& r, double tol, std::span<const Point> tuple) {
  r.passed = r.margin >= -tol * r.scale;
  if (!r.passed) r.tuple.assign(tuple.begin(), tuple.end());
}

}  // namespace detail

template <typename Point>
CheckResult<Point> check_semidefinite(const MetricEvaluator<Point>& metric, std::span<const Point> tuple, double tol) {
  detail::require_arity(metric, tuple.size());
  bool has_duplicate = false;
  for (std::size_t i = 0; i < tuple.size() && !has_duplicate; ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      if (detail::same_point(tuple[i], tuple[j])) {
        has_duplicate = true;
        break;
      }
    }
  }
  if (!has_duplicate) throw UsageError("check_semidefinite: tuple has no repeated entry");

  CheckResult<Point> r;
  r.axiom = Axiom::semidefinite;
  r.lhs = std::abs(metric.evaluate(tuple));
  r.rhs = 0.0;
  r.margin = -r.lhs;
  r.scale = 1.0;
  detail::finish(r, tol, tuple);
  return r;
}

/// `permutation` is 0-based: the permuted tuple is (x[p[0]], ..., x[p[n-1]]).
template <typename Point>
CheckResult<Point> check_symmetry(const MetricEvaluator<Point>& metric, std::span<const Point> tuple,
                                  std::span<const int> permutation, double tol) {
  detail::require_arity(metric, tuple.size());
  if (permutation.size() != tuple.size()) throw UsageError("check_symmetry: permutation has wrong length");
  std::vector<bool> seen(tuple.size(), false);
  for (int p : permutation) {
    if (p < 0 || p >= static_cast<int>(tuple.size()) || seen[static_cast<std::size_t>(p)]) {
      throw UsageError("check_symmetry: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Point> permuted;
  permuted.reserve(tuple.size());
  for (int p : permutation) permuted.push_back(tuple[static_cast<std::size_t>(p)]);

  CheckResult<Point> r;
  r.axiom = Axiom::symmetry;
  r.lhs = metric.evaluate(tuple);
  r.rhs = metric.evaluate(std::span<const Point>(permuted));
  r.margin = -std::abs(r.lhs - r.rhs);
  r.scale = std::max(1.0, std::abs(r.lhs));
  detail::finish(r, tol, tuple);
  if (!r.passed) r.permutation.assign(permutation.begin(), permutation.end());
  return r;
}

template <typename Point>
CheckResult<Point> check_simplicial(const MetricEvaluator<Point>& metric, std::span<const Point> tuple,
                                    const Point& y, double tol) {
  detail::require_arity(metric, tuple.size());
  CheckResult<Point> r;
  r.axiom = Axiom::simplicial;
  r.lhs = metric.evaluate(tuple);
  std::vector<Point> replaced(tuple.begin(), tuple.end());
  r.rhs = 0.0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    replaced[i] = y;
    r.rhs += metric.evaluate(std::span<const Point>(replaced));
    replaced[i] = tuple[i];
  }
  r.margin = r.rhs - r.lhs;
  r.scale = std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)});
  detail::finish(r, tol, tuple);
  if (!r.passed) r.y = y;
  return r;
}

namespace detail {

template <typename Point>
std::vector<CheckResult<Point>> fuzz_trial(const MetricEvaluator<Point>& metric, const PointSampler<Point>& sampler,
                                           std::uint64_t seed, std::size_t trial, double tol) {
  const auto n = static_cast<std::size_t>(metric.arity);
  const std::uint64_t trial_seed = substream_seed(seed, trial);
  std::vector<Point> points;
  points.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) points.push_back(sampler.sample(trial_seed, i));
  const Point y = points.back();
  points.pop_back();
  const std::span<const Point> tuple(points);

  Rng choices = Rng(trial_seed).split(0xA11CE);
  std::vector<CheckResult<Point>> out;
  out.reserve(3);

  // Forced duplicate: a uniformly chosen unordered pair, copied in a random direction.
  {
    std::vector<Point> dup(points);
    const auto a = static_cast<std::size_t>(choices.below(n));
    auto b = static_cast<std::size_t>(choices.below(n - 1));
    if (b >= a) ++b;
    dup[b] = dup[a];
    out.push_back(check_semidefinite(metric, std::span<const Point>(dup), tol));
  }
  {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[static_cast<std::size_t>(choices.below(i + 1))]);
    }
    out.push_back(check_symmetry(metric, tuple, std::span<const int>(perm), tol));
  }
  out.push_back(check_simplicial(metric, tuple, y, tol));
  for (auto& r : out) r.trial = trial;
  return out;
}

}  // namespace detail

struct FuzzOptions {
  /// Worker threads; results never depend on this value.
  unsigned threads = 1;
};

/// Runs `trials` randomized trials. Trial t uses sub-seed substream_seed(seed, t)
/// to sample n + 1 points (the last one is the simplicial witness y) and then
/// runs all three axiom checks.
template <typename Point>
FuzzReport<Point> fuzz_metric(const MetricEvaluator<Point>& metric, const PointSampler<Point>& sampler,
                              std::size_t trials, std::uint64_t seed, double tol, FuzzOptions options = {}) {
  if (trials < 1) throw UsageError("fuzz_metric: trials must be >= 1");
  if (metric.arity < 2) throw UsageError("fuzz_metric: arity must be >= 2");

  std::vector<std::vector<CheckResult<Point>>> per_trial(trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) per_trial[t] = detail::fuzz_trial(metric, sampler, seed, t, tol);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < trials; t += workers) {
            per_trial[t] = detail::fuzz_trial(metric, sampler, seed, t, tol);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  FuzzReport<Point> report;
  report.metric_label = metric.label;
  report.sampler = sampler.description;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  for (auto& results : per_trial) {
    for (auto& r : results) {
      ++report.checks;
      report.worst_margin = std::min(report.worst_margin, r.relative_margin());
      if (!r.passed) report.violations.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace nmetric
