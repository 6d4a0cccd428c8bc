#pragma once

// Named metrics with their point samplers, shared by the CLI and the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmetric/io.hpp"

namespace nmetric {

struct MetricConfig {
  std::string metric;
  int n = 3;
  int dim = 3;  // vector dimension; atoms for lp-discrete; vertices for a random hypergraph
  int k = 1;
  int m = 3;
  int dy = 1;
  double p = 2.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<double> tol;  // metric default when unset
  bool force = false;
  unsigned threads = 1;
  std::optional<Json> input;  // hypergraph, tensor or weights for the metric
};

struct MetricInfo {
  std::string name;
  std::string point;  // complex, vector, frame, vertex, set
  double default_tol;
  bool experimental;  // not known to be a pseudo n-metric
  std::string summary;
};

const std::vector<MetricInfo>& metric_catalog();
const MetricInfo& metric_info(const std::string& name);

struct CheckOutcome {
  Json report;
  std::size_t violations = 0;
};

/// fuzz_metric on the configured metric and its default sampler.
CheckOutcome run_check(const MetricConfig& config);

/// Evaluates the tuple under "points" (or "frames") of `tuple_input`, or each
/// tuple of its "tuples" list.
Json run_eval(const MetricConfig& config, const Json& tuple_input);

/// Unit vectors with the witness slot (index n) pulled to radius U(0, 0.3);
/// random Gaussian or spherical points almost never expose the violation.
PointSampler<VectorXd> norm_product_sampler(int n, int dim);

}  // namespace nmetric
