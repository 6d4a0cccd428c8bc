#include "nmetric/registry.hpp"

#include <algorithm>

namespace nmetric {

const std::vector<MetricInfo>& metric_catalog() {
  static const std::vector<MetricInfo> catalog = {
      {"vandermonde", "complex", kClosedFormTolerance, false, "|prod_{i<j} (z_i - z_j)| on C"},
      {"lift", "vector", kClosedFormTolerance, false, "p-norm of componentwise Vandermonde distances on R^dim"},
      {"lp-discrete", "vector", kClosedFormTolerance, false, "L^p Vandermonde distance of functions on dim atoms"},
      {"simplex", "vector", kSvdTolerance, false, "(n-1)-volume of the spanned parallelepiped of differences"},
      {"sphere", "vector", kSvdTolerance, false, "sqrt(det Gram) of unit vectors in R^dim"},
      {"stiefel", "frame", kSvdTolerance, false, "sqrt(det <A_i, A_j>) on St(k, m)"},
      {"grassmann-proj", "frame", kSvdTolerance, false, "sqrt(det <P_i, P_j>) of projections on G(k, m)"},
      {"grassmann-quotient", "frame", kSvdTolerance, false, "sqrt(1 - (sum sigma / k)^2), n = 2"},
      {"classical-grassmann", "frame", kSvdTolerance, false, "sin of the largest principal angle, n = 2"},
      {"gen-vandermonde", "vector", kClosedFormTolerance, false, "p-norm of A(prod (x_i - x_j)) for a symmetric tensor"},
      {"norm-product", "vector", kClosedFormTolerance, true, "prod_{i<j} ||x_i - x_j||; fails for dim >= 3"},
      {"hyper", "vertex", kClosedFormTolerance, false, "fewest edges of a connected component covering the tuple"},
      {"grassmann-quotient-n3", "frame", kSvdTolerance, true, "searched min over O(k) alignments of d_stiefel"},
      {"grassmann-spectral-wedge", "frame", kSvdTolerance, true, "sampled dual-norm wedge of projections"},
      {"grassmann-nuclear-wedge", "frame", kSvdTolerance, true, "sampled dual-norm wedge of projections"},
      {"hausdorff-simplex", "set", kSvdTolerance, true, "Hausdorff n-distance of finite sets over the simplex metric"},
  };
  return catalog;
}

const MetricInfo& metric_info(const std::string& name) {
  for (const auto& info : metric_catalog()) {
    if (info.name == name) return info;
  }
  throw UsageError("unknown metric '" + name + "'");
}

namespace {

template <typename Point>
struct Setup {
  MetricEvaluator<Point> metric;
  PointSampler<Point> sampler;
};

Rng point_rng(std::uint64_t seed, std::size_t index) { return Rng(substream_seed(seed, index)); }

PointSampler<VectorXd> normal_vectors(int dim) {
  if (dim < 1) throw UsageError("--dim must be >= 1");
  return {[dim](std::uint64_t seed, std::size_t i) {
            Rng rng = point_rng(seed, i);
            return sample_normal_vector(rng, dim);
          },
          "normal(" + std::to_string(dim) + ")"};
}

PointSampler<StiefelFrame> random_frames(int k, int m) {
  if (k < 1 || k > m) throw UsageError("need 1 <= --k <= --m");
  return {[k, m](std::uint64_t seed, std::size_t i) {
            Rng rng = point_rng(seed, i);
            return StiefelFrame(sample_stiefel(rng, k, m));
          },
          "stiefel(" + std::to_string(k) + ", " + std::to_string(m) + ")"};
}

DiscreteMeasureSpace measure_for(const MetricConfig& c) {
  DiscreteMeasureSpace space;
  if (c.input && c.input->contains("weights")) {
    for (const auto& w : c.input->at("weights")) space.weights.push_back(number_from_json(w));
  } else {
    if (c.dim < 1) throw UsageError("--dim must be >= 1");
    Rng rng = Rng(c.seed).split(0x3E1);
    for (int j = 0; j < c.dim; ++j) space.weights.push_back(rng.uniform(0.1, 2.0));
  }
  space.validate();
  return space;
}

SymmetricTensorMap tensor_for(const MetricConfig& c) {
  if (c.input && c.input->contains("tensor")) {
    SymmetricTensorMap a = tensor_from_json(c.input->at("tensor"));
    if (a.arity() != c.n) throw UsageError("tensor arity differs from --n");
    return a;
  }
  if (c.dim < 1 || c.dy < 1) throw UsageError("--dim and --dy must be >= 1");
  Rng rng = Rng(c.seed).split(0x7E5);
  return SymmetricTensorMap::random(c.n, c.dim, c.dy, rng);
}

Hypergraph hypergraph_for(const MetricConfig& c) {
  if (c.input) return hypergraph_from_json(*c.input);
  const int vertices = std::max(c.dim, c.n + 1);
  double all_edges = 1.0;
  for (int i = 1; i <= c.n; ++i) all_edges = all_edges * (vertices - c.n + i) / i;
  const auto edges = static_cast<std::size_t>(std::min<double>(all_edges, vertices + 2));
  Rng rng = Rng(c.seed).split(0x4E6);
  return random_connected_hypergraph(rng, c.n, vertices, edges);
}

PointSampler<int> random_vertices(int count) {
  return {[count](std::uint64_t seed, std::size_t i) {
            Rng rng = point_rng(seed, i);
            return static_cast<int>(rng.below(static_cast<std::uint64_t>(count)));
          },
          "uniform vertex of " + std::to_string(count)};
}

PointSampler<MatrixXd> random_sets(int dim) {
  if (dim < 1) throw UsageError("--dim must be >= 1");
  return {[dim](std::uint64_t seed, std::size_t i) {
            Rng rng = point_rng(seed, i);
            const auto size = static_cast<Index>(1 + rng.below(3));
            return sample_normal_matrix(rng, dim, size);
          },
          "sets of 1-3 normal(" + std::to_string(dim) + ") points"};
}

int require_pair(const MetricConfig& c) {
  if (c.n != 2) throw UsageError(c.metric + " is defined for --n 2 only");
  return 2;
}

// Calls fn(Setup<Point>) for the configured metric.
template <typename Fn>
auto dispatch(const MetricConfig& c, Fn&& fn) {
  const std::string& name = c.metric;
  metric_info(name);
  if (c.n < 2) throw UsageError("--n must be >= 2");

  if (name == "vandermonde") {
    PointSampler<Complex> sampler{[](std::uint64_t seed, std::size_t i) {
                                    Rng rng = point_rng(seed, i);
                                    const double re = rng.normal();
                                    return Complex(re, rng.normal());
                                  },
                                  "complex normal"};
    return fn(Setup<Complex>{vandermonde_metric(c.n), sampler});
  }
  if (name == "lift") return fn(Setup<VectorXd>{lift_componentwise(c.n, c.dim, c.p), normal_vectors(c.dim)});
  if (name == "lp-discrete") {
    DiscreteMeasureSpace space = measure_for(c);
    const int atoms = static_cast<int>(space.atoms());
    return fn(Setup<VectorXd>{lp_discrete_metric(c.n, std::move(space), c.p), normal_vectors(atoms)});
  }
  if (name == "simplex") return fn(Setup<VectorXd>{simplex_metric(c.n), normal_vectors(c.dim)});
  if (name == "sphere") {
    if (c.dim < 1) throw UsageError("--dim must be >= 1");
    const int dim = c.dim;
    PointSampler<VectorXd> sampler{[dim](std::uint64_t seed, std::size_t i) {
                                     Rng rng = point_rng(seed, i);
                                     return sample_unit_vector(rng, dim);
                                   },
                                   "unit sphere(" + std::to_string(dim) + ")"};
    return fn(Setup<VectorXd>{sphere_metric(c.n), sampler});
  }
  if (name == "stiefel") return fn(Setup<StiefelFrame>{stiefel_metric(c.n), random_frames(c.k, c.m)});
  if (name == "grassmann-proj") return fn(Setup<StiefelFrame>{grassmann_proj_metric(c.n), random_frames(c.k, c.m)});
  if (name == "grassmann-quotient") {
    require_pair(c);
    return fn(Setup<StiefelFrame>{grassmann_quotient_metric(), random_frames(c.k, c.m)});
  }
  if (name == "classical-grassmann") {
    require_pair(c);
    return fn(Setup<StiefelFrame>{classical_grassmann_metric(), random_frames(c.k, c.m)});
  }
  if (name == "gen-vandermonde") {
    SymmetricTensorMap a = tensor_for(c);
    const int dx = a.dim_in();
    return fn(Setup<VectorXd>{generalized_metric(std::move(a), c.p), normal_vectors(dx)});
  }
  if (name == "norm-product") return fn(Setup<VectorXd>{norm_product_metric(c.n), norm_product_sampler(c.n, c.dim)});
  if (name == "hyper") {
    Hypergraph h = hypergraph_for(c);
    if (h.arity() != c.n) throw UsageError("hypergraph arity differs from --n");
    const int count = h.vertex_count();
    return fn(Setup<int>{hyper_metric(std::move(h), c.force), random_vertices(count)});
  }
  if (name == "grassmann-quotient-n3") {
    AlignmentSearch search;
    search.seed = Rng(c.seed).split(0xA1).next_u64();
    auto metric = grassmann_quotient_search_metric(c.n, search);
    metric.label = name;
    return fn(Setup<StiefelFrame>{std::move(metric), random_frames(c.k, c.m)});
  }
  if (name == "grassmann-spectral-wedge") {
    return fn(Setup<StiefelFrame>{spectral_wedge_metric(c.n, WedgeDualNorm::spectral), random_frames(c.k, c.m)});
  }
  if (name == "grassmann-nuclear-wedge") {
    return fn(Setup<StiefelFrame>{spectral_wedge_metric(c.n, WedgeDualNorm::nuclear), random_frames(c.k, c.m)});
  }
  // hausdorff-simplex
  return fn(Setup<MatrixXd>{hausdorff_simplex_metric(c.n), random_sets(c.dim)});
}

template <typename Point>
std::vector<Point> tuple_of(const Json& j, const MetricConfig& c) {
  std::vector<Point> tuple;
  if constexpr (std::is_same_v<Point, int>) {
    // Vertex tuples are given by label.
    const Hypergraph h = hypergraph_for(c);
    for (const auto& label : j) tuple.push_back(h.index_of(label.is_string() ? label.get<std::string>()
                                                                              : std::to_string(label.get<long long>())));
  } else {
    tuple = tuple_from_json<Point>(j);
  }
  return tuple;
}

}  // namespace

PointSampler<VectorXd> norm_product_sampler(int n, int dim) {
  if (dim < 1) throw UsageError("--dim must be >= 1");
  const auto witness = static_cast<std::size_t>(n);
  return {[dim, witness](std::uint64_t seed, std::size_t i) {
            Rng rng = point_rng(seed, i);
            VectorXd v = sample_unit_vector(rng, dim);
            if (i == witness) v *= rng.uniform(0.0, 0.3);
            return v;
          },
          "unit sphere(" + std::to_string(dim) + "), witness radius U(0, 0.3)"};
}

CheckOutcome run_check(const MetricConfig& config) {
  const double tol = config.tol.value_or(metric_info(config.metric).default_tol);
  if (!(tol >= 0.0)) throw UsageError("--tol must be >= 0");
  return dispatch(config, [&](auto setup) {
    auto report = fuzz_metric(setup.metric, setup.sampler, config.trials, config.seed, tol, {config.threads});
    CheckOutcome out;
    out.violations = report.violations.size();
    out.report = report_to_json(report);
    out.report["experimental"] = metric_info(config.metric).experimental;
    return out;
  });
}

Json run_eval(const MetricConfig& config, const Json& tuple_input) {
  return dispatch(config, [&](auto setup) {
    using P = std::remove_cvref_t<decltype(setup.sampler.sample(0, 0))>;
    Json out = {{"metric", config.metric}, {"n", config.n}};
    const auto evaluate = [&](const Json& t) {
      const std::vector<P> tuple = tuple_of<P>(t, config);
      return setup.metric(std::span<const P>(tuple));
    };
    if (tuple_input.contains("tuples")) {
      Json values = Json::array();
      for (const auto& t : tuple_input.at("tuples")) values.push_back(number_json(evaluate(t)));
      out["values"] = values;
    } else {
      const char* key = std::is_same_v<P, StiefelFrame> ? "frames" : "points";
      if (!tuple_input.contains(key)) throw UsageError(std::string("input has no \"") + key + "\" or \"tuples\"");
      out["value"] = number_json(evaluate(tuple_input.at(key)));
    }
    return out;
  });
}

}  // namespace nmetric
