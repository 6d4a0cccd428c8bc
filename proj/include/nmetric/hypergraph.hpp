#pragma once

// n-uniform hypergraphs and the minimal connected edge cover distance.

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nmetric/axioms.hpp"
#include "nmetric/rng.hpp"

namespace nmetric {

/// Largest edge count d_hyper accepts without `force`.
inline constexpr std::size_t kHyperEdgeCapacity = 24;

class Hypergraph {
 public:
  using Edge = std::vector<int>;  // sorted dense vertex indices

  /// Vertices are labelled "1".."vertex_count".
  Hypergraph(int n, int vertex_count);

  static Hypergraph from_labels(int n, std::vector<std::string> vertices,
                                const std::vector<std::vector<std::string>>& edges);

  int arity() const { return n_; }
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const;
  int index_of(const std::string& label) const;

  /// Adds an edge of n distinct known vertices; duplicates are rejected.
  void add_edge(std::vector<int> vertices);
  void add_edge(const std::vector<std::string>& vertices);

  bool has_edge(std::span<const int> vertices) const;

 private:
  int n_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
};

/// Whether two sorted edges share a vertex.
bool edges_intersect(const Hypergraph::Edge& a, const Hypergraph::Edge& b);

/// The edges indexed by `subset` form a connected intersection graph.
bool is_connected_component(const Hypergraph& h, std::span<const std::size_t> subset);

/// E is a connected component and covers every vertex.
bool is_connected(const Hypergraph& h);

/// Fewest edges of a connected component covering the tuple; 0 on repeats.
int d_hyper(const Hypergraph& h, std::span<const int> tuple, bool force = false);

/// max_{i<j} (d(tuple, y at i) + d(tuple, y at j)) - d(tuple).
int sharper_inequality_margin(const Hypergraph& h, std::span<const int> tuple, int y, bool force = false);

/// Points are dense vertex indices of a copy of `h`.
MetricEvaluator<int> hyper_metric(Hypergraph h, bool force = false);

/// Connected n-uniform hypergraph with `vertex_count` vertices and
/// `edge_count` distinct edges; needs ceil((V - 1) / (n - 1)) <= edge_count <= C(V, n).
Hypergraph random_connected_hypergraph(Rng& rng, int n, int vertex_count, std::size_t edge_count);

}  // namespace nmetric
