#include "nmetric/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>

namespace nmetric {

Hypergraph::Hypergraph(int n, int vertex_count) : n_(n) {
  if (n < 2) throw UsageError("hypergraph: arity must be >= 2");
  if (vertex_count < 0) throw UsageError("hypergraph: negative vertex count");
  for (int v = 0; v < vertex_count; ++v) {
    labels_.push_back(std::to_string(v + 1));
    index_.emplace(labels_.back(), v);
  }
}

Hypergraph Hypergraph::from_labels(int n, std::vector<std::string> vertices,
                                   const std::vector<std::vector<std::string>>& edges) {
  Hypergraph h(n, 0);
  for (auto& label : vertices) {
    if (!h.index_.emplace(label, static_cast<int>(h.labels_.size())).second) {
      throw UsageError("hypergraph: duplicate vertex '" + label + "'");
    }
    h.labels_.push_back(std::move(label));
  }
  for (const auto& e : edges) h.add_edge(e);
  return h;
}

const std::string& Hypergraph::label(int v) const {
  if (v < 0 || v >= vertex_count()) throw UsageError("hypergraph: vertex index out of range");
  return labels_[static_cast<std::size_t>(v)];
}

int Hypergraph::index_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw UsageError("hypergraph: unknown vertex '" + label + "'");
  return it->second;
}

void Hypergraph::add_edge(std::vector<int> vertices) {
  if (static_cast<int>(vertices.size()) != n_) {
    throw UsageError("hypergraph: edge has " + std::to_string(vertices.size()) + " vertices, expected " +
                     std::to_string(n_));
  }
  for (int v : vertices) label(v);
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw UsageError("hypergraph: edge repeats a vertex");
  }
  if (has_edge(vertices)) throw UsageError("hypergraph: duplicate edge");
  edges_.push_back(std::move(vertices));
}

void Hypergraph::add_edge(const std::vector<std::string>& vertices) {
  std::vector<int> ids;
  ids.reserve(vertices.size());
  for (const auto& label : vertices) ids.push_back(index_of(label));
  add_edge(std::move(ids));
}

bool Hypergraph::has_edge(std::span<const int> vertices) const {
  Edge sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  return std::find(edges_.begin(), edges_.end(), sorted) != edges_.end();
}

bool edges_intersect(const Hypergraph::Edge& a, const Hypergraph::Edge& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

bool is_connected_component(const Hypergraph& h, std::span<const std::size_t> subset) {
  if (subset.empty()) throw UsageError("is_connected_component: empty edge subset");
  for (std::size_t e : subset) {
    if (e >= h.edge_count()) throw UsageError("is_connected_component: edge index out of range");
  }
  DisjointSets sets(subset.size());
  std::size_t components = subset.size();
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (edges_intersect(h.edges()[subset[i]], h.edges()[subset[j]]) && sets.unite(i, j)) --components;
    }
  }
  return components == 1;
}

bool is_connected(const Hypergraph& h) {
  if (h.edge_count() == 0) return h.vertex_count() == 0;
  std::vector<std::size_t> all(h.edge_count());
  std::iota(all.begin(), all.end(), 0);
  if (!is_connected_component(h, all)) return false;
  std::vector<bool> covered(static_cast<std::size_t>(h.vertex_count()), false);
  for (const auto& e : h.edges()) {
    for (int v : e) covered[static_cast<std::size_t>(v)] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

namespace {

// Include/exclude enumeration of connected edge subsets grown from a root:
// each connected subset containing the root is visited at most once.
class CoverSearch {
 public:
  CoverSearch(const Hypergraph& h, std::span<const int> targets)
      : h_(h), targets_(targets.begin(), targets.end()), adjacent_(h.edge_count()) {
    const std::size_t m = h.edge_count();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (edges_intersect(h.edges()[a], h.edges()[b])) {
          adjacent_[a].push_back(b);
          adjacent_[b].push_back(a);
        }
      }
    }
    hits_.assign(static_cast<std::size_t>(h.vertex_count()), 0);
    is_target_.assign(static_cast<std::size_t>(h.vertex_count()), false);
    for (int t : targets_) is_target_[static_cast<std::size_t>(t)] = true;
  }

  bool exists(std::size_t budget) {
    budget_ = budget;
    const std::size_t m = h_.edge_count();
    state_.assign(m, State::free);
    const int first = targets_.front();
    std::vector<std::size_t> roots;
    for (std::size_t e = 0; e < m; ++e) {
      if (std::binary_search(h_.edges()[e].begin(), h_.edges()[e].end(), first)) roots.push_back(e);
    }
    // Subsets through earlier roots were already enumerated.
    for (std::size_t r : roots) {
      include(r);
      const bool found = grow();
      exclude_undo_include(r);
      if (found) return true;
      state_[r] = State::excluded;
    }
    return false;
  }

 private:
  enum class State { free, chosen, excluded };

  void include(std::size_t e) {
    state_[e] = State::chosen;
    ++size_;
    for (int v : h_.edges()[e]) {
      if (is_target_[static_cast<std::size_t>(v)] && hits_[static_cast<std::size_t>(v)]++ == 0) ++covered_;
    }
  }

  void exclude_undo_include(std::size_t e) {
    state_[e] = State::free;
    --size_;
    for (int v : h_.edges()[e]) {
      if (is_target_[static_cast<std::size_t>(v)] && --hits_[static_cast<std::size_t>(v)] == 0) --covered_;
    }
  }

  bool grow() {
    const std::size_t uncovered = targets_.size() - covered_;
    if (uncovered == 0) return true;
    const std::size_t n = static_cast<std::size_t>(h_.arity());
    if (size_ + (uncovered + n - 1) / n > budget_) return false;

    std::size_t next = h_.edge_count();
    for (std::size_t e = 0; e < h_.edge_count() && next == h_.edge_count(); ++e) {
      if (state_[e] != State::chosen) continue;
      for (std::size_t f : adjacent_[e]) {
        if (state_[f] == State::free) {
          next = f;
          break;
        }
      }
    }
    if (next == h_.edge_count()) return false;

    include(next);
    bool found = grow();
    exclude_undo_include(next);
    if (!found) {
      state_[next] = State::excluded;
      found = grow();
      state_[next] = State::free;
    }
    return found;
  }

  const Hypergraph& h_;
  std::vector<int> targets_;
  std::vector<std::vector<std::size_t>> adjacent_;
  std::vector<int> hits_;
  std::vector<bool> is_target_;
  std::vector<State> state_;
  std::size_t covered_ = 0;
  std::size_t size_ = 0;
  std::size_t budget_ = 0;
};

}  // namespace

int d_hyper(const Hypergraph& h, std::span<const int> tuple, bool force) {
  if (static_cast<int>(tuple.size()) != h.arity()) {
    throw UsageError("d_hyper: tuple has " + std::to_string(tuple.size()) + " vertices, expected " +
                     std::to_string(h.arity()));
  }
  for (int v : tuple) h.label(v);
  if (!force && h.edge_count() > kHyperEdgeCapacity) {
    throw CapacityError("d_hyper: " + std::to_string(h.edge_count()) + " edges exceed the exact-search limit of " +
                        std::to_string(kHyperEdgeCapacity) + " (use --force)");
  }
  if (!is_connected(h)) throw DisconnectedHypergraph("d_hyper: hypergraph is not connected");

  std::vector<int> sorted(tuple.begin(), tuple.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;

  CoverSearch search(h, tuple);
  for (std::size_t p = 1; p <= h.edge_count(); ++p) {
    if (search.exists(p)) return static_cast<int>(p);
  }
  throw ConstructionBug("d_hyper: connected hypergraph without a covering component");
}

int sharper_inequality_margin(const Hypergraph& h, std::span<const int> tuple, int y, bool force) {
  const int base = d_hyper(h, tuple, force);
  std::vector<int> replaced(tuple.begin(), tuple.end());
  std::vector<int> substituted;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    replaced[i] = y;
    substituted.push_back(d_hyper(h, replaced, force));
    replaced[i] = tuple[i];
  }
  int best = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < substituted.size(); ++i) {
    for (std::size_t j = i + 1; j < substituted.size(); ++j) best = std::max(best, substituted[i] + substituted[j]);
  }
  return best - base;
}

MetricEvaluator<int> hyper_metric(Hypergraph h, bool force) {
  auto shared = std::make_shared<const Hypergraph>(std::move(h));
  const int n = shared->arity();
  return {n,
          [shared, force](std::span<const int> tuple) { return static_cast<double>(d_hyper(*shared, tuple, force)); },
          "hyper"};
}

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

Hypergraph random_connected_hypergraph(Rng& rng, int n, int vertex_count, std::size_t edge_count) {
  if (n < 2 || vertex_count < n) throw UsageError("random_connected_hypergraph: need 2 <= n <= vertex count");
  const auto minimum = static_cast<std::size_t>((vertex_count - 1 + n - 2) / (n - 1));
  if (edge_count < minimum || static_cast<double>(edge_count) > binomial(vertex_count, n)) {
    throw UsageError("random_connected_hypergraph: edge count out of range");
  }
  Hypergraph h(n, vertex_count);
  std::vector<int> order(static_cast<std::size_t>(vertex_count));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  // Spanning part: each new edge keeps one reached vertex and adds up to n - 1 new ones.
  std::size_t reached = static_cast<std::size_t>(n);
  h.add_edge(std::vector<int>(order.begin(), order.begin() + n));
  while (reached < order.size()) {
    std::vector<int> edge;
    const std::size_t fresh = std::min<std::size_t>(static_cast<std::size_t>(n - 1), order.size() - reached);
    for (std::size_t i = 0; i < fresh; ++i) edge.push_back(order[reached + i]);
    std::vector<int> old(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(reached));
    while (static_cast<int>(edge.size()) < n) {
      const auto pick = static_cast<std::size_t>(rng.below(old.size()));
      edge.push_back(old[pick]);
      old.erase(old.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    reached += fresh;
    h.add_edge(std::move(edge));
  }
  if (h.edge_count() > edge_count) throw UsageError("random_connected_hypergraph: edge count below spanning size");

  while (h.edge_count() < edge_count) {
    std::vector<int> pool(order);
    std::vector<int> edge;
    for (int i = 0; i < n; ++i) {
      const auto pick = static_cast<std::size_t>(rng.below(pool.size()));
      edge.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (!h.has_edge(edge)) h.add_edge(std::move(edge));
  }
  return h;
}

}  // namespace nmetric
