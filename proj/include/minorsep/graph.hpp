#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace minorsep {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

using Edge = std::pair<Vertex, Vertex>;

/// Membership mask over the vertices of a graph; an empty span means "all".
using Mask = std::vector<std::uint8_t>;
using MaskView = std::span<const std::uint8_t>;

inline bool is_alive(MaskView alive, Vertex v) { return alive.empty() || alive[v] != 0; }

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted ascending, there are no loops or parallel
/// edges, and every edge {u,v} is stored in both lists.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds the canonical simple graph: loops dropped, duplicates merged.
  /// Throws InputError when an endpoint is out of range.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges {u,v} with u < v in ascending (u, v) order.
  std::vector<Edge> edges() const;

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<Vertex>& adjacency() const { return adjacency_; }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// build_graph(n, edges): alias of Graph::from_edges.
inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  return Graph::from_edges(n, edges);
}

/// Positive 64-bit vertex weights with a cached exact total.
class WeightFn {
 public:
  WeightFn() = default;
  /// Throws ParameterError on a zero weight, ArithmeticError if the sum overflows.
  explicit WeightFn(std::vector<std::uint64_t> weights);
  static WeightFn uniform(std::size_t n, std::uint64_t value);

  std::uint64_t operator[](Vertex v) const { return weights_[v]; }
  std::size_t size() const { return weights_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t max() const;
  const std::vector<std::uint64_t>& values() const { return weights_; }

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

/// Strictly increasing list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates.
  static VertexSet from_unsorted(std::vector<Vertex> ids);
  /// Caller guarantees ids are strictly increasing.
  static VertexSet from_sorted(std::vector<Vertex> ids);
  static VertexSet from_mask(MaskView mask);

  bool contains(Vertex v) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex front() const { return ids_.front(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<Vertex>& ids() const { return ids_; }

  Mask to_mask(std::size_t n) const;
  VertexSet united(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

/// Partition of (a subset of) the vertices into labelled parts.
struct Partition {
  std::vector<Vertex> part_of;  // kNoVertex outside the domain
  std::vector<VertexSet> parts;

  static Partition from_parts(std::size_t n, std::vector<VertexSet> parts);
};

inline constexpr Vertex kNoLabel = kNoVertex;

/// Component labelling; label 0 is the largest component (ties broken by
/// the smallest vertex id it contains). Dead vertices carry kNoLabel.
struct Components {
  std::vector<Vertex> label;
  std::vector<std::size_t> sizes;  // descending

  std::size_t count() const { return sizes.size(); }
  VertexSet members(Vertex component) const;
};

Components connected_components(const Graph& g, MaskView alive = {});

/// Induced subgraph with a back-map to the parent graph's ids.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_original;
};

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep);
/// G - S.
Subgraph delete_vertices(const Graph& g, const VertexSet& removed);

/// Quotient graph of a partition into connected parts.
struct Quotient {
  Graph graph;
  std::vector<VertexSet> lift;  // quotient vertex -> original vertices
};

/// Throws ContractError if a part is empty or does not induce a connected subgraph.
Quotient contract_partition(const Graph& g, const Partition& partition);

/// True if the vertices in `set` induce a connected subgraph (empty set: false).
bool induces_connected(const Graph& g, const VertexSet& set);

}  // namespace minorsep
