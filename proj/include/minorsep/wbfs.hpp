#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "minorsep/graph.hpp"

namespace minorsep {

using Distance = std::uint64_t;
inline constexpr Distance kUnreached = std::numeric_limits<Distance>::max();
inline constexpr Distance kUnlimited = std::numeric_limits<Distance>::max();

/// Rooted vertex-weighted shortest-path forest.
///
/// A path's length is the sum of the weights of its vertices, so a root r
/// has dist(r) = w(r) and every other reached vertex has
/// dist(v) = dist(parent(v)) + w(v).
struct WTree {
  std::vector<Vertex> roots;
  std::vector<Vertex> parent;           // kNoVertex for roots and unreached vertices
  std::vector<Distance> dist;           // kUnreached if not reached
  std::vector<Vertex> order;            // reached vertices by (dist, id)
  std::vector<std::uint32_t> subtree_size;  // 0 for unreached vertices
  VertexSet members;

  bool contains(Vertex v) const { return v < dist.size() && dist[v] != kUnreached; }
  std::size_t size() const { return members.size(); }
  std::size_t universe() const { return dist.size(); }
  Vertex root() const { return roots.front(); }
  /// Largest distance of a reached vertex, 0 for an empty tree.
  Distance depth() const { return order.empty() ? 0 : dist[order.back()]; }

  /// Rebuilds a tree from parent/dist arrays; derives order, sizes and members.
  static WTree from_parents(std::vector<Vertex> parent, std::vector<Distance> dist);
};

enum class BfsEngine {
  /// Dial-style circular buckets, falls back to a binary heap when the
  /// largest weight makes the bucket window too wide.
  Bucket,
  /// Literal split-vertex reduction to a 0/1-weighted digraph; O(m + W).
  SplitVertex,
};

/// Shortest-path forest from `sources`, restricted to `alive` vertices and
/// truncated to distance <= radius. Parents are canonical: the smallest-id
/// neighbor on some shortest path.
///
/// Throws ParameterError if `sources` is empty or holds a dead vertex, and
/// ArithmeticError if a distance overflows 64 bits.
WTree weighted_bfs(const Graph& g, const WeightFn& w, std::span<const Vertex> sources,
                   Distance radius = kUnlimited, MaskView alive = {},
                   BfsEngine engine = BfsEngine::Bucket);

inline WTree weighted_bfs(const Graph& g, const WeightFn& w, Vertex source,
                          Distance radius = kUnlimited, MaskView alive = {},
                          BfsEngine engine = BfsEngine::Bucket) {
  const Vertex s[1] = {source};
  return weighted_bfs(g, w, s, radius, alive, engine);
}

/// The `dist` array of weighted_bfs alone, without building the tree.
std::vector<Distance> weighted_distances(const Graph& g, const WeightFn& w, std::span<const Vertex> sources,
                                         Distance radius = kUnlimited, MaskView alive = {});

inline std::vector<Distance> weighted_distances(const Graph& g, const WeightFn& w, Vertex source,
                                                Distance radius = kUnlimited, MaskView alive = {}) {
  const Vertex s[1] = {source};
  return weighted_distances(g, w, s, radius, alive);
}

/// Vertex sequence v, parent(v), ..., root. Throws DomainError if v is not reached.
std::vector<Vertex> path_to_root(const WTree& tree, Vertex v);

/// Level interval [lo, hi] a vertex occupies: hi = dist(v), lo = hi - w(v) + 1.
struct LevelRange {
  Distance lo;
  Distance hi;
  friend bool operator==(const LevelRange&, const LevelRange&) = default;
};

LevelRange levels(const WTree& tree, const WeightFn& w, Vertex v);

/// Number of edges on the tree path from v to its root.
std::size_t tree_depth(const WTree& tree, Vertex v);

}  // namespace minorsep
