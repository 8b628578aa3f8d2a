#include "minorsep/wbfs.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <string>

#include "minorsep/errors.hpp"

namespace minorsep {
namespace {

// Above this many candidate distance values per vertex+edge the bucket scan
// costs more than a heap.
constexpr std::uint64_t kBucketScanFactor = 64;
constexpr std::uint64_t kMaxBucketWindow = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxSplitNodes = std::uint64_t{1} << 27;

Distance checked_add(Distance a, std::uint64_t b) {
  Distance out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticError("vertex-weighted distance overflows 64 bits");
  return out;
}

void check_sources(const Graph& g, std::span<const Vertex> sources, MaskView alive) {
  if (sources.empty()) throw ParameterError("weighted_bfs needs at least one source");
  for (Vertex s : sources) {
    if (s >= g.num_vertices()) throw ParameterError("source " + std::to_string(s) + " out of range");
    if (!is_alive(alive, s)) throw ParameterError("source " + std::to_string(s) + " is not alive");
  }
}

// `order` lists the reached vertices by (dist, id).
WTree assemble(std::vector<Vertex> parent, std::vector<Distance> dist, std::vector<Vertex> order) {
  WTree t;
  const std::size_t n = dist.size();
  t.subtree_size.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    t.subtree_size[v] += 1;
    if (parent[v] != kNoVertex) {
      t.subtree_size[parent[v]] += t.subtree_size[v];
    } else {
      t.roots.push_back(v);
    }
  }
  std::sort(t.roots.begin(), t.roots.end());
  std::vector<Vertex> members;
  members.reserve(order.size());
  for (Vertex v = 0; v < n; ++v) {
    if (dist[v] != kUnreached) members.push_back(v);
  }
  t.members = VertexSet::from_sorted(std::move(members));
  t.order = std::move(order);
  t.parent = std::move(parent);
  t.dist = std::move(dist);
  return t;
}

// Weights are positive, so every distance below `cur` is final. Parents are
// filled as vertices settle; adjacency is sorted, so the first match is canonical.
// Buckets are sorted before popping, so `order` comes out by (dist, id).
// Both outputs are optional.
std::vector<Distance> dial_distances(const Graph& g, const WeightFn& w, std::span<const Vertex> sources,
                                     Distance radius, MaskView alive, std::uint64_t window,
                                     std::vector<Vertex>* parent, std::vector<Vertex>* order) {
  const std::size_t n = g.num_vertices();
  std::vector<Distance> dist(n, kUnreached);
  if (parent) parent->assign(n, kNoVertex);
  if (order) order->clear();
  std::vector<std::vector<Vertex>> buckets(window);
  std::size_t pending = 0;
  Distance cur = kUnreached;
  for (Vertex s : sources) {
    if (w[s] > radius || dist[s] <= w[s]) continue;
    dist[s] = w[s];
    buckets[w[s] % window].push_back(s);
    ++pending;
    cur = std::min(cur, w[s]);
  }
  std::vector<Vertex> batch;
  while (pending > 0) {
    auto& bucket = buckets[cur % window];
    if (bucket.empty()) {
      ++cur;
      continue;
    }
    batch.swap(bucket);
    pending -= batch.size();
    if (order) std::sort(batch.begin(), batch.end());
    for (Vertex u : batch) {
      if (dist[u] != cur) continue;
      if (order) order->push_back(u);
      const Distance above = cur - w[u];
      bool want_parent = parent && cur > w[u];
      for (Vertex v : g.neighbors(u)) {
        if (dist[v] <= cur) {
          if (want_parent && dist[v] == above) (*parent)[u] = v, want_parent = false;
          continue;
        }
        if (!is_alive(alive, v)) continue;
        const Distance nd = checked_add(cur, w[v]);
        if (nd <= radius && nd < dist[v]) {
          dist[v] = nd;
          buckets[nd % window].push_back(v);
          ++pending;
        }
      }
    }
    batch.clear();
    ++cur;
  }
  return dist;
}

std::vector<Distance> heap_distances(const Graph& g, const WeightFn& w, std::span<const Vertex> sources,
                                     Distance radius, MaskView alive) {
  const std::size_t n = g.num_vertices();
  std::vector<Distance> dist(n, kUnreached);
  using Item = std::pair<Distance, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex s : sources) {
    if (w[s] > radius || dist[s] <= w[s]) continue;
    dist[s] = w[s];
    heap.emplace(w[s], s);
  }
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (!is_alive(alive, v)) continue;
      const Distance nd = checked_add(d, w[v]);
      if (nd <= radius && nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

// Each vertex v becomes a chain v_0 (in) -> ... -> v_{w(v)} (out) of unit
// arcs; every edge uv adds zero arcs u_out -> v_in and v_out -> u_in.
std::vector<Distance> split_vertex_distances(const Graph& g, const WeightFn& w,
                                             std::span<const Vertex> sources, Distance radius,
                                             MaskView alive) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> offset(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t len = is_alive(alive, v) ? w[v] + 1 : 0;
    offset[v + 1] = checked_add(offset[v], len);
    if (offset[v + 1] > kMaxSplitNodes) {
      throw ParameterError("split-vertex engine limited to " + std::to_string(kMaxSplitNodes) +
                           " expanded nodes; total weight too large");
    }
  }
  std::vector<Distance> node_dist(offset[n], kUnreached);
  std::vector<Vertex> owner(offset[n]);
  for (Vertex v = 0; v < n; ++v) {
    for (auto i = offset[v]; i < offset[v + 1]; ++i) owner[i] = v;
  }
  std::deque<std::uint64_t> dq;
  for (Vertex s : sources) {
    node_dist[offset[s]] = 0;
    dq.push_back(offset[s]);
  }
  while (!dq.empty()) {
    const std::uint64_t x = dq.front();
    dq.pop_front();
    const Vertex v = owner[x];
    const Distance d = node_dist[x];
    const std::uint64_t out = offset[v + 1] - 1;
    if (x < out) {
      if (d + 1 < node_dist[x + 1]) {
        node_dist[x + 1] = d + 1;
        dq.push_back(x + 1);
      }
      continue;
    }
    for (Vertex u : g.neighbors(v)) {
      if (!is_alive(alive, u)) continue;
      const std::uint64_t in = offset[u];
      if (d < node_dist[in]) {
        node_dist[in] = d;
        dq.push_front(in);
      }
    }
  }
  std::vector<Distance> dist(n, kUnreached);
  for (Vertex v = 0; v < n; ++v) {
    if (!is_alive(alive, v)) continue;
    const Distance d = node_dist[offset[v + 1] - 1];
    if (d != kUnreached && d <= radius) dist[v] = d;
  }
  return dist;
}

// Fills any parent the distance pass left unset.
WTree finalize(const Graph& g, const WeightFn& w, std::span<const Vertex> sources, MaskView alive,
               std::vector<Distance> dist, std::vector<Vertex> parent, std::vector<Vertex> order) {
  const std::size_t n = g.num_vertices();
  if (parent.empty()) parent.assign(n, kNoVertex);
  std::vector<std::uint8_t> is_source(n, 0);
  for (Vertex s : sources) is_source[s] = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (parent[v] != kNoVertex || dist[v] == kUnreached || (is_source[v] && dist[v] == w[v])) continue;
    for (Vertex u : g.neighbors(v)) {
      if (is_alive(alive, u) && dist[u] != kUnreached && dist[u] + w[v] == dist[v]) {
        parent[v] = u;
        break;
      }
    }
    if (parent[v] == kNoVertex) throw InternalError("no shortest-path parent for vertex " + std::to_string(v));
  }
  WTree tree = order.empty() ? WTree::from_parents(std::move(parent), std::move(dist))
                             : assemble(std::move(parent), std::move(dist), std::move(order));
  tree.roots.clear();
  for (Vertex s : sources) {
    if (tree.contains(s) && tree.parent[s] == kNoVertex) tree.roots.push_back(s);
  }
  std::sort(tree.roots.begin(), tree.roots.end());
  tree.roots.erase(std::unique(tree.roots.begin(), tree.roots.end()), tree.roots.end());
  return tree;
}

std::vector<Distance> distances(const Graph& g, const WeightFn& w, std::span<const Vertex> sources, Distance radius,
                                MaskView alive, BfsEngine engine, std::vector<Vertex>* parent,
                                std::vector<Vertex>* order) {
  check_sources(g, sources, alive);
  if (w.size() != g.num_vertices()) throw ParameterError("weight function size does not match graph");
  if (engine == BfsEngine::SplitVertex) return split_vertex_distances(g, w, sources, radius, alive);
  const std::uint64_t window = w.max() + 1;
  const std::uint64_t budget = kBucketScanFactor * (g.num_vertices() + 2 * g.num_edges() + 1);
  if (window <= kMaxBucketWindow && w.total() <= budget) {
    return dial_distances(g, w, sources, radius, alive, window, parent, order);
  }
  return heap_distances(g, w, sources, radius, alive);
}

}  // namespace

WTree WTree::from_parents(std::vector<Vertex> parent, std::vector<Distance> dist) {
  const std::size_t n = dist.size();
  if (parent.size() != n) throw InputError("parent and distance arrays differ in length");
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) {
    if (dist[v] == kUnreached) continue;
    if (parent[v] != kNoVertex && (parent[v] >= n || dist[parent[v]] >= dist[v])) {
      throw InputError("tree parent of " + std::to_string(v) + " is not closer to the root");
    }
    order.push_back(v);
  }
  Distance far = 0;
  for (Vertex v : order) far = std::max(far, dist[v]);
  if (far <= 4 * static_cast<Distance>(n) + 64) {
    // Counting sort keeps the ascending-id order within each distance.
    std::vector<std::size_t> start(far + 2, 0);
    for (Vertex v : order) ++start[dist[v] + 1];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];
    std::vector<Vertex> sorted(order.size());
    for (Vertex v : order) sorted[start[dist[v]]++] = v;
    order = std::move(sorted);
  } else {
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  }
  return assemble(std::move(parent), std::move(dist), std::move(order));
}

WTree weighted_bfs(const Graph& g, const WeightFn& w, std::span<const Vertex> sources, Distance radius,
                   MaskView alive, BfsEngine engine) {
  std::vector<Vertex> parent, order;
  std::vector<Distance> dist = distances(g, w, sources, radius, alive, engine, &parent, &order);
  return finalize(g, w, sources, alive, std::move(dist), std::move(parent), std::move(order));
}

std::vector<Distance> weighted_distances(const Graph& g, const WeightFn& w, std::span<const Vertex> sources,
                                         Distance radius, MaskView alive) {
  return distances(g, w, sources, radius, alive, BfsEngine::Bucket, nullptr, nullptr);
}

std::vector<Vertex> path_to_root(const WTree& tree, Vertex v) {
  if (!tree.contains(v)) throw DomainError("vertex " + std::to_string(v) + " is not in the tree");
  std::vector<Vertex> path{v};
  while (tree.parent[path.back()] != kNoVertex) path.push_back(tree.parent[path.back()]);
  return path;
}

LevelRange levels(const WTree& tree, const WeightFn& w, Vertex v) {
  if (!tree.contains(v)) throw DomainError("vertex " + std::to_string(v) + " is not in the tree");
  return {tree.dist[v] - w[v] + 1, tree.dist[v]};
}

std::size_t tree_depth(const WTree& tree, Vertex v) { return path_to_root(tree, v).size() - 1; }

}  // namespace minorsep
