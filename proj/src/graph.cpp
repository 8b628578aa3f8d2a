#include "minorsep/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "minorsep/errors.hpp"

namespace minorsep {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n >= kNoVertex) throw InputError("vertex count too large: " + std::to_string(n));
  std::vector<std::uint64_t> degree(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for n=" + std::to_string(n));
    }
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }
  // Bucket the half-edges by source, then sort and dedupe each list.
  std::vector<std::uint64_t> start(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) start[v + 1] = start[v] + degree[v];
  std::vector<Vertex> raw(start[n]);
  std::vector<std::uint64_t> fill(start.begin(), start.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[fill[u]++] = v;
    raw[fill[v]++] = u;
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.adjacency_.reserve(raw.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(start[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(start[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.adjacency_.insert(g.adjacency_.end(), first, last);
    g.offsets_[v + 1] = g.adjacency_.size();
  }
  g.adjacency_.shrink_to_fit();
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

WeightFn::WeightFn(std::vector<std::uint64_t> weights) : weights_(std::move(weights)) {
  for (std::size_t v = 0; v < weights_.size(); ++v) {
    if (weights_[v] == 0) throw ParameterError("weight of vertex " + std::to_string(v) + " is zero");
    if (__builtin_add_overflow(total_, weights_[v], &total_)) {
      throw ArithmeticError("total vertex weight overflows 64 bits");
    }
  }
}

WeightFn WeightFn::uniform(std::size_t n, std::uint64_t value) {
  return WeightFn(std::vector<std::uint64_t>(n, value));
}

std::uint64_t WeightFn::max() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> ids) {
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

VertexSet VertexSet::from_mask(MaskView mask) {
  std::vector<Vertex> ids;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) ids.push_back(static_cast<Vertex>(v));
  }
  return from_sorted(std::move(ids));
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

Mask VertexSet::to_mask(std::size_t n) const {
  Mask mask(n, 0);
  for (Vertex v : ids_) mask[v] = 1;
  return mask;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  std::vector<Vertex> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out));
  return from_sorted(std::move(out));
}

Partition Partition::from_parts(std::size_t n, std::vector<VertexSet> parts) {
  Partition p;
  p.part_of.assign(n, kNoVertex);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (v >= n) throw InputError("partition vertex out of range");
      if (p.part_of[v] != kNoVertex) throw InputError("partition parts overlap at vertex " + std::to_string(v));
      p.part_of[v] = static_cast<Vertex>(i);
    }
  }
  p.parts = std::move(parts);
  return p;
}

VertexSet Components::members(Vertex component) const {
  std::vector<Vertex> ids;
  ids.reserve(sizes.at(component));
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (label[v] == component) ids.push_back(static_cast<Vertex>(v));
  }
  return VertexSet::from_sorted(std::move(ids));
}

Components connected_components(const Graph& g, MaskView alive) {
  const std::size_t n = g.num_vertices();
  // Union-find over edges in id order; every root is its component's smallest id.
  std::vector<Vertex> link(n);
  for (Vertex v = 0; v < n; ++v) link[v] = v;
  auto find = [&](Vertex v) {
    while (link[v] != v) v = link[v] = link[link[v]];
    return v;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (!is_alive(alive, v)) continue;
    for (Vertex u : g.neighbors(v)) {
      if (u >= v || !is_alive(alive, u)) continue;
      const Vertex a = find(u), b = find(v);
      if (a < b) {
        link[b] = a;
      } else if (b < a) {
        link[a] = b;
      }
    }
  }
  // Roots come first in id order, so raw label order = order of minimum ids.
  std::vector<Vertex> raw(n, kNoLabel);
  std::vector<std::size_t> sizes;
  for (Vertex v = 0; v < n; ++v) {
    if (!is_alive(alive, v)) continue;
    const Vertex r = find(v);
    if (r == v) {
      raw[v] = static_cast<Vertex>(sizes.size());
      sizes.push_back(0);
    }
    raw[v] = raw[r];
    ++sizes[raw[v]];
  }

  // Descending size, ties by minimum id: a stable counting sort on size.
  std::vector<std::size_t> start(n + 2, 0);
  for (std::size_t sz : sizes) ++start[n - sz + 1];
  for (std::size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];
  std::vector<Vertex> order(sizes.size());
  for (std::size_t c = 0; c < sizes.size(); ++c) order[start[n - sizes[c]]++] = static_cast<Vertex>(c);
  std::vector<Vertex> rank(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<Vertex>(i);

  Components c;
  c.label.resize(n);
  for (std::size_t v = 0; v < n; ++v) c.label[v] = raw[v] == kNoLabel ? kNoLabel : rank[raw[v]];
  c.sizes.resize(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) c.sizes[i] = sizes[order[i]];
  return c;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> to_new(n, kNoVertex);
  Subgraph sub;
  sub.to_original = keep.ids();
  for (std::size_t i = 0; i < sub.to_original.size(); ++i) {
    if (sub.to_original[i] >= n) throw InputError("vertex out of range in induced_subgraph");
    to_new[sub.to_original[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sub.to_original.size(); ++i) {
    for (Vertex v : g.neighbors(sub.to_original[i])) {
      const Vertex j = to_new[v];
      if (j != kNoVertex && i < j) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  sub.graph = Graph::from_edges(sub.to_original.size(), edges);
  return sub;
}

Subgraph delete_vertices(const Graph& g, const VertexSet& removed) {
  Mask keep(g.num_vertices(), 1);
  for (Vertex v : removed) {
    if (v >= g.num_vertices()) throw InputError("vertex out of range in delete_vertices");
    keep[v] = 0;
  }
  return induced_subgraph(g, VertexSet::from_mask(keep));
}

bool induces_connected(const Graph& g, const VertexSet& set) {
  if (set.empty()) return false;
  Mask inside = set.to_mask(g.num_vertices());
  std::vector<Vertex> stack{set.front()};
  inside[set.front()] = 2;
  std::size_t seen = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u)) {
      if (inside[v] == 1) {
        inside[v] = 2;
        ++seen;
        stack.push_back(v);
      }
    }
  }
  return seen == set.size();
}

Quotient contract_partition(const Graph& g, const Partition& partition) {
  if (partition.part_of.size() != g.num_vertices()) {
    throw ContractError("partition size does not match graph");
  }
  for (std::size_t i = 0; i < partition.parts.size(); ++i) {
    if (!induces_connected(g, partition.parts[i])) {
      throw ContractError("part " + std::to_string(i) + " does not induce a connected subgraph");
    }
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const Vertex pu = partition.part_of[u];
    if (pu == kNoVertex) continue;
    for (Vertex v : g.neighbors(u)) {
      const Vertex pv = partition.part_of[v];
      if (pv != kNoVertex && pu < pv) edges.emplace_back(pu, pv);
    }
  }
  Quotient q;
  q.graph = Graph::from_edges(partition.parts.size(), edges);
  q.lift = partition.parts;
  return q;
}

}  // namespace minorsep
