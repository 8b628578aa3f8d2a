#include "minorsep/dense.hpp"

#include <algorithm>
#include <unordered_set>

#include "minorsep/errors.hpp"
#include "minorsep/verify.hpp"

namespace minorsep {
namespace {

std::size_t floor_102(std::size_t d) { return 102 * d / 100; }
std::size_t ceil_094(std::size_t d) { return (94 * d + 99) / 100; }

// Degree buckets as intrusive doubly linked lists. New entries go to the tail,
// so the head of a bucket is the oldest vertex at that degree.
class DegreeBuckets {
 public:
  explicit DegreeBuckets(std::size_t n)
      : head_(n + 1, kNoVertex), tail_(n + 1, kNoVertex), next_(n, kNoVertex), prev_(n, kNoVertex),
        bucket_(n, kAbsent) {}

  void insert(Vertex v, std::size_t deg) {
    bucket_[v] = deg;
    prev_[v] = tail_[deg];
    next_[v] = kNoVertex;
    if (tail_[deg] != kNoVertex) next_[tail_[deg]] = v; else head_[deg] = v;
    tail_[deg] = v;
    lowest_ = std::min(lowest_, deg);
  }

  void erase(Vertex v) {
    const std::size_t deg = bucket_[v];
    if (prev_[v] != kNoVertex) next_[prev_[v]] = next_[v]; else head_[deg] = next_[v];
    if (next_[v] != kNoVertex) prev_[next_[v]] = prev_[v]; else tail_[deg] = prev_[v];
    bucket_[v] = kAbsent;
  }

  void move(Vertex v, std::size_t deg) {
    erase(v);
    insert(v, deg);
  }

  // Smallest nonempty bucket, scanning forward from the last known minimum.
  std::size_t min_degree() {
    while (lowest_ < head_.size() && head_[lowest_] == kNoVertex) ++lowest_;
    return lowest_;
  }

  Vertex first(std::size_t deg) const { return head_[deg]; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<Vertex> head_, tail_, next_, prev_;
  std::vector<std::size_t> bucket_;
  std::size_t lowest_ = 0;
};

std::size_t common_count(const std::unordered_set<Vertex>& a, const std::unordered_set<Vertex>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t c = 0;
  for (Vertex x : small) c += large.count(x);
  return c;
}

std::vector<Vertex> sorted(const std::unordered_set<Vertex>& s) {
  std::vector<Vertex> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

class BitMatrix {
 public:
  explicit BitMatrix(const Graph& g) : n_(g.num_vertices()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : g.neighbors(u)) bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  bool operator()(Vertex u, Vertex v) const { return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U; }

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

void check_dense_input(const Graph& h, std::size_t max_vertices, std::size_t min_degree, const char* op) {
  if (h.num_vertices() > max_vertices) {
    throw DomainError(std::string(op) + ": " + std::to_string(h.num_vertices()) + " vertices exceeds " +
                      std::to_string(max_vertices));
  }
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (h.degree(v) < min_degree) {
      throw DomainError(std::string(op) + ": vertex " + std::to_string(v) + " has degree " +
                        std::to_string(h.degree(v)) + " < " + std::to_string(min_degree));
    }
  }
}

MinorModel model_from_sets(std::vector<std::vector<Vertex>> sets) {
  MinorModel m;
  for (auto& s : sets) m.branch_sets.push_back(VertexSet::from_unsorted(std::move(s)));
  return m;
}

}  // namespace

std::size_t dense_clique_order(std::size_t d) { return isqrt(d) / 10; }

DensifyResult densify(const Graph& g, std::size_t d) {
  const std::size_t n = g.num_vertices();
  if (d == 0) throw ParameterError("densify needs d >= 1");
  if (g.num_edges() < static_cast<u128>(d) * n) {
    throw ParameterError("densify needs at least d*n = " + std::to_string(d * n) + " edges, graph has " +
                         std::to_string(g.num_edges()));
  }
  std::vector<std::unordered_set<Vertex>> adj(n);
  const auto all = g.edges();
  for (std::size_t i = 0; i < d * n; ++i) {
    adj[all[i].first].insert(all[i].second);
    adj[all[i].second].insert(all[i].first);
  }
  std::vector<std::vector<Vertex>> image(n);
  for (Vertex v = 0; v < n; ++v) image[v] = {v};

  DegreeBuckets buckets(n);
  for (Vertex v = 0; v < n; ++v) buckets.insert(v, adj[v].size());
  std::size_t edges = d * n;
  std::size_t vertices = n;

  auto measure = [&] {
    return static_cast<std::uint64_t>(2 * edges + vertices + (n - buckets.min_degree()));
  };
  auto remove_edge = [&](Vertex a, Vertex b) {
    adj[a].erase(b);
    adj[b].erase(a);
    --edges;
  };
  auto delete_vertex = [&](Vertex u) {
    for (Vertex x : adj[u]) {
      adj[x].erase(u);
      buckets.move(x, adj[x].size());
    }
    edges -= adj[u].size();
    adj[u].clear();
    buckets.erase(u);
    --vertices;
  };

  DensifyResult result;
  result.measure.push_back(measure());
  const std::size_t step_cap = (2 * d + 2) * n;
  while (true) {
    if (vertices == 0) throw InternalError("densify emptied the graph");
    const std::size_t delta = buckets.min_degree();
    const Vertex u = buckets.first(delta);
    if (delta < d) {
      delete_vertex(u);
    } else if (delta > 2 * d) {
      const std::vector<Vertex> nbrs = sorted(adj[u]);
      for (std::size_t i = 2 * d; i < nbrs.size(); ++i) {
        remove_edge(u, nbrs[i]);
        buckets.move(nbrs[i], adj[nbrs[i]].size());
      }
      buckets.move(u, adj[u].size());
    } else {
      Vertex partner = kNoVertex;
      for (Vertex v : sorted(adj[u])) {
        if (common_count(adj[u], adj[v]) < d) {
          partner = v;
          break;
        }
      }
      if (partner == kNoVertex) {
        // Every edge at u lies in >= d triangles: output G'[N(u)].
        const std::vector<Vertex> keep = sorted(adj[u]);
        std::vector<Vertex> local(n, kNoVertex);
        for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
        std::vector<Edge> out;
        for (Vertex a : keep) {
          for (Vertex b : adj[a]) {
            if (local[b] != kNoVertex && a < b) out.emplace_back(local[a], local[b]);
          }
        }
        result.minor = Graph::from_edges(keep.size(), out);
        for (Vertex a : keep) result.images.push_back(VertexSet::from_unsorted(image[a]));
        return result;
      }
      // Contract u into partner.
      const Vertex v = partner;
      for (Vertex w : adj[u]) {
        if (w != v && !adj[v].count(w)) {
          adj[v].insert(w);
          adj[w].insert(v);
          ++edges;
          buckets.move(w, adj[w].size());
        }
      }
      if (image[u].size() > image[v].size()) std::swap(image[u], image[v]);
      image[v].insert(image[v].end(), image[u].begin(), image[u].end());
      image[u].clear();
      delete_vertex(u);
      buckets.move(v, adj[v].size());
    }
    ++result.steps;
    const std::uint64_t mu = measure();
    if (mu >= result.measure.back()) {
      throw InternalError("densify measure did not decrease at step " + std::to_string(result.steps));
    }
    result.measure.push_back(mu);
    if (static_cast<u128>(edges) < static_cast<u128>(d) * vertices) {
      throw InternalError("densify dropped below average degree 2d at step " + std::to_string(result.steps));
    }
    if (result.steps > step_cap) throw InternalError("densify exceeded (2d+2)n steps");
  }
}

DichotomyResult two_subdivision_or_denser(const Graph& h, std::size_t d, std::span<const Vertex> branch_override) {
  DichotomyResult r;
  r.order = dense_clique_order(d);
  if (r.order == 0) {
    r.model = MinorModel{};
    return r;
  }
  check_dense_input(h, 2 * d, d, "two_subdivision_or_denser");
  const std::size_t m = h.num_vertices();
  const std::size_t s = r.order;
  if (m < s) throw DomainError("two_subdivision_or_denser: fewer vertices than the clique order");
  if (branch_override.empty()) {
    for (Vertex i = 0; i < s; ++i) r.branch_vertices.push_back(i);
  } else {
    if (branch_override.size() != s) throw DomainError("branch override must have exactly s vertices");
    r.branch_vertices.assign(branch_override.begin(), branch_override.end());
    for (Vertex x : r.branch_vertices) {
      if (x >= m) throw DomainError("branch override vertex out of range");
    }
    if (VertexSet::from_unsorted(r.branch_vertices).size() != s) throw DomainError("branch override has repeats");
  }
  const auto& X = r.branch_vertices;
  std::vector<std::uint8_t> in_x(m, 0), removed(m, 0);
  for (Vertex x : X) in_x[x] = 1;
  const BitMatrix adj(h);
  auto free = [&](Vertex z) { return !in_x[z] && !removed[z]; };

  std::vector<std::vector<Vertex>> sets(s);
  for (std::size_t i = 0; i < s; ++i) sets[i] = {X[i]};

  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const Vertex x = X[i], y = X[j];
      bool found = adj(x, y);
      for (Vertex z : h.neighbors(x)) {
        if (found) break;
        if (free(z) && adj(z, y)) {
          removed[z] = 1;
          sets[i].push_back(z);
          found = true;
        }
      }
      for (Vertex z : h.neighbors(x)) {
        if (found) break;
        if (!free(z)) continue;
        for (Vertex z2 : h.neighbors(z)) {
          if (z2 != z && free(z2) && adj(z2, y)) {
            removed[z] = removed[z2] = 1;
            sets[i].push_back(z);
            sets[j].push_back(z2);
            found = true;
            break;
          }
        }
      }
      if (found) continue;

      std::vector<Vertex> keep{x};
      for (Vertex z : h.neighbors(x)) {
        if (free(z)) keep.push_back(z);
      }
      Subgraph denser = induced_subgraph(h, VertexSet::from_unsorted(std::move(keep)));
      const Graph& hp = denser.graph;
      if (hp.num_vertices() > floor_102(d)) {
        throw InternalError("denser subgraph has " + std::to_string(hp.num_vertices()) + " > floor(1.02d) vertices");
      }
      for (Vertex v = 0; v < hp.num_vertices(); ++v) {
        if (hp.degree(v) < ceil_094(d)) {
          throw InternalError("denser subgraph vertex has degree " + std::to_string(hp.degree(v)) +
                              " < ceil(0.94d)");
        }
      }
      r.denser = std::move(denser);
      return r;
    }
  }
  r.model = model_from_sets(std::move(sets));
  return r;
}

MinorModel clique_minor_super_dense(const Graph& h, std::size_t d) {
  const std::size_t s = dense_clique_order(d);
  if (s == 0) return MinorModel{};
  check_dense_input(h, floor_102(d), ceil_094(d), "clique_minor_super_dense");
  const std::size_t m = h.num_vertices();
  if (m < s) throw DomainError("clique_minor_super_dense: fewer vertices than the clique order");
  std::vector<std::uint8_t> used(m, 0);
  for (Vertex x = 0; x < s; ++x) used[x] = 1;
  const BitMatrix adj(h);
  std::vector<std::vector<Vertex>> sets(s);
  for (Vertex i = 0; i < s; ++i) sets[i] = {i};
  for (Vertex x = 0; x < s; ++x) {
    for (Vertex y = x + 1; y < s; ++y) {
      // deg(x) + deg(y) - |V| common neighbors exist; at most C(s,2) + s are taken.
      const std::size_t guaranteed = h.degree(x) + h.degree(y) > m ? h.degree(x) + h.degree(y) - m : 0;
      if (guaranteed <= s * (s + 1) / 2) {
        throw InternalError("super-dense counting margin exhausted for pair " + std::to_string(x) + "," +
                            std::to_string(y));
      }
      Vertex pick = kNoVertex;
      for (Vertex z : h.neighbors(x)) {
        if (!used[z] && adj(z, y)) {
          pick = z;
          break;
        }
      }
      if (pick == kNoVertex) throw InternalError("no free common neighbor");
      used[pick] = 1;
      sets[x].push_back(pick);
    }
  }
  return model_from_sets(std::move(sets));
}

MinorModel minor_in_dense(const Graph& g, std::size_t h, std::optional<std::size_t> d_override) {
  const std::size_t n = g.num_vertices();
  if (h == 0) return MinorModel{};
  if (h == 1) {
    if (n == 0) throw ParameterError("K_1 needs a vertex");
    return MinorModel{{VertexSet::from_sorted({0})}};
  }
  const std::size_t d = d_override.value_or(100 * h * h);
  const DensifyResult dense = densify(g, d);
  DichotomyResult split = two_subdivision_or_denser(dense.minor, d);
  MinorModel local;
  if (split.model) {
    local = std::move(*split.model);
  } else {
    const MinorModel inner = clique_minor_super_dense(split.denser->graph, d);
    for (const VertexSet& b : inner.branch_sets) {
      std::vector<Vertex> ids;
      for (Vertex v : b) ids.push_back(split.denser->to_original[v]);
      local.branch_sets.push_back(VertexSet::from_unsorted(std::move(ids)));
    }
  }
  local.branch_sets.resize(std::min(h, local.branch_sets.size()));
  MinorModel out;
  for (const VertexSet& b : local.branch_sets) {
    std::vector<Vertex> ids;
    for (Vertex x : b) ids.insert(ids.end(), dense.images[x].begin(), dense.images[x].end());
    out.branch_sets.push_back(VertexSet::from_unsorted(std::move(ids)));
  }
  const ModelReport check = verify_minor_model(g, out);
  if (!check.valid) throw InternalError("dense chain produced an invalid model: " + check.violation);
  return out;
}

}  // namespace minorsep
