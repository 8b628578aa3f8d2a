#include "minorsep/minor_model.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "minorsep/errors.hpp"
#include "minorsep/rng.hpp"

namespace minorsep {
namespace {

struct Check {
  EmbeddingFailure failure = EmbeddingFailure::None;
  std::string detail;
};

bool edges_adjacent(const PatternGraph& pattern, std::size_t e1, std::size_t e2) {
  const auto [a, b] = pattern.edges[e1];
  const auto [c, d] = pattern.edges[e2];
  return a == c || a == d || b == c || b == d;
}

Check check_embedding(const Graph& g, const PatternGraph& pattern, const AlmostEmbedding& phi) {
  const std::size_t n = g.num_vertices();
  if (phi.vertex_map.size() != pattern.num_vertices() || phi.edge_paths.size() != pattern.num_edges()) {
    return {EmbeddingFailure::MalformedPath, "embedding size does not match the pattern"};
  }
  for (Vertex x : phi.vertex_map) {
    if (x >= n) return {EmbeddingFailure::MalformedPath, "mapped vertex out of range"};
  }
  {
    std::vector<Vertex> image = phi.vertex_map;
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
      return {EmbeddingFailure::VertexCollision, "two pattern vertices share a host vertex"};
    }
  }
  std::vector<std::pair<Vertex, std::uint32_t>> usage;
  for (std::size_t e = 0; e < pattern.num_edges(); ++e) {
    const auto& path = phi.edge_paths[e];
    const auto [u, v] = pattern.edges[e];
    if (path.empty() || path.front() != phi.vertex_map[u] || path.back() != phi.vertex_map[v]) {
      return {EmbeddingFailure::MalformedPath, "path of pattern edge " + std::to_string(e) + " has wrong endpoints"};
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (path[i] >= n) return {EmbeddingFailure::MalformedPath, "path vertex out of range"};
      if (i > 0 && !g.has_edge(path[i - 1], path[i])) {
        return {EmbeddingFailure::MalformedPath, "path of pattern edge " + std::to_string(e) + " skips a host edge"};
      }
      usage.emplace_back(path[i], static_cast<std::uint32_t>(e));
    }
  }
  std::sort(usage.begin(), usage.end());
  for (std::size_t lo = 0; lo < usage.size();) {
    std::size_t hi = lo;
    while (hi < usage.size() && usage[hi].first == usage[lo].first) ++hi;
    for (std::size_t a = lo; a < hi; ++a) {
      for (std::size_t b = a + 1; b < hi; ++b) {
        const auto e1 = usage[a].second;
        const auto e2 = usage[b].second;
        if (e1 == e2) {
          return {EmbeddingFailure::MalformedPath, "path of pattern edge " + std::to_string(e1) + " is not simple"};
        }
        if (!edges_adjacent(pattern, e1, e2)) {
          return {EmbeddingFailure::PathIntersection, "paths of non-adjacent pattern edges " + std::to_string(e1) +
                                                          " and " + std::to_string(e2) + " meet at host vertex " +
                                                          std::to_string(usage[lo].first)};
        }
      }
    }
    lo = hi;
  }
  return {};
}

}  // namespace

std::size_t PatternGraph::pair_index(std::size_t i, std::size_t j) const {
  if (i >= j || j >= t) throw DomainError("pattern pair index needs i < j < t");
  return i * t - i * (i + 1) / 2 + (j - i - 1);
}

Vertex PatternGraph::sub_a(std::size_t i, std::size_t j) const {
  return static_cast<Vertex>(t + 2 * pair_index(i, j));
}

Vertex PatternGraph::sub_b(std::size_t i, std::size_t j) const {
  return static_cast<Vertex>(t + 2 * pair_index(i, j) + 1);
}

PatternGraph double_subdivision(std::size_t t) {
  if (t < 1) throw ParameterError("double_subdivision needs t >= 1");
  PatternGraph h;
  h.t = t;
  h.roles.assign(t, PatternGraph::Role::Branch);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      h.roles.push_back(PatternGraph::Role::SubdivisionA);
      h.roles.push_back(PatternGraph::Role::SubdivisionB);
      const Vertex a = h.sub_a(i, j);
      const Vertex b = h.sub_b(i, j);
      h.edges.emplace_back(h.branch(i), a);
      h.edges.emplace_back(a, b);
      h.edges.emplace_back(b, h.branch(j));
    }
  }
  return h;
}

std::string to_string(EmbeddingFailure f) {
  switch (f) {
    case EmbeddingFailure::None: return "none";
    case EmbeddingFailure::EndpointOutsideTree: return "endpoint-outside-tree";
    case EmbeddingFailure::VertexCollision: return "vertex-collision";
    case EmbeddingFailure::PathIntersection: return "path-intersection";
    case EmbeddingFailure::MalformedPath: return "malformed-path";
  }
  return "unknown";
}

std::vector<Vertex> tree_path(const WTree& tree, Vertex u, Vertex v) {
  std::vector<Vertex> up = path_to_root(tree, u);
  std::vector<Vertex> sorted_up = up;
  std::sort(sorted_up.begin(), sorted_up.end());
  std::vector<Vertex> down;
  Vertex x = v;
  if (!tree.contains(v)) throw DomainError("vertex " + std::to_string(v) + " is not in the tree");
  while (!std::binary_search(sorted_up.begin(), sorted_up.end(), x)) {
    down.push_back(x);
    x = tree.parent[x];
    if (x == kNoVertex) throw DomainError("tree_path endpoints lie in different trees of the forest");
  }
  const auto lca = std::find(up.begin(), up.end(), x);
  std::vector<Vertex> path(up.begin(), lca + 1);
  path.insert(path.end(), down.rbegin(), down.rend());
  return path;
}

EmbeddingFailure validate_almost_embedding(const Graph& g, const PatternGraph& pattern,
                                           const AlmostEmbedding& phi) {
  return check_embedding(g, pattern, phi).failure;
}

EmbeddingAttempt sample_almost_embedding(const Graph& g, std::span<const WTree> trees, std::size_t t,
                                         std::uint64_t seed) {
  const PatternGraph pattern = double_subdivision(t);
  if (trees.size() < pattern.num_edges()) {
    throw ParameterError("sample_almost_embedding needs " + std::to_string(pattern.num_edges()) +
                         " trees, got " + std::to_string(trees.size()));
  }
  if (g.num_vertices() == 0) throw ParameterError("cannot embed into an empty graph");
  Rng rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.num_vertices() - 1));
  AlmostEmbedding phi;
  phi.vertex_map.resize(pattern.num_vertices());
  for (auto& x : phi.vertex_map) x = pick(rng);

  EmbeddingAttempt attempt;
  phi.edge_paths.resize(pattern.num_edges());
  for (std::size_t e = 0; e < pattern.num_edges(); ++e) {
    const WTree& tree = trees[e];
    const Vertex x = phi.vertex_map[pattern.edges[e].first];
    const Vertex y = phi.vertex_map[pattern.edges[e].second];
    if (!tree.contains(x) || !tree.contains(y)) {
      attempt.failure = EmbeddingFailure::EndpointOutsideTree;
      return attempt;
    }
    phi.edge_paths[e] = tree_path(tree, x, y);
  }
  attempt.failure = validate_almost_embedding(g, pattern, phi);
  if (attempt.failure == EmbeddingFailure::None) attempt.embedding = std::move(phi);
  return attempt;
}

MinorModel embedding_to_model(const Graph& g, const PatternGraph& pattern, const AlmostEmbedding& phi) {
  if (const Check c = check_embedding(g, pattern, phi); c.failure != EmbeddingFailure::None) {
    throw DomainError("not an almost-embedding (" + to_string(c.failure) + "): " + c.detail);
  }
  const std::size_t t = pattern.t;
  std::vector<std::vector<Vertex>> core(t);  // C'_i
  std::unordered_map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i == j) continue;
      const std::size_t e = i < j ? pattern.edge_va(i, j) : pattern.edge_bv(j, i);
      for (Vertex x : phi.edge_paths[e]) {
        auto [it, inserted] = owner.emplace(x, i);
        if (!inserted && it->second != i) {
          throw DomainError("branch cores " + std::to_string(i) + " and " + std::to_string(it->second) +
                            " intersect at host vertex " + std::to_string(x));
        }
        if (inserted) core[i].push_back(x);
      }
    }
    if (t == 1) {
      core[i].push_back(phi.vertex_map[pattern.branch(i)]);
      owner.emplace(core[i].back(), i);
    }
  }

  std::vector<std::vector<Vertex>> sets = core;
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      const auto& path = phi.edge_paths[pattern.edge_ab(i, j)];
      // Shortest window of the path with one end in C'_i and the other in C'_j.
      std::ptrdiff_t last_i = -1, last_j = -1, best_p = -1, best_q = -1;
      for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(path.size()); ++q) {
        const auto it = owner.find(path[static_cast<std::size_t>(q)]);
        if (it == owner.end()) continue;
        std::ptrdiff_t other = -1;
        if (it->second == i) {
          last_i = q;
          other = last_j;
        } else if (it->second == j) {
          last_j = q;
          other = last_i;
        } else {
          continue;
        }
        if (other >= 0 && (best_p < 0 || q - other < best_q - best_p)) {
          best_p = other;
          best_q = q;
        }
      }
      if (best_p < 0) {
        throw DomainError("path for pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") does not connect the two branch cores");
      }
      for (std::ptrdiff_t k = best_p + 1; k < best_q; ++k) {
        const Vertex x = path[static_cast<std::size_t>(k)];
        if (owner.count(x)) {
          throw DomainError("connector for pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") runs through another branch set at host vertex " + std::to_string(x));
        }
        owner.emplace(x, i);
        sets[i].push_back(x);
      }
    }
  }
  MinorModel model;
  for (auto& s : sets) model.branch_sets.push_back(VertexSet::from_unsorted(std::move(s)));
  return model;
}

FindMinorResult find_minor(const Graph& g, std::span<const WTree> trees, std::size_t t, std::uint64_t seed,
                           std::size_t max_attempts) {
  const PatternGraph pattern = double_subdivision(t);
  if (trees.size() < pattern.num_edges()) {
    throw ParameterError("find_minor needs at least " + std::to_string(pattern.num_edges()) + " trees, got " +
                         std::to_string(trees.size()));
  }
  FindMinorResult result;
  result.below_recommended_trees = trees.size() < 20 * t * t;
  for (std::size_t a = 0; a < max_attempts; ++a) {
    ++result.attempts;
    EmbeddingAttempt attempt = sample_almost_embedding(g, trees, t, mix_seed(seed, a));
    if (!attempt.embedding) {
      result.failures.push_back(attempt.failure);
      continue;
    }
    result.model = embedding_to_model(g, pattern, *attempt.embedding);
    break;
  }
  return result;
}

MinorModel biclique_to_clique(const BicliqueModel& model) {
  if (model.left.size() != model.right.size()) throw DomainError("biclique sides differ in size");
  MinorModel out;
  for (std::size_t i = 0; i < model.left.size(); ++i) {
    out.branch_sets.push_back(model.left[i].united(model.right[i]));
  }
  return out;
}

}  // namespace minorsep
