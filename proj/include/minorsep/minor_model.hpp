#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorsep/graph.hpp"
#include "minorsep/wbfs.hpp"

namespace minorsep {

/// Branch sets of a K_t minor: pairwise disjoint, each connected, every
/// pair joined by a host edge.
struct MinorModel {
  std::vector<VertexSet> branch_sets;

  std::size_t order() const { return branch_sets.size(); }
};

/// Branch sets of a K_{s,s} minor: every left set touches every right set.
struct BicliqueModel {
  std::vector<VertexSet> left;
  std::vector<VertexSet> right;
};

/// K_t with every edge replaced by a path of three edges.
struct PatternGraph {
  enum class Role : std::uint8_t { Branch, SubdivisionA, SubdivisionB };

  std::size_t t = 0;
  std::vector<Role> roles;
  std::vector<Edge> edges;

  std::size_t num_vertices() const { return roles.size(); }
  std::size_t num_edges() const { return edges.size(); }

  // Vertex ids: branch v_i = i; a_{i,j} and b_{i,j} (i < j) follow in pair order.
  Vertex branch(std::size_t i) const { return static_cast<Vertex>(i); }
  Vertex sub_a(std::size_t i, std::size_t j) const;
  Vertex sub_b(std::size_t i, std::size_t j) const;
  // Edge ids for the path v_i - a_{i,j} - b_{i,j} - v_j.
  std::size_t edge_va(std::size_t i, std::size_t j) const { return 3 * pair_index(i, j); }
  std::size_t edge_ab(std::size_t i, std::size_t j) const { return 3 * pair_index(i, j) + 1; }
  std::size_t edge_bv(std::size_t i, std::size_t j) const { return 3 * pair_index(i, j) + 2; }
  std::size_t pair_index(std::size_t i, std::size_t j) const;
};

PatternGraph double_subdivision(std::size_t t);

/// Vertex map plus one host path per pattern edge.
struct AlmostEmbedding {
  std::vector<Vertex> vertex_map;
  std::vector<std::vector<Vertex>> edge_paths;  // edge_paths[e] runs from map(u) to map(v)
};

enum class EmbeddingFailure : std::uint8_t {
  None,
  EndpointOutsideTree,   // a mapped endpoint is missing from the edge's tree
  VertexCollision,       // two pattern vertices drawn to the same host vertex
  PathIntersection,      // two non-adjacent pattern edges share a host vertex
  MalformedPath,         // a path is not a simple host path between the mapped endpoints
};

std::string to_string(EmbeddingFailure f);

struct EmbeddingAttempt {
  std::optional<AlmostEmbedding> embedding;
  EmbeddingFailure failure = EmbeddingFailure::None;
};

/// Unique path between u and v in a rooted tree (both must be reached and
/// share a root), computed through their lowest common ancestor.
std::vector<Vertex> tree_path(const WTree& tree, Vertex u, Vertex v);

/// Checks both almost-embedding conditions; returns the first failure kind.
EmbeddingFailure validate_almost_embedding(const Graph& g, const PatternGraph& pattern,
                                           const AlmostEmbedding& phi);

/// Draws pattern vertices uniformly from V(G) and routes edge e through trees[e].
/// Throws ParameterError if fewer than |E(pattern)| trees are supplied.
EmbeddingAttempt sample_almost_embedding(const Graph& g, std::span<const WTree> trees, std::size_t t,
                                         std::uint64_t seed);

/// Throws DomainError naming the offending pair when phi is not a valid almost-embedding.
MinorModel embedding_to_model(const Graph& g, const PatternGraph& pattern, const AlmostEmbedding& phi);

struct FindMinorResult {
  std::optional<MinorModel> model;
  std::size_t attempts = 0;
  std::vector<EmbeddingFailure> failures;
  bool below_recommended_trees = false;  // fewer than 20 t^2 trees
};

/// Up to max_attempts independent sample + convert rounds. Attempt a uses
/// the seed mixed with a, so results depend only on (inputs, seed).
FindMinorResult find_minor(const Graph& g, std::span<const WTree> trees, std::size_t t, std::uint64_t seed,
                           std::size_t max_attempts = 2);

/// Contracting A_i with B_i for every i turns K_{s,s} into K_s directly.
MinorModel biclique_to_clique(const BicliqueModel& model);

}  // namespace minorsep
