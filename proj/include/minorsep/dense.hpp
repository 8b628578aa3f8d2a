#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minorsep/graph.hpp"
#include "minorsep/minor_model.hpp"

namespace minorsep {

/// Clique order the dense chain targets for a degree parameter d: floor(sqrt(d) / 10).
std::size_t dense_clique_order(std::size_t d);

/// Minor H of G with an explicit model: images[x] is the connected set of
/// G-vertices contracted into H-vertex x.
struct DensifyResult {
  Graph minor;
  std::vector<VertexSet> images;
  std::vector<std::uint64_t> measure;  // mu before the first step and after every step
  std::size_t steps = 0;
};

/// Deletes, trims and contracts until a vertex u of minimum degree has
/// every incident edge in >= d triangles, then returns G'[N(u)].
/// Reads only the first d*n edges of G (in Graph::edges() order).
/// Throws ParameterError when G has fewer than d*n edges or d == 0.
DensifyResult densify(const Graph& g, std::size_t d);

struct DichotomyResult {
  std::size_t order = 0;                // s = dense_clique_order(d)
  std::vector<Vertex> branch_vertices;  // X
  std::optional<MinorModel> model;      // every pair of X joined by a path of <= 3 edges
  std::optional<Subgraph> denser;       // H' = H minus the path interiors
};

/// Either K_s via short disjoint paths between the first s vertices, or a
/// denser subgraph with <= floor(1.02 d) vertices and min degree >= ceil(0.94 d).
/// `branch_override` replaces the default X (test hook).
/// Throws DomainError if |V(H)| > 2d or min degree < d.
DichotomyResult two_subdivision_or_denser(const Graph& h, std::size_t d,
                                          std::span<const Vertex> branch_override = {});

/// K_s as a 1-subdivision: X = the first s vertices, each pair joined
/// through its smallest common neighbor outside X.
/// Throws DomainError on violated preconditions, InternalError if a pair has no free common neighbor.
MinorModel clique_minor_super_dense(const Graph& h, std::size_t d);

/// Full chain for graphs with at least d*n edges, d = 100 h^2 unless overridden.
/// Returns a model of K_min(h, s); throws ParameterError when the edge count is too small.
MinorModel minor_in_dense(const Graph& g, std::size_t h, std::optional<std::size_t> d_override = {});

}  // namespace minorsep
