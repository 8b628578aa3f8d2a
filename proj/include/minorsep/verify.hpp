#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorsep/graph.hpp"
#include "minorsep/minor_model.hpp"
#include "minorsep/wbfs.hpp"

namespace minorsep {

using u128 = unsigned __int128;

/// Nonnegative rational with 128-bit numerator and denominator, kept reduced.
struct Rational {
  u128 num = 0;
  u128 den = 1;

  static Rational make(u128 num, u128 den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

std::string to_string(u128 x);

/// floor(sqrt(n)), exact.
std::uint64_t isqrt(std::uint64_t n);

// ---------------------------------------------------------------------------
// Separators

struct SepReport {
  bool valid = false;
  std::size_t separator_size = 0;
  std::size_t max_component = 0;
  Rational max_component_fraction;
  std::vector<std::size_t> component_sizes;  // descending
};

/// Exact component analysis of G - S; valid iff every component has at most
/// alpha * n vertices, n being |V(G)|.
SepReport verify_separator(const Graph& g, const VertexSet& separator, Rational alpha);

// ---------------------------------------------------------------------------
// Minor models

struct ModelReport {
  bool valid = false;
  std::string violation;  // empty when valid; names the first violation
};

/// Checks disjointness, induced connectivity of each set, and one host edge
/// per pattern edge. `pattern_edges` index into `branch_sets`.
ModelReport verify_pattern_model(const Graph& g, std::span<const VertexSet> branch_sets,
                                 std::span<const Edge> pattern_edges);

/// K_t model check: every pair of branch sets must touch.
ModelReport verify_minor_model(const Graph& g, const MinorModel& model);

/// K_{s,s} model check: sets disjoint and connected, every left-right pair touching.
ModelReport verify_biclique_model(const Graph& g, const BicliqueModel& model);

// ---------------------------------------------------------------------------
// Distances

/// Exact vertex-weighted distance by label-correcting relaxation over edges.
/// Returns kUnreached if v is not reachable from u.
Distance dist_oracle(const Graph& g, const WeightFn& w, Vertex u, Vertex v);

/// All distances from u by the same relaxation.
std::vector<Distance> dist_oracle_from(const Graph& g, const WeightFn& w, Vertex u);

/// Exact weak diameter of X under w (distances measured in all of G).
Distance weak_diameter(const Graph& g, const WeightFn& w, const VertexSet& x);

// ---------------------------------------------------------------------------
// Stochastic connectors

inline constexpr std::uint64_t kCollisionPairLimit = 4'000'000;

/// Probability that uniformly random root paths of the two trees meet,
/// by enumerating all endpoint pairs and intersecting the paths.
/// Throws ScaleError when |V(T_i)| * |V(T_j)| exceeds kCollisionPairLimit.
Rational collision_probability_exact(const WTree& ti, const WTree& tj);

/// Same probability by subtree marking: a root path of T_j meets P iff its
/// endpoint lies below some vertex of P in T_j.
Rational collision_probability_by_subtrees(const WTree& ti, const WTree& tj);

struct ConnectorReport {
  bool valid = false;
  std::vector<bool> size_ok;
  struct PairEntry {
    std::size_t i, j;
    Rational probability;
    bool ok;
  };
  std::vector<PairEntry> pairs;
  Rational threshold;  // 1 / (5 k^2)
};

ConnectorReport is_valid_connector(const Graph& g, std::span<const WTree> trees, std::size_t k);

}  // namespace minorsep
