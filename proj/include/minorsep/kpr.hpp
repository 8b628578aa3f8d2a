#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorsep/graph.hpp"
#include "minorsep/minor_model.hpp"
#include "minorsep/wbfs.hpp"

namespace minorsep {

/// One periodic layer family of a tree: layers j >= 2 with
/// ((j - 2) mod delta) + 1 == offset. A vertex belongs to the cut when its
/// level interval meets one of those layers.
struct OffsetCut {
  std::uint64_t offset = 1;
  VertexSet cut;
};

/// Family with the fewest vertices over offsets 1..delta; ties go to the
/// smallest offset. `members` restricts the scan to part of the tree
/// (default: all reached vertices).
OffsetCut cheapest_offset_family(const WTree& tree, const WeightFn& w, std::uint64_t delta,
                                 std::span<const Vertex> members = {});

/// Vertices of one offset family, computed directly from the level intervals.
VertexSet offset_family(const WTree& tree, const WeightFn& w, std::uint64_t delta, std::uint64_t offset,
                        std::span<const Vertex> members = {});

/// Certificate for the minor branch: per-round separators and the round
/// trees spanning the component that holds the core.
struct KprDecomposition {
  std::uint64_t delta = 1;
  std::size_t h = 0;
  std::vector<VertexSet> separators;
  std::vector<WTree> trees;
  VertexSet core;
};

struct DecompositionReport {
  bool far_pair = false;  // eccentricity of core from its smallest vertex > 3h^2 delta
  bool light = false;     // P2, over the vertices of the first tree
  bool spanning = false;  // P3
  bool layered = false;   // P4
  bool deep = false;      // P5
  std::string violation;
  bool valid() const { return far_pair && light && spanning && layered && deep; }
};

DecompositionReport check_decomposition(const Graph& g, const WeightFn& w, const KprDecomposition& d);

/// K_{h,h} model from a decomposition. Throws DomainError when the
/// decomposition fails check_decomposition or h < 3, and InternalError when
/// anchor selection or the final model check fails.
BicliqueModel extract_khh(const Graph& g, const WeightFn& w, const KprDecomposition& d);

enum class KprTag { Separated, Minor };

struct KprOptions {
  bool keep_round_trees = false;  // store each round's forest in the outcome
};

struct KprOutcome {
  KprTag tag = KprTag::Separated;
  VertexSet separator;                 // union of round_cuts
  std::vector<VertexSet> round_cuts;
  VertexSet core;                      // largest component of G - separator
  std::vector<WTree> round_trees;      // only with keep_round_trees
  bool early_exit = false;             // no component was deep in the first round
  std::optional<MinorModel> model;     // K_h, minor branch only
  std::optional<BicliqueModel> biclique;
  std::optional<KprDecomposition> decomposition;
};

/// Vertex-weighted KPR with h rounds of forest BFS and offset-family cuts.
/// Throws ParameterError if delta == 0 or h == 0.
KprOutcome kpr(const Graph& g, const WeightFn& w, std::uint64_t delta, std::size_t h, KprOptions options = {});

}  // namespace minorsep
