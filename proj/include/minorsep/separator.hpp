#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minorsep/graph.hpp"
#include "minorsep/minor_model.hpp"
#include "minorsep/verify.hpp"
#include "minorsep/wbfs.hpp"

namespace minorsep {

/// Every named constant of the separator loop, as functions of n and h.
///
///   k      = k_per_h2 * h^2 + k_const
///   delta  = floor(sqrt(n) / (delta_divisor * h^delta_h_power))
///   radius = radius_multiplier * floor(sqrt(n))
///   num    = k^numerator_k_power, or numerator_const when the power is 0
///   slack  = 1 / (slack_per_k * k)
///   dense guard: m >= dense_guard_per_h2 * h^2 * n
///   repeat cap = ceil(repeat_cap_per_h2 * h^2 * ln(3/2)) + 1
struct ConstantsProfile {
  std::string name = "paper";
  std::uint64_t w_init = 40;
  std::uint64_t k_per_h2 = 20;
  std::uint64_t k_const = 0;
  std::uint64_t delta_divisor = 6;
  std::uint64_t delta_h_power = 2;
  std::uint64_t radius_multiplier = 1;
  std::uint64_t numerator_k_power = 3;
  std::uint64_t numerator_const = 0;
  std::uint64_t slack_per_k = 10;
  std::uint64_t dense_guard_per_h2 = 100;
  std::uint64_t repeat_cap_per_h2 = 200;

  static ConstantsProfile paper();
  static ConstantsProfile desk();
  /// key=value lines; unknown keys or non-positive required values throw InputError.
  static ConstantsProfile from_text(const std::string& text, const std::string& name = "file");
  static ConstantsProfile from_file(const std::string& path);
  /// "paper", "desk", or a file path; an empty name falls back to
  /// $MINORSEP_PROFILE and then to "paper".
  static ConstantsProfile resolve(const std::string& name_or_path);
  std::string to_text() const;

  std::uint64_t k(std::size_t h) const;
  std::uint64_t delta(std::size_t n, std::size_t h) const;
  std::uint64_t radius(std::size_t n) const;
  std::uint64_t numerator(std::size_t h) const;
  std::uint64_t slack_denominator(std::size_t h) const;  // 1/slack
  std::uint64_t dense_guard(std::size_t h) const;        // edges per vertex
  std::uint64_t repeat_cap(std::size_t h) const;
};

/// w(v) + ceil(|T(v)| * numerator * w(v) / denominator) on tree members,
/// unchanged elsewhere. Throws ArithmeticError on 64-bit overflow.
WeightFn reweight(const WeightFn& w, const WTree& tree, std::uint64_t numerator, std::uint64_t denominator);

struct IterationRecord {
  std::size_t t = 0;
  std::size_t separator_size = 0;  // |S_t|
  std::size_t core_size = 0;       // |C*_t|
  Vertex root = kNoVertex;         // c_t; kNoVertex when the iteration returned
  std::uint64_t total_weight = 0;  // W_t
  std::uint64_t weight_checksum = 0;
  std::vector<std::uint64_t> weights;  // w_t, only with snapshots
  std::size_t tree_size = 0;
};

struct RunTrace {
  std::size_t n = 0;
  std::size_t h = 0;
  ConstantsProfile profile;
  std::uint64_t delta = 0;
  std::vector<IterationRecord> iterations;
  std::vector<WTree> trees;                   // T_1..T_t, only with snapshots
  std::vector<std::uint64_t> final_weights;   // w_{t+1} after the last reweight, only with snapshots
};

std::uint64_t weight_checksum(const std::vector<std::uint64_t>& w);

enum class SepTag { Separator, Minor, Indeterminate };
std::string to_string(SepTag tag);

struct SepOptions {
  bool dense_guard = true;
  bool bfs_on_component = false;  // grow T_t inside C*_t only
  bool snapshots = false;         // keep weights and trees in the trace
  std::size_t find_minor_attempts = 1;
};

struct SepResult {
  SepTag tag = SepTag::Indeterminate;
  VertexSet separator;
  std::optional<MinorModel> model;
  std::vector<WTree> trees;       // the collected trees when the loop ran to completion
  std::vector<RunTrace> traces;   // one per separator-loop run
  std::size_t rounds = 0;         // balance rounds (find_balanced_separator)
  Rational balance;               // largest component of G - S over n
  std::string note;
};

/// One run of the reweighting loop. Throws ParameterError when delta(n, h) == 0.
SepResult find_separator_once(const Graph& g, std::size_t h, const ConstantsProfile& profile, std::uint64_t seed,
                              SepOptions options = {});

/// Repeats the loop on the current largest component until it has at most
/// alpha * n vertices or the profile's repeat cap is spent.
SepResult find_balanced_separator(const Graph& g, std::size_t h, Rational alpha, const ConstantsProfile& profile,
                                  std::uint64_t seed, SepOptions options = {});

/// DFS-based partition into connected parts of p..p(maxdeg+1) vertices.
/// Throws DomainError if G is disconnected, ParameterError if p == 0 or p > n.
Partition connected_partition(const Graph& g, std::size_t p);

/// Contract a connected partition of each large component, separate the
/// quotient, and lift the result back to G.
SepResult bounded_degree_pipeline(const Graph& g, std::size_t h, std::size_t p, Rational alpha,
                                  const ConstantsProfile& profile, std::uint64_t seed, SepOptions options = {});

}  // namespace minorsep
