#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "minorsep/separator.hpp"

namespace minorsep {

enum class CheckStatus { Pass, Fail, Skipped, Unverifiable };
std::string to_string(CheckStatus s);

/// Exact-form loop invariants for one iteration t, indexed 0..4 for
/// invariants 1..5:
///   1: |T_i(v)| / |V(T_i)| <= 2 w_{t+1}(v) / (w_init * num * sqrt(n))      for i <= t
///   2: prod of two membership ratios <= 4 w_{t+1}(v) / (w_init * num^2 * n) for i < j <= t
///   3: W_t <= (w_init + (num + 1)(t - 1)) n, and W_t equals the sum of w_t
///   4: |V(T_t)| >= (1 - 1/(10k)) n
///   5: w_t(v) >= w_init
/// With the paper constants (w_init = 40, num = k^3) these read 20k^3 sqrt(n)
/// and 10k^6 n. Skipped marks an iteration that returned before growing T_t.
struct IterationCheck {
  std::size_t t = 0;
  std::array<CheckStatus, 5> status{};
  std::array<std::string, 5> detail{};
};

struct InvariantReport {
  std::vector<IterationCheck> iterations;
  bool all_pass() const;
  /// First failing iteration of invariant `which` (1-based), or 0.
  std::size_t first_failure(int which) const;
};

InvariantReport check_invariants(const RunTrace& trace);

}  // namespace minorsep
