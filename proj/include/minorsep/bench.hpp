#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorsep/separator.hpp"

namespace minorsep {

struct BenchRecord {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t h = 0;
  std::string profile;
  std::uint64_t seed = 0;
  std::string tag;
  std::size_t separator_size = 0;
  std::string max_component_fraction;
  double wall_ms = 0;
  std::uint64_t peak_weight = 0;  // largest W_t seen in any loop run
};

struct BenchSummary {
  std::vector<BenchRecord> records;
  std::vector<double> time_ratios;  // consecutive sizes
  std::vector<double> size_ratios;
};

/// Test graph of roughly n vertices: grid and grid_torus use a floor(sqrt n)
/// square, random_gnm uses m = 2n, random_regular uses degree 3.
Graph bench_graph(const std::string& family, std::size_t n, std::uint64_t seed);

/// find_balanced_separator (alpha = 2/3) on each size; every record holds the
/// median wall time and median separator size over `trials` seeds, after one
/// untimed warm-up run.
/// Throws ParameterError on an empty or non-increasing size list.
BenchSummary run_bench(const std::string& family, const std::vector<std::size_t>& sizes, std::size_t h,
                       const ConstantsProfile& profile, std::uint64_t seed, std::size_t trials);

std::string to_json_line(const BenchRecord& r);

}  // namespace minorsep
