#include "minorsep/bench.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"

#include "minorsep/errors.hpp"
#include "minorsep/generate.hpp"
#include "minorsep/rng.hpp"

namespace minorsep {

Graph bench_graph(const std::string& family, std::size_t n, std::uint64_t seed) {
  if (family == "grid" || family == "grid_torus") {
    const std::size_t a = isqrt(n);
    return family == "grid" ? grid(a, a) : grid_torus(a, a);
  }
  if (family == "path") return path(n);
  if (family == "cycle") return cycle(n);
  if (family == "random_gnm") return random_gnm(n, 2 * n, seed);
  if (family == "random_regular") return random_regular(n, 3, seed);
  throw ParameterError("bench does not support family '" + family + "'");
}

BenchSummary run_bench(const std::string& family, const std::vector<std::size_t>& sizes, std::size_t h,
                       const ConstantsProfile& profile, std::uint64_t seed, std::size_t trials) {
  if (sizes.empty()) throw ParameterError("bench needs at least one size");
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw ParameterError("bench sizes must be strictly increasing");
  }
  if (trials == 0) throw ParameterError("bench needs at least one trial");
  BenchSummary summary;
  for (std::size_t n : sizes) {
    const Graph g = bench_graph(family, n, seed);
    // One untimed run first so page faults and allocator growth stay out of the medians.
    (void)find_balanced_separator(g, h, Rational{2, 3}, profile, seed);
    std::vector<BenchRecord> runs;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      BenchRecord r;
      r.family = family;
      r.n = g.num_vertices();
      r.m = g.num_edges();
      r.h = h;
      r.profile = profile.name;
      r.seed = mix_seed(seed, trial);
      const auto start = std::chrono::steady_clock::now();
      const SepResult res = find_balanced_separator(g, h, Rational{2, 3}, profile, r.seed);
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      r.tag = to_string(res.tag);
      r.separator_size = res.separator.size();
      r.max_component_fraction = res.balance.str();
      for (const RunTrace& t : res.traces) {
        for (const IterationRecord& it : t.iterations) r.peak_weight = std::max(r.peak_weight, it.total_weight);
      }
      runs.push_back(std::move(r));
    }
    auto by_time = runs;
    std::sort(by_time.begin(), by_time.end(), [](const auto& a, const auto& b) { return a.wall_ms < b.wall_ms; });
    BenchRecord median = by_time[(trials - 1) / 2];
    std::vector<std::size_t> sizes_seen;
    for (const auto& r : runs) sizes_seen.push_back(r.separator_size);
    std::sort(sizes_seen.begin(), sizes_seen.end());
    median.separator_size = sizes_seen[(trials - 1) / 2];
    if (trials % 2 == 0) {
      median.wall_ms = (by_time[trials / 2 - 1].wall_ms + by_time[trials / 2].wall_ms) / 2;
    }
    summary.records.push_back(std::move(median));
  }
  for (std::size_t i = 1; i < summary.records.size(); ++i) {
    const auto& a = summary.records[i - 1];
    const auto& b = summary.records[i];
    summary.time_ratios.push_back(a.wall_ms > 0 ? b.wall_ms / a.wall_ms : 0.0);
    summary.size_ratios.push_back(a.separator_size > 0 ? static_cast<double>(b.separator_size) / a.separator_size : 0.0);
  }
  return summary;
}

std::string to_json_line(const BenchRecord& r) {
  const nlohmann::json j{{"family", r.family},
                         {"n", r.n},
                         {"m", r.m},
                         {"h", r.h},
                         {"profile", r.profile},
                         {"seed", r.seed},
                         {"tag", r.tag},
                         {"separator_size", r.separator_size},
                         {"max_component_fraction", r.max_component_fraction},
                         {"wall_ms", r.wall_ms},
                         {"peak_weight", r.peak_weight}};
  return j.dump();
}

}  // namespace minorsep
