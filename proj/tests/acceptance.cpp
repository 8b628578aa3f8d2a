// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "minorsep/bench.hpp"
#include "minorsep/dense.hpp"
#include "minorsep/errors.hpp"
#include "minorsep/generate.hpp"
#include "minorsep/invariants.hpp"
#include "minorsep/kpr.hpp"
#include "minorsep/minor_model.hpp"
#include "minorsep/separator.hpp"
#include "minorsep/verify.hpp"

using namespace minorsep;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", id, title, seconds_since(t0), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

WTree star_tree(std::size_t n, Vertex root) {
  std::vector<Vertex> parent(n, root);
  std::vector<Distance> dist(n, 2);
  parent[root] = kNoVertex;
  dist[root] = 1;
  return WTree::from_parents(std::move(parent), std::move(dist));
}

std::size_t min_degree(const Graph& g) {
  std::size_t d = g.num_vertices();
  for (Vertex v = 0; v < g.num_vertices(); ++v) d = std::min(d, g.degree(v));
  return d;
}

std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) d = std::max(d, g.degree(v));
  return d;
}

// Largest vertex-weighted distance between two members of `set`, one BFS per member.
Distance exact_weak_diameter(const Graph& g, const WeightFn& w, const VertexSet& set) {
  Distance best = 0;
  for (Vertex u : set) {
    const WTree t = weighted_bfs(g, w, u);
    for (Vertex v : set) best = std::max(best, t.dist[v]);
  }
  return best;
}

Graph bridged_cliques(std::size_t d) {
  std::vector<Vertex> a{0, 2}, b{1, 3};
  for (Vertex v = 4; v < 2 * d; ++v) (a.size() < d ? a : b).push_back(v);
  std::vector<Edge> e;
  for (const auto* side : {&a, &b}) {
    for (std::size_t i = 0; i < side->size(); ++i) {
      for (std::size_t j = i + 1; j < side->size(); ++j) e.push_back({(*side)[i], (*side)[j]});
    }
  }
  for (Vertex v : b) e.push_back({0, v});
  for (Vertex v : a) {
    if (v != 0) e.push_back({1, v});
  }
  return build_graph(2 * d, e);
}

Graph capped_graph(std::size_t n, std::size_t cap, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) {
    Vertex u;
    do u = static_cast<Vertex>(rng() % v);
    while (deg[u] >= cap);
    e.push_back({u, v});
    ++deg[u], ++deg[v];
  }
  for (std::size_t i = 0; i < extra; ++i) {
    const Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
    if (a == b || deg[a] >= cap || deg[b] >= cap) continue;
    e.push_back({a, b});
    ++deg[a], ++deg[b];
  }
  return build_graph(n, e);  // duplicates collapse
}

// ---------------------------------------------------------------------------

Outcome wbfs_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, checked = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + rng() % 199;
    const std::size_t m = std::min<std::size_t>(800, rng() % (4 * n + 1));
    const Graph g = random_gnm(n, std::min(m, n * (n - 1) / 2), seed);
    std::vector<std::uint64_t> raw(n);
    for (auto& x : raw) x = 1 + rng() % 10;
    const WeightFn w(raw);
    const Vertex src = static_cast<Vertex>(rng() % n);
    const WTree t = weighted_bfs(g, w, src);
    const auto want = dist_oracle_from(g, w, src);
    for (Vertex v = 0; v < n; ++v) mismatches += t.dist[v] != want[v], ++checked;
  }
  const double secs = seconds_since(t0);
  o.note("100 graphs, " + std::to_string(checked) + " distances, " + std::to_string(mismatches) + " mismatches");
  if (mismatches) o.fail("distance mismatch");
  if (secs >= 10) o.fail("took " + fmt("%.2f", secs) + " s");
  return o;
}

Outcome kpr_guarantees() {
  Outcome o;
  std::size_t separated = 0, minors = 0, diameter_bad = 0, cut_bad = 0, model_bad = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Graph g;
    if (i % 2 == 0) {
      const std::size_t a = 5 + i / 2 % 13;
      g = grid(a, std::min<std::size_t>(300 / a, a + i % 7));
    } else {
      g = path(60 + 5 * i);
    }
    const WeightFn w = WeightFn::uniform(g.num_vertices(), 1);
    const std::uint64_t delta = 1 + i % 4;
    const std::size_t h = 1 + i % 3;
    const KprOutcome out = kpr(g, w, delta, h);
    if (out.tag == KprTag::Minor) {
      ++minors;
      if (!out.model || !verify_minor_model(g, *out.model).valid) ++model_bad;
      continue;
    }
    ++separated;
    if (exact_weak_diameter(g, w, out.core) > 6 * h * h * delta) ++diameter_bad;
    for (const VertexSet& cut : out.round_cuts) {
      std::uint64_t weight = 0;
      for (Vertex v : cut) weight += w[v];
      if (weight * delta > w.total()) ++cut_bad;
    }
  }
  o.note(std::to_string(separated) + " separated, " + std::to_string(minors) + " minor; " +
         std::to_string(diameter_bad) + " diameter and " + std::to_string(cut_bad) + " cut violations");
  if (diameter_bad || cut_bad || model_bad) o.fail("guarantee violated");
  if (model_bad) o.fail(std::to_string(model_bad) + " invalid models");
  return o;
}

Outcome invariant_suite() {
  Outcome o;
  const ConstantsProfile paper = ConstantsProfile::paper();
  SepOptions opts;
  opts.snapshots = true;
  for (std::size_t side : {60, 100}) {
    for (std::size_t h : {3, 5}) {
      const std::string tag = std::to_string(side) + "x" + std::to_string(side) + " h=" + std::to_string(h);
      const std::size_t n = side * side;
      if (paper.delta(n, h) == 0) {
        o.fail(tag + ": paper constants give delta = floor(sqrt(n)/(6h^2)) = 0, run refused");
        continue;
      }
      const SepResult r = find_separator_once(grid(side, side), h, paper, 1, opts);
      std::size_t iters = 0;
      for (const RunTrace& t : r.traces) {
        const InvariantReport rep = check_invariants(t);
        iters += rep.iterations.size();
        if (!rep.all_pass()) o.fail(tag + ": invariant failure");
      }
      o.note(tag + ": " + std::to_string(iters) + " iteration(s) checked");
    }
  }
  return o;
}

struct GridRuns {
  std::vector<std::size_t> sides{50, 100, 200};
  std::vector<SepResult> results;
  std::vector<bool> valid;
};

GridRuns& desk_grid_runs() {
  static GridRuns runs = [] {
    GridRuns r;
    for (std::size_t side : r.sides) {
      const Graph g = grid(side, side);
      SepResult res = find_balanced_separator(g, 5, Rational{2, 3}, ConstantsProfile::desk(), 1);
      r.valid.push_back(res.tag == SepTag::Separator && verify_separator(g, res.separator, Rational{2, 3}).valid);
      r.results.push_back(std::move(res));
    }
    return r;
  }();
  return runs;
}

Outcome separator_validity() {
  Outcome o;
  GridRuns& runs = desk_grid_runs();
  for (std::size_t i = 0; i < runs.sides.size(); ++i) {
    const auto& r = runs.results[i];
    o.note(std::to_string(runs.sides[i]) + "x" + std::to_string(runs.sides[i]) + ": " + to_string(r.tag) +
           " |S|=" + std::to_string(r.separator.size()) + " balance " + fmt("%.3f", r.balance.to_double()));
    if (!runs.valid[i]) o.fail("invalid separator at side " + std::to_string(runs.sides[i]));
  }
  return o;
}

Outcome separator_scaling() {
  Outcome o;
  GridRuns& runs = desk_grid_runs();
  for (std::size_t i = 0; i < runs.sides.size(); ++i) {
    const double n = static_cast<double>(runs.sides[i] * runs.sides[i]);
    const double s = static_cast<double>(runs.results[i].separator.size());
    o.note("|S|/sqrt(n)=" + fmt("%.2f", s / std::sqrt(n)));
    if (s > 12 * std::sqrt(n)) o.fail("|S| above 12 sqrt(n) at side " + std::to_string(runs.sides[i]));
    if (i > 0) {
      const double prev = static_cast<double>(runs.results[i - 1].separator.size());
      const double ratio = prev > 0 ? s / prev : 0;
      o.note("ratio " + fmt("%.2f", ratio));
      if (prev == 0 || ratio > 2.5) o.fail("size ratio above 2.5");
    }
  }
  return o;
}

Outcome near_linear_time() {
  Outcome o;
  const BenchSummary b = run_bench("grid", {100'000, 400'000, 1'600'000}, 5, ConstantsProfile::desk(), 1, 3);
  for (const auto& r : b.records) o.note("n=" + std::to_string(r.n) + " " + fmt("%.0f ms", r.wall_ms));
  for (double ratio : b.time_ratios) {
    o.note("ratio " + fmt("%.2f", ratio));
    if (ratio > 5.0) o.fail("time ratio above 5.0");
  }
  if (b.records.back().wall_ms > 300'000) o.fail("largest run over 5 minutes");
  return o;
}

Outcome connector_exactness() {
  Outcome o;
  for (std::size_t k : {4, 8}) {
    const std::size_t n = 15 * k * k + 100;
    const Graph g = complete(n);
    std::vector<WTree> trees;
    for (std::size_t i = 0; i < k; ++i) trees.push_back(star_tree(n, static_cast<Vertex>(i)));
    const ConnectorReport ok = is_valid_connector(g, trees, k);
    Rational worst;
    for (const auto& p : ok.pairs) worst = std::max(worst, p.probability);
    o.note("k=" + std::to_string(k) + " n=" + std::to_string(n) + " max pair " + worst.str() + " vs " +
           ok.threshold.str());
    if (!ok.valid) o.fail("star connector rejected at k=" + std::to_string(k));

    // Shrink one tree to the largest size strictly below n - n/(10k).
    const std::size_t keep = (n * (10 * k - 1) - 1) / (10 * k);
    std::vector<Vertex> parent = trees[1].parent;
    std::vector<Distance> dist = trees[1].dist;
    for (Vertex v = static_cast<Vertex>(keep); v < n; ++v) parent[v] = kNoVertex, dist[v] = kUnreached;
    trees[1] = WTree::from_parents(std::move(parent), std::move(dist));
    const ConnectorReport bad = is_valid_connector(g, trees, k);
    if (bad.valid || bad.size_ok[1]) o.fail("shrunk tree of size " + std::to_string(keep) + " accepted");
  }
  return o;
}

Outcome find_minor_rate() {
  Outcome o;
  const std::size_t n = 1000;
  const Graph g = complete(n);
  for (std::size_t t : {2, 3}) {
    std::vector<WTree> trees;
    for (std::size_t i = 0; i < 20 * t * t; ++i) trees.push_back(star_tree(n, static_cast<Vertex>(i)));
    std::size_t hits = 0, bad = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const FindMinorResult r = find_minor(g, trees, t, seed, 1);
      if (!r.model) continue;
      ++hits;
      if (r.model->order() != t || !verify_minor_model(g, *r.model).valid) ++bad;
    }
    const double rate = hits / 200.0;
    o.note("t=" + std::to_string(t) + " rate " + fmt("%.3f", rate));
    if (rate < 0.33) o.fail("success rate below 0.33");
    if (bad) o.fail(std::to_string(bad) + " invalid models");
  }
  return o;
}

Outcome dense_chain() {
  Outcome o;
  {
    // (a)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto t0 = Clock::now();
      const Graph g = random_gnm(2000, 128000, seed);
      const DensifyResult r = densify(g, 64);
      bool ok = r.minor.num_vertices() <= 128 && min_degree(r.minor) >= 64;
      for (std::size_t i = 1; i < r.measure.size(); ++i) ok = ok && r.measure[i] < r.measure[i - 1];
      std::vector<int> owner(g.num_vertices(), -1);
      for (std::size_t x = 0; x < r.images.size(); ++x) {
        ok = ok && !r.images[x].empty() && induces_connected(g, r.images[x]);
        for (Vertex v : r.images[x]) {
          ok = ok && owner[v] == -1;
          owner[v] = static_cast<int>(x);
        }
      }
      for (auto [x, y] : r.minor.edges()) {
        bool joined = false;
        for (Vertex v : r.images[x]) {
          for (Vertex u : g.neighbors(v)) joined = joined || owner[u] == static_cast<int>(y);
        }
        ok = ok && joined;
      }
      const double secs = seconds_since(t0);
      if (seed == 1) {
        o.note("(a) |V(H)|=" + std::to_string(r.minor.num_vertices()) + " min deg " +
               std::to_string(min_degree(r.minor)) + " " + fmt("%.2f s", secs));
      }
      if (!ok) o.fail("(a) densify postcondition violated at seed " + std::to_string(seed));
      if (secs >= 60) o.fail("(a) over 60 s");
    }
  }
  {
    // (b) at d = 900. With s = 3 every non-adjacent pair has two common
    // neighbours, so the denser branch is reached only through the extra
    // d = 1600 instance, where s = 4 and the first four vertices meet only via hubs.
    struct Input {
      std::string name;
      Graph graph;
      std::size_t d;
    };
    std::vector<Input> inputs;
    inputs.push_back({"K_1800", complete(1800), 900});
    inputs.push_back({"bridged cliques", bridged_cliques(900), 900});
    {
      const Graph g = random_gnm(1800, 1800 * 700, 7);
      if (min_degree(g) >= 900) inputs.push_back({"G(1800, 1260000)", g, 900});
    }
    inputs.push_back({"bridged cliques d=1600 (extra)", bridged_cliques(1600), 1600});
    std::string branches;
    for (const auto& [name, h, d] : inputs) {
      const auto t0 = Clock::now();
      const DichotomyResult r = two_subdivision_or_denser(h, d);
      bool ok = r.model.has_value() != r.denser.has_value();
      if (r.model) {
        ok = ok && r.model->order() == r.order && verify_minor_model(h, *r.model).valid;
        std::size_t used = 0;
        for (const auto& s : r.model->branch_sets) used += s.size();
        ok = ok && used <= r.order * r.order;
      }
      if (r.denser) {
        const Graph& hp = r.denser->graph;
        ok = ok && hp.num_vertices() * 100 <= 102 * d && min_degree(hp) * 100 >= 94 * d;
        for (auto [a, b] : hp.edges()) ok = ok && h.has_edge(r.denser->to_original[a], r.denser->to_original[b]);
      }
      if (!branches.empty()) branches += ", ";
      branches += name + (r.model ? " -> model" : " -> denser");
      if (!ok) o.fail("(b) postcondition violated on " + name);
      if (seconds_since(t0) >= 60) o.fail("(b) over 60 s on " + name);
    }
    o.note("(b) " + branches);
  }
  {
    // (c)
    const auto t0 = Clock::now();
    const Graph k = complete(918);
    const MinorModel m = clique_minor_super_dense(k, 900);
    const bool ok = m.order() == 3 && verify_minor_model(k, m).valid;
    o.note("(c) K_" + std::to_string(m.order()) + (ok ? " verified" : " rejected"));
    if (!ok) o.fail("(c) super-dense model invalid");
    if (seconds_since(t0) >= 60) o.fail("(c) over 60 s");
  }
  return o;
}

Outcome partition_pipeline() {
  Outcome o;
  std::size_t bad_parts = 0, graphs = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Graph g;
    if (seed % 5 == 0) {
      g = grid(5 + seed % 11, 6 + seed % 7);
    } else if (seed % 5 == 1) {
      g = grid_torus(4 + seed % 9, 5 + seed % 6);
    } else {
      g = capped_graph(30 + 9 * seed, 4, 2 * seed, seed);
    }
    if (max_degree(g) > 4 || connected_components(g).count() != 1) {
      o.fail("test graph " + std::to_string(seed) + " is not connected with max degree <= 4");
      continue;
    }
    ++graphs;
    for (std::size_t p : {3, 10}) {
      if (p > g.num_vertices()) continue;
      const Partition part = connected_partition(g, p);
      std::vector<int> hits(g.num_vertices(), 0);
      for (const VertexSet& s : part.parts) {
        if (s.size() < p || s.size() > p * (max_degree(g) + 1) || !induces_connected(g, s)) ++bad_parts;
        for (Vertex v : s) ++hits[v];
      }
      for (int h : hits) bad_parts += h != 1;
    }
  }
  o.note(std::to_string(graphs) + " graphs, " + std::to_string(bad_parts) + " bad parts");
  if (bad_parts) o.fail("partition bounds violated");

  const Graph g = grid(40, 40);
  const SepResult r = bounded_degree_pipeline(g, 5, 4, Rational{2, 3}, ConstantsProfile::desk(), 1);
  if (r.tag == SepTag::Separator) {
    const SepReport rep = verify_separator(g, r.separator, Rational{2, 3});
    o.note("pipeline |S|=" + std::to_string(r.separator.size()) + " balance " + rep.max_component_fraction.str());
    if (!rep.valid) o.fail("lifted separator invalid");
  } else if (r.tag == SepTag::Minor) {
    o.note("pipeline returned a minor");
    if (!r.model || !verify_minor_model(g, *r.model).valid) o.fail("lifted model invalid");
  } else {
    o.fail("pipeline indeterminate: " + r.note);
  }
  return o;
}

Outcome negative_controls() {
  Outcome o;
  SepOptions opts;
  opts.snapshots = true;
  const SepResult run = find_separator_once(complete(300), 3, ConstantsProfile::desk(), 1, opts);
  const RunTrace& trace = run.traces.at(0);
  if (!check_invariants(trace).all_pass()) o.fail("clean trace does not pass");
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    RunTrace bad = trace;
    bad.iterations[i].weights[0] = trace.profile.w_init - 1;
    const InvariantReport rep = check_invariants(bad);
    if (rep.all_pass() || rep.first_failure(5) != bad.iterations[i].t) {
      o.fail("corruption at t=" + std::to_string(bad.iterations[i].t) + " not caught there");
    }
  }
  o.note(std::to_string(trace.iterations.size()) + " corrupted traces");

  const MinorModel overlap{{VertexSet::from_sorted({0, 1}), VertexSet::from_sorted({1, 2}),
                            VertexSet::from_sorted({3})}};
  if (verify_minor_model(complete(4), overlap).valid) o.fail("overlapping branch sets accepted");

  const Graph p = path(30);
  if (verify_separator(p, VertexSet::from_sorted({2}), Rational{2, 3}).valid) o.fail("unbalanced separator accepted");
  if (verify_separator(grid(10, 10), {}, Rational{2, 3}).valid) o.fail("empty separator accepted");
  return o;
}

}  // namespace

int main() {
  report(1, "wbfs oracle equivalence", wbfs_oracle);
  report(2, "KPR guarantees", kpr_guarantees);
  report(3, "invariant suite (paper profile)", invariant_suite);
  report(4, "separator validity and balance", separator_validity);
  report(5, "separator size scaling", separator_scaling);
  report(6, "near-linear time", near_linear_time);
  report(7, "stochastic connector exactness", connector_exactness);
  report(8, "find_minor success probability", find_minor_rate);
  report(9, "dense-chain sub-lemmas", dense_chain);
  report(10, "connected partition and pipeline", partition_pipeline);
  report(11, "negative controls", negative_controls);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
