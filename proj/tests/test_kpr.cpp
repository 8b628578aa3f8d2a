#include <algorithm>
#include <random>

#include "doctest.h"
#include "minorsep/errors.hpp"
#include "minorsep/generate.hpp"
#include "minorsep/kpr.hpp"
#include "minorsep/verify.hpp"

using namespace minorsep;

namespace {

// Family membership straight from the definition: v is cut by offset i when
// some layer j in [max(lo, 2), hi] has ((j - 2) mod delta) + 1 == i.
VertexSet family_oracle(const WTree& t, const WeightFn& w, std::uint64_t delta, std::uint64_t offset) {
  std::vector<Vertex> out;
  for (Vertex v : t.members) {
    const std::uint64_t hi = t.dist[v];
    const std::uint64_t lo = std::max<std::uint64_t>(hi - w[v] + 1, 2);
    for (std::uint64_t j = lo; j <= hi; ++j) {
      if ((j - 2) % delta + 1 == offset) {
        out.push_back(v);
        break;
      }
    }
  }
  return VertexSet::from_sorted(std::move(out));
}

WeightFn random_weights(std::size_t n, std::uint64_t hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, hi);
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) x = pick(rng);
  return WeightFn(std::move(w));
}

// Checks the Separated guarantees exactly: per-round cut size <= W / delta,
// the core is the largest component of G - S, and its weak diameter <= 6 h^2 delta.
void check_separated(const Graph& g, const WeightFn& w, std::uint64_t delta, std::size_t h, const KprOutcome& o) {
  REQUIRE(o.tag == KprTag::Separated);
  for (const VertexSet& cut : o.round_cuts) CHECK(cut.size() * delta <= w.total());
  const SepReport rest = verify_separator(g, o.separator, Rational{1, 1});
  CHECK(o.core.size() == rest.max_component);
  for (Vertex v : o.core) CHECK(!o.separator.contains(v));
  if (!o.core.empty()) CHECK(induces_connected(g, o.core));
  CHECK(weak_diameter(g, w, o.core) <= 6 * h * h * delta);
}

// Nested trees over a path: each tree has the previous graph's vertices as
// leaves, binary merges along paths of `seg` edges and a stem of `stem`
// edges to its root. Roots of the outermost trees get the smallest ids so
// the layering of every round starts far from the path.
struct Builder {
  std::vector<Edge> edges;
  std::vector<double> pos;

  Vertex add(double p) {
    pos.push_back(p);
    return static_cast<Vertex>(pos.size() - 1);
  }
  void chain(Vertex a, Vertex b, int len) {
    Vertex prev = a;
    for (int i = 1; i < len; ++i) {
      const Vertex x = add((pos[a] + pos[b]) / 2);
      edges.push_back({prev, x});
      prev = x;
    }
    edges.push_back({prev, b});
  }
  Vertex tree_over(std::vector<Vertex> leaves, int seg, int stem) {
    std::sort(leaves.begin(), leaves.end(), [&](Vertex x, Vertex y) { return pos[x] < pos[y]; });
    int len = 1;
    while (leaves.size() > 1) {
      std::vector<Vertex> next;
      for (std::size_t i = 0; i < leaves.size(); i += 2) {
        const std::size_t j = std::min(i + 1, leaves.size() - 1);
        const Vertex x = add((pos[leaves[i]] + pos[leaves[j]]) / 2);
        chain(x, leaves[i], len);
        if (j != i) chain(x, leaves[j], len);
        next.push_back(x);
      }
      leaves = std::move(next);
      len = seg;
    }
    const Vertex r = add(pos[leaves[0]]);
    chain(r, leaves[0], stem);
    return r;
  }
};

Graph nested_trees(std::size_t rounds, int length, int seg, int stem) {
  Builder b;
  std::vector<Vertex> level;
  for (int i = 0; i < length; ++i) {
    level.push_back(b.add(i));
    if (i > 0) b.edges.push_back({level[i - 1], level[i]});
  }
  std::vector<Vertex> roots;
  for (std::size_t t = 0; t < rounds; ++t) {
    roots.push_back(b.tree_over(level, seg, stem));
    level.resize(b.pos.size());
    for (Vertex v = 0; v < level.size(); ++v) level[v] = v;
  }
  std::vector<Vertex> relabel(b.pos.size(), kNoVertex);
  Vertex next = 0;
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) relabel[*it] = next++;
  for (Vertex& r : relabel) {
    if (r == kNoVertex) r = next++;
  }
  for (Edge& e : b.edges) e = {relabel[e.first], relabel[e.second]};
  return build_graph(b.pos.size(), b.edges);
}

}  // namespace

TEST_CASE("offset families match the layer definition") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Graph g = random_gnm(70, 140, seed);
    const WeightFn w = random_weights(70, 1 + seed % 7, seed);
    const WTree t = weighted_bfs(g, w, 0);
    const std::uint64_t delta = 1 + seed % 6;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::uint64_t best_offset = 0;
    for (std::uint64_t i = 1; i <= delta; ++i) {
      const VertexSet want = family_oracle(t, w, delta, i);
      CHECK(offset_family(t, w, delta, i) == want);
      if (want.size() < best) best = want.size(), best_offset = i;
    }
    const OffsetCut c = cheapest_offset_family(t, w, delta);
    CHECK(c.offset == best_offset);
    CHECK(c.cut.size() == best);
  }
}

TEST_CASE("offset families on a path") {
  const Graph p = path(10);
  const WeightFn w = WeightFn::uniform(10, 1);
  const WTree t = weighted_bfs(p, w, 0);
  // Layers 2..10 split into three residue classes of three layers each.
  for (std::uint64_t i = 1; i <= 3; ++i) CHECK(offset_family(t, w, 3, i).size() == 3);
  CHECK(cheapest_offset_family(t, w, 3).offset == 1);
  CHECK(offset_family(t, w, 3, 1) == VertexSet::from_sorted({1, 4, 7}));

  // A vertex spanning at least delta layers is in every family.
  std::vector<std::uint64_t> heavy(10, 1);
  heavy[4] = 3;
  const WeightFn wh(heavy);
  const WTree th = weighted_bfs(p, wh, 0);
  for (std::uint64_t i = 1; i <= 3; ++i) CHECK(offset_family(th, wh, 3, i).contains(4));

  const WTree single = weighted_bfs(path(1), WeightFn::uniform(1, 1), 0);
  CHECK(cheapest_offset_family(single, WeightFn::uniform(1, 1), 2).cut.empty());
}

TEST_CASE("path of 100 with delta 5") {
  const Graph p = path(100);
  const WeightFn w = WeightFn::uniform(100, 1);
  const KprOutcome o = kpr(p, w, 5, 2);
  check_separated(p, w, 5, 2, o);
  CHECK(o.separator.size() <= 20);
  const Subgraph rest = delete_vertices(p, o.separator);
  const Components c = connected_components(rest.graph);
  for (std::size_t i = 0; i < c.count(); ++i) {
    const VertexSet part = c.members(static_cast<Vertex>(i));
    CHECK(rest.to_original[part.ids().back()] - rest.to_original[part.front()] < 5);
  }
}

TEST_CASE("small diameter exits early") {
  const Graph k5 = complete(5);
  const KprOutcome o = kpr(k5, WeightFn::uniform(5, 1), 10, 3);
  CHECK(o.tag == KprTag::Separated);
  CHECK(o.early_exit);
  CHECK(o.separator.empty());
  CHECK(o.core.size() == 5);
}

TEST_CASE("a heavy vertex lands in the first cut") {
  std::vector<std::uint64_t> raw(60, 1);
  raw[30] = 10;
  const WeightFn w(raw);
  const KprOutcome o = kpr(path(60), w, 3, 2);
  REQUIRE(!o.round_cuts.empty());
  CHECK(o.round_cuts[0].contains(30));
}

TEST_CASE("guarantees on grids and paths") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t side = 6 + seed % 10;
    const Graph g = seed % 2 ? grid(side, side + 2) : path(20 * side);
    const WeightFn w = seed % 3 ? WeightFn::uniform(g.num_vertices(), 1) : random_weights(g.num_vertices(), 3, seed);
    const std::uint64_t delta = 1 + seed % 4;
    const std::size_t h = 2 + seed % 2;
    KprOptions opts;
    opts.keep_round_trees = true;
    const KprOutcome o = kpr(g, w, delta, h, opts);
    check_separated(g, w, delta, h, o);
    // The last forest belongs to the round that found nothing deep.
    CHECK(o.round_trees.size() >= o.round_cuts.size());
    CHECK(o.round_trees.size() <= o.round_cuts.size() + 1);

    // Keeping the forests must not change the outcome.
    const KprOutcome bare = kpr(g, w, delta, h);
    CHECK(bare.tag == o.tag);
    CHECK(bare.round_cuts == o.round_cuts);
    CHECK(bare.separator == o.separator);
    CHECK(bare.core == o.core);
    CHECK(bare.round_trees.empty());
  }
}

TEST_CASE("disconnected input is handled per component") {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {3, 4}};
  const Graph g = build_graph(6, e);
  const KprOutcome o = kpr(g, WeightFn::uniform(6, 1), 1, 2);
  check_separated(g, WeightFn::uniform(6, 1), 1, 2, o);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(kpr(path(5), WeightFn::uniform(5, 1), 0, 3), ParameterError);
  CHECK_THROWS_AS(kpr(path(5), WeightFn::uniform(5, 1), 2, 0), ParameterError);
}

TEST_CASE("deep layering yields a verified minor") {
  const Graph g = nested_trees(3, 128, 7, 34);
  const WeightFn w = WeightFn::uniform(g.num_vertices(), 1);
  const KprOutcome o = kpr(g, w, 2, 3);
  REQUIRE(o.tag == KprTag::Minor);
  REQUIRE(o.model);
  REQUIRE(o.biclique);
  REQUIRE(o.decomposition);
  CHECK(o.model->order() == 3);
  CHECK(verify_minor_model(g, *o.model).valid);
  CHECK(o.biclique->left.size() == 3);
  CHECK(o.biclique->right.size() == 3);
  CHECK(verify_biclique_model(g, *o.biclique).valid);
  KprOptions keep;
  keep.keep_round_trees = true;
  const KprOutcome kept = kpr(g, w, 2, 3, keep);
  REQUIRE(kept.model);
  CHECK(kept.model->branch_sets == o.model->branch_sets);
  CHECK(kept.round_cuts == o.round_cuts);

  const KprDecomposition& d = *o.decomposition;
  const DecompositionReport rep = check_decomposition(g, w, d);
  CHECK(rep.valid());
  // One-sided far-pair certificate: eccentricity of the smallest core vertex beyond 3 h^2 delta.
  const WTree from_core = weighted_bfs(g, w, d.core.front());
  Distance ecc = 0;
  for (Vertex v : d.core) ecc = std::max(ecc, from_core.dist[v]);
  CHECK(ecc > 3 * 9 * 2);
  for (std::size_t i = 0; i < d.separators.size(); ++i) CHECK(d.separators[i].size() * 2 <= w.total());
  const BicliqueModel again = extract_khh(g, w, d);
  CHECK(verify_biclique_model(g, again).valid);
  CHECK(verify_minor_model(g, biclique_to_clique(again)).valid);

  // A core vertex next to a round root breaks the depth requirement.
  KprDecomposition shallow = d;
  std::vector<Vertex> core(d.core.begin(), d.core.end());
  core.push_back(d.trees[0].roots.front());
  shallow.core = VertexSet::from_unsorted(core);
  const DecompositionReport bad = check_decomposition(g, w, shallow);
  CHECK(!bad.valid());
  CHECK(!bad.violation.empty());
  CHECK_THROWS_AS(extract_khh(g, w, shallow), DomainError);

  KprDecomposition low = d;
  low.h = 2;
  CHECK_THROWS_AS(extract_khh(g, w, low), DomainError);
}
