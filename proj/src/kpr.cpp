#include "minorsep/kpr.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "minorsep/errors.hpp"
#include "minorsep/verify.hpp"

namespace minorsep {
namespace {

// Offsets a vertex is cut by: a cyclic run of `len` offsets starting at `first`.
struct FamilySpan {
  std::uint64_t first = 0;
  std::uint64_t len = 0;
};

FamilySpan family_span(LevelRange r, std::uint64_t delta) {
  const Distance a = std::max<Distance>(r.lo, 2);
  if (a > r.hi) return {};
  return {(a - 2) % delta + 1, std::min<std::uint64_t>(r.hi - a + 1, delta)};
}

bool in_family(FamilySpan s, std::uint64_t offset, std::uint64_t delta) {
  if (s.len == 0) return false;
  return (offset + delta - s.first) % delta < s.len;
}

std::span<const Vertex> members_or_all(const WTree& tree, std::span<const Vertex> members) {
  return members.empty() ? std::span<const Vertex>(tree.members.ids()) : members;
}

u128 limit_3h2(std::size_t h, std::uint64_t delta) { return u128{3} * h * h * delta; }

Mask alive_after(std::size_t n, std::span<const VertexSet> cuts, std::size_t rounds) {
  Mask alive(n, 1);
  for (std::size_t j = 0; j < rounds && j < cuts.size(); ++j) {
    for (Vertex v : cuts[j]) alive[v] = 0;
  }
  return alive;
}

// Tree of the component of `alive` holding v, rooted at the component's smallest vertex.
WTree component_tree(const Graph& g, const WeightFn& w, const Mask& alive, Vertex v) {
  const Components comps = connected_components(g, alive);
  const Vertex root = comps.members(comps.label[v]).front();
  return weighted_bfs(g, w, root, kUnlimited, alive);
}

}  // namespace

namespace {

FamilySpan span_of(std::span<const Distance> dist, const WeightFn& w, Vertex v, std::uint64_t delta) {
  if (dist[v] == kUnreached) throw DomainError("vertex " + std::to_string(v) + " is not in the tree");
  return family_span({dist[v] - w[v] + 1, dist[v]}, delta);
}

VertexSet family_of(std::span<const Distance> dist, const WeightFn& w, std::uint64_t delta, std::uint64_t offset,
                    std::span<const Vertex> scan) {
  std::vector<Vertex> cut;
  for (Vertex v : scan) {
    if (in_family(span_of(dist, w, v, delta), offset, delta)) cut.push_back(v);
  }
  return VertexSet::from_unsorted(std::move(cut));
}

OffsetCut cheapest_of(std::span<const Distance> dist, const WeightFn& w, std::uint64_t delta,
                      std::span<const Vertex> scan) {
  // count[i] = number of vertices cut by offset i, via a cyclic difference array.
  std::vector<std::int64_t> diff(delta + 2, 0);
  for (Vertex v : scan) {
    const FamilySpan s = span_of(dist, w, v, delta);
    if (s.len == 0) continue;
    const std::uint64_t end = s.first + s.len;  // exclusive
    ++diff[s.first];
    if (end <= delta + 1) {
      --diff[end];
    } else {
      --diff[delta + 1];
      ++diff[1];
      --diff[end - delta];
    }
  }
  OffsetCut best;
  std::int64_t best_count = -1, running = 0;
  for (std::uint64_t i = 1; i <= delta; ++i) {
    running += diff[i];
    if (best_count < 0 || running < best_count) {
      best_count = running;
      best.offset = i;
    }
  }
  best.cut = family_of(dist, w, delta, best.offset, scan);
  return best;
}

}  // namespace

OffsetCut cheapest_offset_family(const WTree& tree, const WeightFn& w, std::uint64_t delta,
                                 std::span<const Vertex> members) {
  if (delta == 0) throw ParameterError("offset families need delta >= 1");
  return cheapest_of(tree.dist, w, delta, members_or_all(tree, members));
}

VertexSet offset_family(const WTree& tree, const WeightFn& w, std::uint64_t delta, std::uint64_t offset,
                        std::span<const Vertex> members) {
  if (delta == 0 || offset == 0 || offset > delta) throw ParameterError("offset must lie in [1, delta]");
  return family_of(tree.dist, w, delta, offset, members_or_all(tree, members));
}

KprOutcome kpr(const Graph& g, const WeightFn& w, std::uint64_t delta, std::size_t h, KprOptions options) {
  if (delta == 0) throw ParameterError("kpr needs delta >= 1");
  if (h == 0) throw ParameterError("kpr needs h >= 1");
  const std::size_t n = g.num_vertices();
  if (w.size() != n) throw ParameterError("weight function does not match the graph");

  KprOutcome out;
  Mask alive(n, 1);
  const u128 shallow_first = u128{delta} * h * h;  // first round: 2 * depth <= delta h^2
  const u128 shallow_later = limit_3h2(h, delta);

  std::optional<Components> unchanged;  // components of `alive` when the last round cut nothing
  for (std::size_t round = 1; round <= h; ++round) {
    Components comps = connected_components(g, alive);
    if (comps.count() == 0) break;
    // Bucket vertices by component; ids ascend within each bucket.
    std::vector<std::size_t> start(comps.count() + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (comps.label[v] != kNoLabel) ++start[comps.label[v] + 1];
    }
    for (std::size_t c = 0; c < comps.count(); ++c) start[c + 1] += start[c];
    std::vector<Vertex> grouped(start.back());
    {
      std::vector<std::size_t> fill(start.begin(), start.end() - 1);
      for (Vertex v = 0; v < n; ++v) {
        if (comps.label[v] != kNoLabel) grouped[fill[comps.label[v]]++] = v;
      }
    }
    std::vector<Vertex> roots(comps.count());
    for (std::size_t c = 0; c < comps.count(); ++c) roots[c] = grouped[start[c]];
    // The forest itself is only needed when the caller keeps it.
    WTree forest;
    std::vector<Distance> bare;
    if (options.keep_round_trees) {
      forest = weighted_bfs(g, w, roots, kUnlimited, alive);
    } else {
      bare = weighted_distances(g, w, roots, kUnlimited, alive);
    }
    const std::vector<Distance>& dist = options.keep_round_trees ? forest.dist : bare;

    std::vector<Vertex> cut;
    bool any_deep = false;
    for (std::size_t c = 0; c < comps.count(); ++c) {
      const std::span<const Vertex> comp(grouped.data() + start[c], start[c + 1] - start[c]);
      Distance depth = 0;
      for (Vertex v : comp) depth = std::max(depth, dist[v]);
      const bool deep = round == 1 ? u128{2} * depth > shallow_first : u128{depth} > shallow_later;
      if (!deep) continue;
      any_deep = true;
      const OffsetCut oc = cheapest_of(dist, w, delta, comp);
      cut.insert(cut.end(), oc.cut.begin(), oc.cut.end());
    }
    if (options.keep_round_trees) out.round_trees.push_back(std::move(forest));
    if (!any_deep) {
      out.early_exit = round == 1;
      unchanged = std::move(comps);
      break;
    }
    VertexSet s = VertexSet::from_unsorted(std::move(cut));
    for (Vertex v : s) alive[v] = 0;
    out.round_cuts.push_back(std::move(s));
  }

  {
    Mask removed(n, 0);
    for (Vertex v = 0; v < n; ++v) removed[v] = alive[v] ? 0 : 1;
    out.separator = VertexSet::from_mask(removed);
  }
  const Components final_comps = unchanged ? std::move(*unchanged) : connected_components(g, alive);
  if (final_comps.count() == 0) return out;
  out.core = final_comps.members(0);
  const Vertex c = out.core.front();

  Distance core_depth = 0;
  for (Distance d : weighted_distances(g, w, c, kUnlimited, alive)) {
    if (d != kUnreached) core_depth = std::max(core_depth, d);
  }
  if (u128{core_depth} <= shallow_later) return out;
  const WTree whole = weighted_bfs(g, w, c);
  Distance ecc = 0;
  for (Vertex v : out.core) ecc = std::max(ecc, whole.dist[v]);
  if (u128{ecc} <= shallow_later) return out;

  out.tag = KprTag::Minor;
  if (h == 1) {
    out.model = MinorModel{{VertexSet::from_sorted({c})}};
    return out;
  }
  if (h == 2) {
    Vertex other = kNoVertex;
    for (Vertex u : g.neighbors(c)) {
      if (alive[u]) {
        other = u;
        break;
      }
    }
    if (other == kNoVertex) throw InternalError("deep core without an edge");
    out.model = MinorModel{{VertexSet::from_sorted({c}), VertexSet::from_sorted({other})}};
    return out;
  }

  KprDecomposition d;
  d.delta = delta;
  d.h = h;
  d.separators = out.round_cuts;
  d.core = out.core;
  for (std::size_t i = 0; i < d.separators.size(); ++i) {
    d.trees.push_back(component_tree(g, w, alive_after(n, d.separators, i), c));
  }
  const DecompositionReport rep = check_decomposition(g, w, d);
  if (!rep.valid()) throw InternalError("kpr built an invalid decomposition: " + rep.violation);
  out.biclique = extract_khh(g, w, d);
  out.model = biclique_to_clique(*out.biclique);
  out.decomposition = std::move(d);
  return out;
}

DecompositionReport check_decomposition(const Graph& g, const WeightFn& w, const KprDecomposition& d) {
  DecompositionReport r;
  const std::size_t n = g.num_vertices();
  const std::size_t rounds = d.separators.size();
  auto fail = [&r](std::string msg) {
    if (r.violation.empty()) r.violation = std::move(msg);
  };
  if (d.delta == 0) {
    fail("delta must be positive");
    return r;
  }
  if (d.trees.size() != rounds) {
    fail("tree count differs from separator count");
    return r;
  }
  if (d.core.empty()) {
    fail("empty core");
    return r;
  }

  // Core is the largest component of G minus all separators, and far from its smallest vertex.
  {
    const Mask alive = alive_after(n, d.separators, rounds);
    const Components comps = connected_components(g, alive);
    const bool largest = comps.count() > 0 && comps.members(0) == d.core;
    const WTree whole = weighted_bfs(g, w, d.core.front());
    Distance ecc = 0;
    for (Vertex v : d.core) ecc = std::max(ecc, whole.dist[v]);
    r.far_pair = largest && u128{ecc} > limit_3h2(d.h, d.delta);
    if (!largest) fail("core is not the largest component");
    else if (!r.far_pair) fail("core eccentricity " + std::to_string(ecc) + " is within 3h^2 delta");
  }

  r.light = true;
  {
    const VertexSet empty;
    const VertexSet& first_cut = rounds > 0 ? d.separators[0] : empty;
    std::vector<Vertex> scope;
    if (rounds > 0) {
      scope = d.trees[0].members.ids();
    } else {
      for (Vertex v = 0; v < n; ++v) scope.push_back(v);
    }
    for (Vertex v : scope) {
      if (w[v] > d.delta && !first_cut.contains(v)) {
        r.light = false;
        fail("vertex " + std::to_string(v) + " outside the first separator has weight above delta");
        break;
      }
    }
  }

  r.spanning = true;
  r.layered = true;
  const Distance reach = static_cast<Distance>(d.h + 1) * d.delta + 1;
  r.deep = true;
  for (std::size_t i = 0; i < rounds; ++i) {
    const WTree& t = d.trees[i];
    const std::string tag = "tree " + std::to_string(i + 1);
    const Mask before = alive_after(n, d.separators, i);
    const Components comps = connected_components(g, before);
    const Vertex c = d.core.front();
    bool spans = t.universe() == n && t.roots.size() == 1 && before[c] && comps.members(comps.label[c]) == t.members;
    if (spans) {
      for (Vertex v : t.members) {
        const Vertex p = t.parent[v];
        const bool ok = p == kNoVertex ? v == t.root() && t.dist[v] == w[v]
                                       : g.has_edge(p, v) && t.dist[p] != kUnreached && t.dist[v] == t.dist[p] + w[v];
        if (!ok) {
          spans = false;
          break;
        }
      }
    }
    if (!spans) {
      r.spanning = false;
      fail(tag + " does not span the component holding the core");
      continue;
    }

    const Mask after = alive_after(n, d.separators, i + 1);
    const Components pieces = connected_components(g, after);
    std::vector<Distance> lo(pieces.count(), kUnreached), hi(pieces.count(), 0);
    for (Vertex v : t.members) {
      if (pieces.label[v] == kNoLabel) continue;
      const LevelRange lr = levels(t, w, v);
      lo[pieces.label[v]] = std::min(lo[pieces.label[v]], lr.lo);
      hi[pieces.label[v]] = std::max(hi[pieces.label[v]], lr.hi);
    }
    for (std::size_t p = 0; p < pieces.count(); ++p) {
      if (lo[p] != kUnreached && hi[p] - lo[p] + 1 > d.delta) {
        r.layered = false;
        fail(tag + ": a component spans " + std::to_string(hi[p] - lo[p] + 1) + " layers");
        break;
      }
    }

    for (Vertex v : d.core) {
      if (!t.contains(v) || t.dist[v] < reach) {
        r.deep = false;
        fail(tag + ": core vertex " + std::to_string(v) + " is closer than (h+1) delta + 1 to the root");
        break;
      }
    }
  }
  return r;
}

BicliqueModel extract_khh(const Graph& g, const WeightFn& w, const KprDecomposition& d) {
  const std::size_t h = d.h;
  if (h < 3) throw DomainError("extract_khh needs h >= 3");
  if (d.trees.size() != h) throw DomainError("extract_khh needs exactly h trees");
  if (const DecompositionReport rep = check_decomposition(g, w, d); !rep.valid()) {
    throw DomainError("decomposition rejected: " + rep.violation);
  }
  const std::size_t n = g.num_vertices();
  const Distance spacing = 2 * static_cast<Distance>(h + 2) * d.delta + 2;
  const Distance reach = static_cast<Distance>(h + 1) * d.delta + 1;

  const Vertex first = d.core.front();
  const WTree whole = weighted_bfs(g, w, first);
  Vertex last = first;
  for (Vertex v : d.core) {
    if (whole.dist[v] > whole.dist[last]) last = v;
  }
  const Mask core_mask = d.core.to_mask(n);
  std::vector<Vertex> spine = path_to_root(weighted_bfs(g, w, first, kUnlimited, core_mask), last);
  std::reverse(spine.begin(), spine.end());

  std::vector<Vertex> anchors{first};
  while (anchors.size() + 1 < h) {
    const WTree near = weighted_bfs(g, w, anchors);
    const auto it = std::find_if(spine.begin(), spine.end(), [&](Vertex x) { return near.dist[x] >= spacing; });
    if (it == spine.end()) throw InternalError("no anchor " + std::to_string(anchors.size() + 1) + " on the spine");
    anchors.push_back(*it);
  }
  if (weighted_bfs(g, w, anchors).dist[last] < spacing) {
    throw InternalError("last anchor is too close to the others");
  }
  anchors.push_back(last);

  std::vector<std::vector<Vertex>> left(h), right(h);
  for (std::size_t i = 0; i < h; ++i) left[i].push_back(anchors[i]);
  for (std::size_t j = h; j-- > 0;) {
    const WTree& t = d.trees[j];
    for (std::size_t i = 0; i < h; ++i) {
      Distance walked = 0;
      Vertex x = anchors[i];
      while (x != kNoVertex) {
        walked += w[x];
        if (walked >= reach) break;
        left[i].push_back(x);
        x = t.parent[x];
      }
      if (x == kNoVertex) throw InternalError("root path of an anchor is too short");
      const auto up = path_to_root(t, x);
      right[j].insert(right[j].end(), up.begin(), up.end());
    }
  }

  BicliqueModel model;
  for (auto& s : left) model.left.push_back(VertexSet::from_unsorted(std::move(s)));
  for (auto& s : right) model.right.push_back(VertexSet::from_unsorted(std::move(s)));
  if (const ModelReport rep = verify_biclique_model(g, model); !rep.valid) {
    throw InternalError("extracted K_{h,h} model is invalid: " + rep.violation);
  }
  return model;
}

}  // namespace minorsep
