#include "minorsep/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "minorsep/errors.hpp"

namespace minorsep {
namespace {

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

std::string to_string(u128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && u128{r} * r > n) --r;
  while (u128{r + 1} * (r + 1) <= n) ++r;
  return r;
}

Rational Rational::make(u128 num, u128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  const u128 g = gcd128(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const { return to_string(num) + "/" + to_string(den); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const u128 lhs = a.num * b.den;
  const u128 rhs = b.num * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

SepReport verify_separator(const Graph& g, const VertexSet& separator, Rational alpha) {
  const std::size_t n = g.num_vertices();
  Mask alive(n, 1);
  for (Vertex v : separator) {
    if (v >= n) throw InputError("separator vertex " + std::to_string(v) + " out of range");
    alive[v] = 0;
  }
  const Components comps = connected_components(g, alive);
  SepReport r;
  r.separator_size = separator.size();
  r.component_sizes = comps.sizes;
  r.max_component = comps.sizes.empty() ? 0 : comps.sizes.front();
  r.max_component_fraction = n == 0 ? Rational{0, 1} : Rational::make(r.max_component, n);
  r.valid = static_cast<u128>(r.max_component) * alpha.den <= alpha.num * static_cast<u128>(n);
  return r;
}

ModelReport verify_pattern_model(const Graph& g, std::span<const VertexSet> branch_sets,
                                 std::span<const Edge> pattern_edges) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> owner(n, kNoVertex);
  for (std::size_t i = 0; i < branch_sets.size(); ++i) {
    if (branch_sets[i].empty()) return {false, "branch set " + std::to_string(i) + " is empty"};
    for (Vertex v : branch_sets[i]) {
      if (v >= n) return {false, "branch set " + std::to_string(i) + " has out-of-range vertex"};
      if (owner[v] != kNoVertex) {
        return {false, "disjointness: branch sets " + std::to_string(owner[v]) + " and " + std::to_string(i) +
                           " share vertex " + std::to_string(v)};
      }
      owner[v] = static_cast<Vertex>(i);
    }
  }
  // Connectivity by a search confined to each set.
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Vertex> stack;
  for (std::size_t i = 0; i < branch_sets.size(); ++i) {
    const Vertex s = branch_sets[i].front();
    seen[s] = 1;
    stack.push_back(s);
    std::size_t count = 0;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      ++count;
      for (Vertex v : g.neighbors(u)) {
        if (owner[v] == i && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    if (count != branch_sets[i].size()) return {false, "connectivity: branch set " + std::to_string(i) + " is not connected"};
  }
  // Collect touching pairs once.
  std::vector<Edge> touching;
  for (Vertex u = 0; u < n; ++u) {
    if (owner[u] == kNoVertex) continue;
    for (Vertex v : g.neighbors(u)) {
      if (owner[v] != kNoVertex && owner[u] < owner[v]) touching.emplace_back(owner[u], owner[v]);
    }
  }
  std::sort(touching.begin(), touching.end());
  touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
  for (auto [a, b] : pattern_edges) {
    if (a >= branch_sets.size() || b >= branch_sets.size()) return {false, "pattern edge out of range"};
    const Edge key{std::min(a, b), std::max(a, b)};
    if (!std::binary_search(touching.begin(), touching.end(), key)) {
      return {false, "adjacency: branch sets " + std::to_string(a) + " and " + std::to_string(b) + " do not touch"};
    }
  }
  return {true, ""};
}

ModelReport verify_minor_model(const Graph& g, const MinorModel& model) {
  std::vector<Edge> pattern;
  const auto t = static_cast<Vertex>(model.order());
  for (Vertex i = 0; i < t; ++i) {
    for (Vertex j = i + 1; j < t; ++j) pattern.emplace_back(i, j);
  }
  return verify_pattern_model(g, model.branch_sets, pattern);
}

ModelReport verify_biclique_model(const Graph& g, const BicliqueModel& model) {
  std::vector<VertexSet> sets = model.left;
  sets.insert(sets.end(), model.right.begin(), model.right.end());
  std::vector<Edge> pattern;
  const auto s = static_cast<Vertex>(model.left.size());
  for (Vertex i = 0; i < s; ++i) {
    for (Vertex j = 0; j < model.right.size(); ++j) pattern.emplace_back(i, s + j);
  }
  return verify_pattern_model(g, sets, pattern);
}

std::vector<Distance> dist_oracle_from(const Graph& g, const WeightFn& w, Vertex u) {
  const std::size_t n = g.num_vertices();
  if (u >= n) throw DomainError("dist_oracle source out of range");
  std::vector<Distance> d(n, kUnreached);
  std::vector<std::uint8_t> queued(n, 0);
  std::deque<Vertex> queue{u};
  d[u] = w[u];
  queued[u] = 1;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    queued[x] = 0;
    for (Vertex y : g.neighbors(x)) {
      const Distance cand = d[x] + w[y];
      if (cand < d[y]) {
        d[y] = cand;
        if (!queued[y]) {
          queued[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  return d;
}

Distance dist_oracle(const Graph& g, const WeightFn& w, Vertex u, Vertex v) {
  if (v >= g.num_vertices()) throw DomainError("dist_oracle target out of range");
  return dist_oracle_from(g, w, u)[v];
}

Distance weak_diameter(const Graph& g, const WeightFn& w, const VertexSet& x) {
  Distance best = 0;
  for (Vertex u : x) {
    const auto d = dist_oracle_from(g, w, u);
    for (Vertex v : x) best = std::max(best, d[v]);
  }
  return best;
}

Rational collision_probability_exact(const WTree& ti, const WTree& tj) {
  const u128 total = static_cast<u128>(ti.size()) * tj.size();
  if (total == 0) throw DomainError("collision probability of an empty tree");
  if (total > kCollisionPairLimit) {
    throw ScaleError("collision enumeration over " + to_string(total) + " pairs exceeds the limit of " +
                     std::to_string(kCollisionPairLimit));
  }
  const std::size_t n = std::max(ti.universe(), tj.universe());
  std::vector<std::uint64_t> stamp(n, 0);
  std::uint64_t now = 0;
  u128 hits = 0;
  for (Vertex u : ti.members) {
    ++now;
    for (Vertex x = u; x != kNoVertex; x = ti.parent[x]) stamp[x] = now;
    for (Vertex v : tj.members) {
      for (Vertex y = v; y != kNoVertex; y = tj.parent[y]) {
        if (stamp[y] == now) {
          ++hits;
          break;
        }
      }
    }
  }
  return Rational::make(hits, total);
}

Rational collision_probability_by_subtrees(const WTree& ti, const WTree& tj) {
  const u128 total = static_cast<u128>(ti.size()) * tj.size();
  if (total == 0) throw DomainError("collision probability of an empty tree");
  const std::size_t n = std::max(ti.universe(), tj.universe());
  std::vector<std::uint8_t> on_path(n, 0);
  u128 hits = 0;
  std::vector<Vertex> path;
  for (Vertex u : ti.members) {
    path.clear();
    for (Vertex x = u; x != kNoVertex; x = ti.parent[x]) path.push_back(x);
    for (Vertex x : path) on_path[x] = 1;
    // Count T_j vertices below a topmost marked vertex: a marked x counts
    // its T_j-subtree unless some proper T_j-ancestor is marked too.
    for (Vertex x : path) {
      if (!tj.contains(x)) continue;
      bool covered = false;
      for (Vertex y = tj.parent[x]; y != kNoVertex; y = tj.parent[y]) {
        if (on_path[y]) {
          covered = true;
          break;
        }
      }
      if (!covered) hits += tj.subtree_size[x];
    }
    for (Vertex x : path) on_path[x] = 0;
  }
  return Rational::make(hits, total);
}

ConnectorReport is_valid_connector(const Graph& g, std::span<const WTree> trees, std::size_t k) {
  const std::size_t n = g.num_vertices();
  ConnectorReport r;
  r.threshold = Rational::make(1, static_cast<u128>(5) * k * k);
  r.valid = trees.size() == k;
  for (const WTree& t : trees) {
    // |V(T)| >= n - n/(10k)  <=>  10k |V(T)| >= 10k n - n
    const bool ok = static_cast<u128>(10) * k * t.size() >= static_cast<u128>(10) * k * n - n;
    r.size_ok.push_back(ok);
    r.valid = r.valid && ok;
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      if (i == j) continue;
      const Rational p = collision_probability_exact(trees[i], trees[j]);
      const bool ok = p <= r.threshold;
      r.pairs.push_back({i, j, p, ok});
      r.valid = r.valid && ok;
    }
  }
  return r;
}

}  // namespace minorsep
