#include "minorsep/separator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "minorsep/dense.hpp"
#include "minorsep/errors.hpp"
#include "minorsep/kpr.hpp"
#include "minorsep/rng.hpp"

namespace minorsep {
namespace {

std::uint64_t checked_u64(u128 x, const char* what) {
  if (x > std::numeric_limits<std::uint64_t>::max()) throw ArithmeticError(std::string(what) + " overflows 64 bits");
  return static_cast<std::uint64_t>(x);
}

std::uint64_t pow_checked(std::uint64_t base, std::uint64_t exp) {
  u128 r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = u128{checked_u64(r, "profile constant")} * base;
  return checked_u64(r, "profile constant");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void validate(const ConstantsProfile& p) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw InputError(std::string("profile '") + p.name + "': " + what);
  };
  need(p.w_init >= 1, "w_init must be positive");
  need(p.k_per_h2 + p.k_const >= 1, "k must be positive");
  need(p.delta_divisor >= 1, "delta_divisor must be positive");
  need(p.radius_multiplier >= 1, "radius_multiplier must be positive");
  need(p.numerator_k_power >= 1 || p.numerator_const >= 1, "reweight numerator must be positive");
  need(p.slack_per_k >= 1, "slack_per_k must be positive");
  need(p.dense_guard_per_h2 >= 1, "dense_guard_per_h2 must be positive");
  need(p.repeat_cap_per_h2 >= 1, "repeat_cap_per_h2 must be positive");
}

std::uint64_t mix(std::uint64_t acc, std::uint64_t x) { return mix_seed(acc ^ x, 0); }

Rational largest_fraction(const Graph& g, const Mask& removed) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return Rational{0, 1};
  Mask alive(n);
  for (std::size_t v = 0; v < n; ++v) alive[v] = removed[v] ? 0 : 1;
  const Components comps = connected_components(g, alive);
  return Rational::make(comps.count() == 0 ? 0 : comps.sizes.front(), n);
}

MinorModel lift_model(const MinorModel& model, const std::vector<Vertex>& to_original) {
  MinorModel out;
  for (const VertexSet& b : model.branch_sets) {
    std::vector<Vertex> ids;
    for (Vertex v : b) ids.push_back(to_original[v]);
    out.branch_sets.push_back(VertexSet::from_unsorted(std::move(ids)));
  }
  return out;
}

}  // namespace

ConstantsProfile ConstantsProfile::paper() { return ConstantsProfile{}; }

ConstantsProfile ConstantsProfile::desk() {
  ConstantsProfile p;
  p.name = "desk";
  p.w_init = 4;
  p.k_per_h2 = 0;
  p.k_const = 8;
  p.delta_h_power = 0;
  p.numerator_k_power = 0;
  p.numerator_const = 32;
  return p;
}

ConstantsProfile ConstantsProfile::from_text(const std::string& text, const std::string& name) {
  ConstantsProfile p;
  p.name = name;
  const std::map<std::string, std::uint64_t ConstantsProfile::*> fields = {
      {"w_init", &ConstantsProfile::w_init},
      {"k_per_h2", &ConstantsProfile::k_per_h2},
      {"k_const", &ConstantsProfile::k_const},
      {"delta_divisor", &ConstantsProfile::delta_divisor},
      {"delta_h_power", &ConstantsProfile::delta_h_power},
      {"radius_multiplier", &ConstantsProfile::radius_multiplier},
      {"numerator_k_power", &ConstantsProfile::numerator_k_power},
      {"numerator_const", &ConstantsProfile::numerator_const},
      {"slack_per_k", &ConstantsProfile::slack_per_k},
      {"dense_guard_per_h2", &ConstantsProfile::dense_guard_per_h2},
      {"repeat_cap_per_h2", &ConstantsProfile::repeat_cap_per_h2},
  };
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("profile line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") {
      p.name = value;
      continue;
    }
    const auto it = fields.find(key);
    if (it == fields.end()) throw InputError("profile line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    std::size_t used = 0;
    unsigned long long parsed = 0;
    try {
      parsed = std::stoull(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || value[0] == '-') {
      throw InputError("profile line " + std::to_string(lineno) + ": '" + value + "' is not a nonnegative integer");
    }
    p.*(it->second) = parsed;
  }
  validate(p);
  return p;
}

ConstantsProfile ConstantsProfile::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open profile file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

ConstantsProfile ConstantsProfile::resolve(const std::string& name_or_path) {
  std::string name = name_or_path;
  if (name.empty()) {
    const char* env = std::getenv("MINORSEP_PROFILE");
    name = env != nullptr && *env != '\0' ? env : "paper";
  }
  if (name == "paper") return paper();
  if (name == "desk") return desk();
  return from_file(name);
}

std::string ConstantsProfile::to_text() const {
  std::ostringstream out;
  out << "name=" << name << "\n"
      << "w_init=" << w_init << "\n"
      << "k_per_h2=" << k_per_h2 << "\n"
      << "k_const=" << k_const << "\n"
      << "delta_divisor=" << delta_divisor << "\n"
      << "delta_h_power=" << delta_h_power << "\n"
      << "radius_multiplier=" << radius_multiplier << "\n"
      << "numerator_k_power=" << numerator_k_power << "\n"
      << "numerator_const=" << numerator_const << "\n"
      << "slack_per_k=" << slack_per_k << "\n"
      << "dense_guard_per_h2=" << dense_guard_per_h2 << "\n"
      << "repeat_cap_per_h2=" << repeat_cap_per_h2 << "\n";
  return out.str();
}

std::uint64_t ConstantsProfile::k(std::size_t h) const {
  return checked_u64(u128{k_per_h2} * h * h + k_const, "k");
}

std::uint64_t ConstantsProfile::delta(std::size_t n, std::size_t h) const {
  return isqrt(n) / checked_u64(u128{delta_divisor} * pow_checked(h, delta_h_power), "delta divisor");
}

std::uint64_t ConstantsProfile::radius(std::size_t n) const {
  return checked_u64(u128{radius_multiplier} * isqrt(n), "radius");
}

std::uint64_t ConstantsProfile::numerator(std::size_t h) const {
  return numerator_k_power == 0 ? numerator_const : pow_checked(k(h), numerator_k_power);
}

std::uint64_t ConstantsProfile::slack_denominator(std::size_t h) const {
  return checked_u64(u128{slack_per_k} * k(h), "slack denominator");
}

std::uint64_t ConstantsProfile::dense_guard(std::size_t h) const {
  return checked_u64(u128{dense_guard_per_h2} * h * h, "dense guard");
}

std::uint64_t ConstantsProfile::repeat_cap(std::size_t h) const {
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(repeat_cap_per_h2) * static_cast<double>(h) *
                                              static_cast<double>(h) * std::log(1.5))) +
         1;
}

WeightFn reweight(const WeightFn& w, const WTree& tree, std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw ParameterError("reweight denominator must be positive");
  std::vector<std::uint64_t> next = w.values();
  for (Vertex v : tree.members) {
    u128 prod = u128{tree.subtree_size[v]} * numerator;
    if (prod != 0 && (prod * w[v]) / prod != w[v]) throw ArithmeticError("reweight product overflows");
    prod *= w[v];
    const u128 add = (prod + denominator - 1) / denominator;
    next[v] = checked_u64(u128{w[v]} + add, "reweighted vertex weight");
  }
  return WeightFn(std::move(next));
}

std::uint64_t weight_checksum(const std::vector<std::uint64_t>& w) {
  std::uint64_t acc = 0x243f6a8885a308d3ULL;
  for (std::uint64_t x : w) acc = mix(acc, x);
  return acc;
}

std::string to_string(SepTag tag) {
  switch (tag) {
    case SepTag::Separator: return "separator";
    case SepTag::Minor: return "minor";
    case SepTag::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

SepResult find_separator_once(const Graph& g, std::size_t h, const ConstantsProfile& profile, std::uint64_t seed,
                              SepOptions options) {
  if (h == 0) throw ParameterError("h must be at least 1");
  const std::size_t n = g.num_vertices();
  SepResult result;
  RunTrace trace;
  trace.n = n;
  trace.h = h;
  trace.profile = profile;
  if (n == 0) {
    result.tag = SepTag::Separator;
    result.traces.push_back(std::move(trace));
    return result;
  }
  const std::uint64_t delta = profile.delta(n, h);
  trace.delta = delta;
  if (delta == 0) {
    throw ParameterError("delta = floor(sqrt(n)/" + std::to_string(profile.delta_divisor) +
                         (profile.delta_h_power > 0 ? "h^" + std::to_string(profile.delta_h_power) : "") +
                         ") is 0 for n = " + std::to_string(n) + ", h = " + std::to_string(h) + " under profile '" +
                         profile.name + "'; use a larger graph or the desk profile");
  }
  if (options.dense_guard && u128{g.num_edges()} >= u128{profile.dense_guard(h)} * n) {
    result.tag = SepTag::Minor;
    result.model = minor_in_dense(g, h);
    result.note = "dense guard";
    result.traces.push_back(std::move(trace));
    return result;
  }

  const std::uint64_t k = profile.k(h);
  const std::uint64_t num = profile.numerator(h);
  const std::uint64_t slack_den = profile.slack_denominator(h);
  const std::uint64_t radius = profile.radius(n);
  const std::uint64_t root_n = isqrt(n);
  WeightFn w = WeightFn::uniform(n, profile.w_init);
  Mask removed(n, 0);
  std::vector<WTree> trees;

  for (std::uint64_t t = 1; t <= k; ++t) {
    IterationRecord rec;
    rec.t = t;
    rec.total_weight = w.total();
    rec.weight_checksum = weight_checksum(w.values());
    if (options.snapshots) rec.weights = w.values();

    KprOutcome out = kpr(g, w, delta, h);
    rec.separator_size = out.separator.size();
    rec.core_size = out.core.size();
    if (out.tag == KprTag::Minor) {
      trace.iterations.push_back(std::move(rec));
      result.tag = SepTag::Minor;
      result.model = std::move(out.model);
      result.note = "kpr minor at iteration " + std::to_string(t);
      break;
    }
    for (Vertex v : out.separator) removed[v] = 1;
    if (u128{out.core.size()} * slack_den <= u128{slack_den - 1} * n) {
      trace.iterations.push_back(std::move(rec));
      result.tag = SepTag::Separator;
      break;
    }
    rec.root = out.core.front();
    Mask core_mask;
    if (options.bfs_on_component) core_mask = out.core.to_mask(n);
    WTree tree = weighted_bfs(g, w, rec.root, radius, core_mask);
    rec.tree_size = tree.size();
    w = reweight(w, tree, num, root_n);
    trace.iterations.push_back(std::move(rec));
    trees.push_back(std::move(tree));
  }

  if (result.tag == SepTag::Indeterminate && result.note.empty()) {
    // All k iterations ran: look for a minor through the collected trees.
    const std::size_t needed = 3 * h * (h - 1) / 2;
    if (trees.size() >= needed && h >= 1) {
      const FindMinorResult fm = find_minor(g, trees, h, seed, options.find_minor_attempts);
      if (fm.model) {
        result.tag = SepTag::Minor;
        result.model = fm.model;
        result.note = "find_minor";
      } else {
        result.note = "find_minor failed after " + std::to_string(fm.attempts) + " attempt(s)";
      }
    } else {
      result.note = "only " + std::to_string(trees.size()) + " trees collected, find_minor needs " +
                    std::to_string(needed);
    }
  }
  if (result.tag != SepTag::Minor) result.separator = VertexSet::from_mask(removed);
  if (options.snapshots) {
    trace.final_weights = w.values();
    trace.trees = trees;
  }
  if (result.tag == SepTag::Indeterminate) result.trees = std::move(trees);
  result.balance = result.tag == SepTag::Minor ? Rational{1, 1} : largest_fraction(g, removed);
  result.traces.push_back(std::move(trace));
  return result;
}

SepResult find_balanced_separator(const Graph& g, std::size_t h, Rational alpha, const ConstantsProfile& profile,
                                  std::uint64_t seed, SepOptions options) {
  const std::size_t n = g.num_vertices();
  SepResult result;
  result.tag = SepTag::Separator;
  if (n <= 1) {
    result.balance = Rational::make(n, std::max<std::size_t>(n, 1));
    return result;
  }
  Mask removed(n, 0);
  const std::uint64_t cap = profile.repeat_cap(h);
  // Balance reported by a run on the whole graph already describes `removed`.
  std::optional<Rational> known;
  for (;;) {
    if (known && *known <= alpha) {
      result.balance = *known;
      break;
    }
    Mask alive(n);
    for (std::size_t v = 0; v < n; ++v) alive[v] = removed[v] ? 0 : 1;
    const Components comps = connected_components(g, alive);
    const std::size_t largest = comps.count() == 0 ? 0 : comps.sizes.front();
    result.balance = Rational::make(largest, n);
    if (u128{largest} * alpha.den <= alpha.num * u128{n}) break;
    if (result.rounds >= cap) {
      result.tag = SepTag::Indeterminate;
      result.note = "repeat cap " + std::to_string(cap) + " reached at balance " + result.balance.str();
      break;
    }
    // A connected remainder is the whole graph; skip the copy.
    const bool whole = largest == n;
    Subgraph sub;
    if (!whole) sub = induced_subgraph(g, comps.members(0));
    const Graph& part = whole ? g : sub.graph;
    SepResult once = find_separator_once(part, h, profile, mix_seed(seed, result.rounds), options);
    ++result.rounds;
    for (auto& tr : once.traces) result.traces.push_back(std::move(tr));
    if (once.tag == SepTag::Minor) {
      result.tag = SepTag::Minor;
      result.model = whole ? *once.model : lift_model(*once.model, sub.to_original);
      result.note = once.note;
      return result;
    }
    if (once.tag == SepTag::Indeterminate) {
      result.tag = SepTag::Indeterminate;
      result.note = once.note;
      for (WTree& t : once.trees) {
        // Trees live on the component; keep them only when it is the whole graph.
        if (whole) result.trees.push_back(std::move(t));
      }
      break;
    }
    if (once.separator.empty()) {
      result.tag = SepTag::Indeterminate;
      result.note = "separator loop made no progress";
      break;
    }
    for (Vertex v : once.separator) removed[whole ? v : sub.to_original[v]] = 1;
    if (whole) known = once.balance;
  }
  result.separator = VertexSet::from_mask(removed);
  return result;
}

Partition connected_partition(const Graph& g, std::size_t p) {
  const std::size_t n = g.num_vertices();
  if (p == 0 || p > n) throw ParameterError("connected_partition needs 1 <= p <= n");
  // Iterative DFS from vertex 0, neighbors in ascending order.
  std::vector<Vertex> parent(n, kNoVertex), order;
  std::vector<std::size_t> pre(n, 0), size(n, 1), next_edge(n, 0);
  std::vector<std::uint8_t> seen(n, 0);
  order.reserve(n);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  pre[0] = 0;
  order.push_back(0);
  while (!stack.empty()) {
    const Vertex u = stack.back();
    const auto nb = g.neighbors(u);
    if (next_edge[u] < nb.size()) {
      const Vertex v = nb[next_edge[u]++];
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        pre[v] = order.size();
        order.push_back(v);
        stack.push_back(v);
      }
    } else {
      stack.pop_back();
      if (parent[u] != kNoVertex) size[parent[u]] += size[u];
    }
  }
  if (order.size() != n) throw DomainError("connected_partition needs a connected graph");

  std::vector<std::uint8_t> assigned(n, 0);
  std::vector<VertexSet> parts;
  std::vector<Vertex> roots{0};
  while (!roots.empty()) {
    const Vertex r = roots.back();
    roots.pop_back();
    const std::size_t end = pre[r] + size[r];
    std::vector<Vertex> part;
    std::size_t cur = pre[r];
    while (part.size() < p && cur < end) {
      const Vertex x = order[cur];
      assigned[x] = 1;
      part.push_back(x);
      // Children of x occupy consecutive subtree ranges right after it.
      for (std::size_t c = cur + 1; c < pre[x] + size[x]; c += size[order[c]]) {
        const Vertex child = order[c];
        if (size[child] < p) {
          for (std::size_t i = c; i < c + size[child]; ++i) {
            assigned[order[i]] = 1;
            part.push_back(order[i]);
          }
        }
      }
      ++cur;
      while (cur < end && assigned[order[cur]]) cur += size[order[cur]];
    }
    if (part.size() < p) throw InternalError("connected_partition produced an undersized part");
    for (std::size_t pos = cur; pos < end;) {
      const Vertex v = order[pos];
      if (!assigned[v]) roots.push_back(v);
      pos += size[v];
    }
    parts.push_back(VertexSet::from_unsorted(std::move(part)));
  }
  std::sort(parts.begin(), parts.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return Partition::from_parts(n, std::move(parts));
}

SepResult bounded_degree_pipeline(const Graph& g, std::size_t h, std::size_t p, Rational alpha,
                                  const ConstantsProfile& profile, std::uint64_t seed, SepOptions options) {
  const std::size_t n = g.num_vertices();
  SepResult result;
  result.tag = SepTag::Separator;
  if (n <= 1) {
    result.balance = Rational::make(n, std::max<std::size_t>(n, 1));
    return result;
  }
  if (p == 0) throw ParameterError("bounded_degree_pipeline needs p >= 1");
  Mask removed(n, 0);
  const std::uint64_t cap = profile.repeat_cap(h);
  for (;;) {
    Mask alive(n);
    for (std::size_t v = 0; v < n; ++v) alive[v] = removed[v] ? 0 : 1;
    const Components comps = connected_components(g, alive);
    const std::size_t largest = comps.count() == 0 ? 0 : comps.sizes.front();
    result.balance = Rational::make(largest, n);
    if (u128{largest} * alpha.den <= alpha.num * u128{n}) break;
    if (result.rounds >= cap) {
      result.tag = SepTag::Indeterminate;
      result.note = "repeat cap reached at balance " + result.balance.str();
      break;
    }
    const Subgraph sub = induced_subgraph(g, comps.members(0));
    const std::size_t part_size = std::min(p, sub.graph.num_vertices());
    const Partition partition = connected_partition(sub.graph, part_size);
    const Quotient q = contract_partition(sub.graph, partition);
    SepResult inner = find_balanced_separator(q.graph, h, alpha, profile, mix_seed(seed, result.rounds), options);
    ++result.rounds;
    for (auto& tr : inner.traces) result.traces.push_back(std::move(tr));
    if (inner.tag == SepTag::Minor) {
      MinorModel lifted;
      for (const VertexSet& b : inner.model->branch_sets) {
        std::vector<Vertex> ids;
        for (Vertex x : b) {
          for (Vertex v : q.lift[x]) ids.push_back(sub.to_original[v]);
        }
        lifted.branch_sets.push_back(VertexSet::from_unsorted(std::move(ids)));
      }
      result.tag = SepTag::Minor;
      result.model = std::move(lifted);
      result.note = inner.note;
      return result;
    }
    if (inner.tag == SepTag::Indeterminate || inner.separator.empty()) {
      result.tag = SepTag::Indeterminate;
      result.note = inner.note.empty() ? "quotient separator made no progress" : inner.note;
      break;
    }
    for (Vertex x : inner.separator) {
      for (Vertex v : q.lift[x]) removed[sub.to_original[v]] = 1;
    }
  }
  result.separator = VertexSet::from_mask(removed);
  return result;
}

}  // namespace minorsep
