#include "minorsep/generate.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "minorsep/errors.hpp"
#include "minorsep/rng.hpp"

namespace minorsep {
namespace {

Vertex vid(std::size_t x) { return static_cast<Vertex>(x); }

void check_size(std::size_t n) {
  if (n >= kNoVertex) throw ParameterError("graph too large for 32-bit vertex ids");
}

}  // namespace

Graph grid(std::size_t a, std::size_t b) {
  check_size(a * b);
  std::vector<Edge> edges;
  edges.reserve(2 * a * b);
  for (std::size_t r = 0; r < a; ++r) {
    for (std::size_t c = 0; c < b; ++c) {
      const std::size_t v = r * b + c;
      if (c + 1 < b) edges.emplace_back(vid(v), vid(v + 1));
      if (r + 1 < a) edges.emplace_back(vid(v), vid(v + b));
    }
  }
  return Graph::from_edges(a * b, edges);
}

Graph grid_torus(std::size_t a, std::size_t b) {
  if (a < 3 || b < 3) throw ParameterError("grid_torus needs both sides >= 3");
  check_size(a * b);
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < a; ++r) {
    for (std::size_t c = 0; c < b; ++c) {
      const std::size_t v = r * b + c;
      edges.emplace_back(vid(v), vid(r * b + (c + 1) % b));
      edges.emplace_back(vid(v), vid(((r + 1) % a) * b + c));
    }
  }
  return Graph::from_edges(a * b, edges);
}

Graph path(std::size_t n) {
  check_size(n);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(vid(v), vid(v + 1));
  return Graph::from_edges(n, edges);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw ParameterError("cycle needs n >= 3");
  check_size(n);
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.emplace_back(vid(v), vid((v + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph star(std::size_t n) {
  check_size(n);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(0, vid(v));
  return Graph::from_edges(n, edges);
}

Graph complete(std::size_t n) {
  check_size(n);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(vid(u), vid(v));
  }
  return Graph::from_edges(n, edges);
}

Graph random_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_size(n);
  const std::uint64_t max_edges = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  if (m > max_edges) throw ParameterError("random_gnm: too many edges for n");
  Rng rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, n == 0 ? 0 : vid(n - 1));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (seen.insert((std::uint64_t{u} << 32) | v).second) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  check_size(n);
  if ((n * d) % 2 != 0 || d >= std::max<std::size_t>(n, 1)) {
    throw ParameterError("random_regular needs n*d even and d < n");
  }
  Rng rng(seed);
  std::vector<Vertex> points;
  for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), d, vid(v));
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      Vertex u = points[i], v = points[i + 1];
      if (u == v) simple = false;
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph::from_edges(n, edges);
  }
  throw ParameterError("random_regular: no simple pairing found");
}

Graph generate(const std::string& family, const std::map<std::string, std::uint64_t>& params) {
  auto get = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) throw ParameterError("family " + family + " needs parameter " + key);
    return static_cast<std::size_t>(it->second);
  };
  auto seed = [&] {
    const auto it = params.find("seed");
    return it == params.end() ? std::uint64_t{0} : it->second;
  };
  if (family == "grid") return grid(get("a"), get("b"));
  if (family == "grid_torus") return grid_torus(get("a"), get("b"));
  if (family == "path") return path(get("n"));
  if (family == "cycle") return cycle(get("n"));
  if (family == "star") return star(get("n"));
  if (family == "complete") return complete(get("n"));
  if (family == "random_gnm") return random_gnm(get("n"), get("m"), seed());
  if (family == "random_regular") return random_regular(get("n"), get("d"), seed());
  throw ParameterError("unknown graph family '" + family + "'");
}

}  // namespace minorsep
