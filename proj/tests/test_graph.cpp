#include <sstream>

#include "doctest.h"
#include "minorsep/errors.hpp"
#include "minorsep/generate.hpp"
#include "minorsep/graph.hpp"
#include "minorsep/io.hpp"

using namespace minorsep;

namespace {

std::vector<Vertex> nbrs(const Graph& g, Vertex v) {
  auto s = g.neighbors(v);
  return {s.begin(), s.end()};
}

// Checks the structural invariants directly on the raw arrays.
void check_simple(const Graph& g) {
  const auto& off = g.offsets();
  const auto& adj = g.adjacency();
  REQUIRE(off.size() == g.num_vertices() + 1);
  CHECK(adj.size() == 2 * g.num_edges());
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    CHECK(off[u] <= off[u + 1]);
    for (std::uint64_t i = off[u]; i < off[u + 1]; ++i) {
      CHECK(adj[i] != u);
      if (i > off[u]) CHECK(adj[i - 1] < adj[i]);
      CHECK(g.has_edge(adj[i], u));
    }
  }
}

}  // namespace

TEST_CASE("build_graph canonicalizes its input") {
  const std::vector<Edge> p3{{0, 1}, {1, 2}};
  const Graph path3 = build_graph(3, p3);
  CHECK(path3.num_edges() == 2);
  CHECK(nbrs(path3, 1) == std::vector<Vertex>{0, 2});

  const std::vector<Edge> messy{{0, 1}, {1, 0}, {0, 0}};
  const Graph one = build_graph(2, messy);
  CHECK(one.num_edges() == 1);
  check_simple(one);

  const Graph k5 = complete(5);
  CHECK(k5.num_edges() == 10);
  for (Vertex v = 0; v < 5; ++v) CHECK(k5.degree(v) == 4);
  check_simple(k5);

  const std::vector<Edge> bad{{0, 3}};
  CHECK_THROWS_AS(build_graph(3, bad), InputError);
}

TEST_CASE("layout does not depend on edge order") {
  std::vector<Edge> e{{3, 1}, {0, 2}, {1, 2}, {2, 3}};
  const Graph a = build_graph(4, e);
  std::reverse(e.begin(), e.end());
  const Graph b = build_graph(4, e);
  CHECK(a.offsets() == b.offsets());
  CHECK(a.adjacency() == b.adjacency());
}

TEST_CASE("weights are positive and their total is exact") {
  CHECK_THROWS_AS(WeightFn(std::vector<std::uint64_t>{1, 0}), ParameterError);
  const std::uint64_t big = std::numeric_limits<std::uint64_t>::max() / 2 + 1;
  CHECK_THROWS_AS(WeightFn(std::vector<std::uint64_t>{big, big}), ArithmeticError);
  const WeightFn w(std::vector<std::uint64_t>{3, 4, 5});
  CHECK(w.total() == 12);
  CHECK(w.max() == 5);
}

TEST_CASE("connected components") {
  const Graph p3 = path(3);
  Mask alive{1, 0, 1};
  Components c = connected_components(p3, alive);
  CHECK(c.sizes == std::vector<std::size_t>{1, 1});
  CHECK(c.label[0] == 0);
  CHECK(c.label[2] == 1);
  CHECK(c.label[1] == kNoVertex);

  CHECK(connected_components(complete(5)).sizes == std::vector<std::size_t>{5});

  Mask cyc(10, 1);
  cyc[0] = cyc[5] = 0;
  c = connected_components(cycle(10), cyc);
  CHECK(c.sizes == std::vector<std::size_t>{4, 4});
  CHECK(c.members(0) == VertexSet::from_sorted({1, 2, 3, 4}));

  // Larger component first even when it holds larger ids.
  const std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  c = connected_components(build_graph(5, e));
  CHECK(c.sizes == std::vector<std::size_t>{3, 2});
  CHECK(c.label[2] == 0);
  CHECK(c.label[0] == 1);
}

TEST_CASE("component sizes sum to the alive count") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = random_gnm(60, 50, seed);
    Mask alive(60, 1);
    std::size_t live = 60;
    for (Vertex v = 0; v < 60; v += 1 + static_cast<Vertex>(seed % 5)) {
      alive[v] = 0;
      --live;
    }
    const Components c = connected_components(g, alive);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < c.count(); ++i) {
      sum += c.sizes[i];
      if (i > 0) CHECK(c.sizes[i - 1] >= c.sizes[i]);
      CHECK(c.members(static_cast<Vertex>(i)).size() == c.sizes[i]);
    }
    CHECK(sum == live);
  }
}

TEST_CASE("delete_vertices") {
  Subgraph s = delete_vertices(path(3), VertexSet::from_sorted({1}));
  CHECK(s.graph.num_vertices() == 2);
  CHECK(s.graph.num_edges() == 0);
  CHECK(s.to_original == std::vector<Vertex>{0, 2});

  s = delete_vertices(complete(5), {});
  CHECK(s.graph.num_edges() == 10);
  CHECK(s.to_original == std::vector<Vertex>{0, 1, 2, 3, 4});

  // Middle row of a 5x5 grid.
  s = delete_vertices(grid(5, 5), VertexSet::from_sorted({10, 11, 12, 13, 14}));
  const Components c = connected_components(s.graph);
  CHECK(c.sizes == std::vector<std::size_t>{10, 10});
  CHECK(s.graph.num_edges() == 2 * (2 * 2 * 5 - 2 - 5));
}

TEST_CASE("deletion round trip keeps survivor adjacency") {
  const Graph g = random_gnm(80, 200, 4);
  const VertexSet removed = VertexSet::from_sorted({3, 7, 11, 40, 79});
  const Subgraph s = delete_vertices(g, removed);
  for (Vertex a = 0; a < s.graph.num_vertices(); ++a) {
    for (Vertex b = 0; b < s.graph.num_vertices(); ++b) {
      CHECK(s.graph.has_edge(a, b) == g.has_edge(s.to_original[a], s.to_original[b]));
    }
  }
}

TEST_CASE("contract_partition") {
  Partition p = Partition::from_parts(4, {VertexSet::from_sorted({0, 1}), VertexSet::from_sorted({2, 3})});
  Quotient q = contract_partition(path(4), p);
  CHECK(q.graph.num_vertices() == 2);
  CHECK(q.graph.num_edges() == 1);
  CHECK(q.lift[1] == VertexSet::from_sorted({2, 3}));

  std::vector<VertexSet> singles;
  for (Vertex v = 0; v < 4; ++v) singles.push_back(VertexSet::from_sorted({v}));
  q = contract_partition(complete(4), Partition::from_parts(4, singles));
  CHECK(q.graph.adjacency() == complete(4).adjacency());

  p = Partition::from_parts(6, {VertexSet::from_sorted({0, 1}), VertexSet::from_sorted({2, 3}),
                                VertexSet::from_sorted({4, 5})});
  q = contract_partition(cycle(6), p);
  CHECK(q.graph.num_edges() == 3);

  p = Partition::from_parts(4, {VertexSet::from_sorted({0, 2}), VertexSet::from_sorted({1, 3})});
  CHECK_THROWS_AS(contract_partition(path(4), p), ContractError);
  CHECK_THROWS_AS(Partition::from_parts(3, {VertexSet::from_sorted({0, 1}), VertexSet::from_sorted({1, 2})}),
                  InputError);
}

TEST_CASE("generators") {
  const Graph g = grid(3, 3);
  CHECK(g.num_vertices() == 9);
  CHECK(g.num_edges() == 12);
  const Graph s = star(5);
  CHECK(s.num_edges() == 4);
  CHECK(s.degree(0) == 4);
  const Graph r = random_regular(100, 3, 7);
  CHECK(r.num_edges() == 150);
  for (Vertex v = 0; v < 100; ++v) CHECK(r.degree(v) == 3);
  check_simple(r);
  CHECK(random_regular(100, 3, 7).adjacency() == r.adjacency());
  CHECK(random_gnm(50, 100, 9).adjacency() == random_gnm(50, 100, 9).adjacency());
  CHECK(random_gnm(50, 100, 9).num_edges() == 100);
  const Graph torus = grid_torus(4, 5);
  for (Vertex v = 0; v < 20; ++v) CHECK(torus.degree(v) == 4);
  CHECK_THROWS_AS(generate("nope", {}), ParameterError);
  CHECK(generate("grid", {{"a", 2}, {"b", 3}}).num_edges() == 7);
}

TEST_CASE("edge list round trip") {
  const Graph g = random_gnm(40, 90, 2);
  std::stringstream buf;
  write_edge_list(buf, g);
  const Graph back = read_edge_list(buf);
  CHECK(back.adjacency() == g.adjacency());

  std::istringstream commented("# header comment\np 3 2\n0 1\n# middle\n1 2\n");
  CHECK(read_edge_list(commented).num_edges() == 2);

  std::istringstream short_input("p 3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(short_input), InputError);
  std::istringstream range("p 2 1\n0 5\n");
  CHECK_THROWS_AS(read_edge_list(range), InputError);
  std::istringstream junk("p 2 1\n0 x\n");
  CHECK_THROWS_AS(read_edge_list(junk), InputError);
  std::istringstream prefix("p 4 3\n0 1\n1 2\n2 3\n");
  CHECK(read_edge_list(prefix, 2).num_edges() == 2);
}
