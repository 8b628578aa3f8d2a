// Command-line front end: one binary, one subcommand per library operation.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "minorsep/bench.hpp"
#include "minorsep/dense.hpp"
#include "minorsep/errors.hpp"
#include "minorsep/generate.hpp"
#include "minorsep/invariants.hpp"
#include "minorsep/io.hpp"
#include "minorsep/kpr.hpp"
#include "minorsep/separator.hpp"
#include "minorsep/verify.hpp"
#include "minorsep/wbfs.hpp"

using namespace minorsep;
using nlohmann::json;

namespace {

constexpr int kInvalid = 1;
constexpr int kError = 2;

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

WeightFn load_weights(const std::string& path, std::size_t n, std::uint64_t uniform) {
  if (path.empty()) return WeightFn::uniform(n, uniform);
  std::istringstream in(read_text_file(path));
  std::vector<std::uint64_t> w;
  std::uint64_t x = 0;
  while (in >> x) w.push_back(x);
  if (!in.eof()) throw InputError("weights file holds a non-integer token");
  if (w.size() != n) throw InputError("weights file has " + std::to_string(w.size()) + " entries, graph has " + std::to_string(n));
  return WeightFn(std::move(w));
}

std::string emit_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (!path.empty()) write_text_file(path, text);
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced separators and clique minors in minor-free graphs"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "minorsep 1.0");

  // gen
  std::string family, out_path = "-";
  std::uint64_t a = 0, b = 0, n = 0, m = 0, d = 0, seed = 1;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("family", family, "grid | grid_torus | path | cycle | star | complete | random_gnm | random_regular")->required();
  gen->add_option("--a", a, "rows (grid families)");
  gen->add_option("--b", b, "columns (grid families)");
  gen->add_option("--n", n, "vertex count");
  gen->add_option("--m", m, "edge count (random_gnm)");
  gen->add_option("--d", d, "degree (random_regular)");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out_path, "output file, - for stdout");

  // wbfs
  std::string graph_path, weights_path;
  std::vector<Vertex> sources{0};
  std::uint64_t uniform_weight = 1;
  Distance radius = kUnlimited;
  auto* wbfs_cmd = app.add_subcommand("wbfs", "Vertex-weighted BFS tree: `v parent dist subtree_size` lines");
  wbfs_cmd->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  wbfs_cmd->add_option("--source", sources, "source vertices")->expected(1, -1);
  wbfs_cmd->add_option("--weights", weights_path, "file with one weight per vertex");
  wbfs_cmd->add_option("--weight", uniform_weight, "uniform weight when --weights is absent");
  wbfs_cmd->add_option("--radius", radius, "truncation radius");
  wbfs_cmd->add_option("--out", out_path, "output file, - for stdout");

  // kpr
  std::uint64_t delta = 0;
  std::size_t h = 0;
  std::string emit_minor;
  auto* kpr_cmd = app.add_subcommand("kpr", "One KPR decomposition");
  kpr_cmd->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  kpr_cmd->add_option("--delta", delta, "layer width")->required();
  kpr_cmd->add_option("--h", h, "number of rounds / clique order")->required();
  kpr_cmd->add_option("--weights", weights_path, "file with one weight per vertex");
  kpr_cmd->add_option("--weight", uniform_weight, "uniform weight when --weights is absent");
  kpr_cmd->add_option("--emit-minor", emit_minor, "write the K_h model here when one is found");

  // sep
  std::string alpha_text = "2/3", profile_name, trace_path;
  bool no_dense_guard = false, full_trace = false, on_component = false;
  auto* sep = app.add_subcommand("sep", "Balanced separator or K_h minor");
  sep->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  sep->add_option("--h", h, "excluded clique order")->required();
  sep->add_option("--alpha", alpha_text, "balance, as p/q or a decimal");
  sep->add_option("--profile", profile_name, "paper | desk | profile file (default $MINORSEP_PROFILE, then paper)");
  sep->add_option("--seed", seed, "random seed");
  sep->add_flag("--no-dense-guard", no_dense_guard, "skip the dense-graph shortcut");
  sep->add_flag("--bfs-on-component", on_component, "grow each tree inside the current core only");
  sep->add_option("--trace", trace_path, "JSON trace of every loop run");
  sep->add_flag("--full-trace", full_trace, "include weights and trees in the trace");
  sep->add_option("--out", out_path, "separator or minor output, - for stdout");

  // minor
  std::size_t t = 0, attempts = 1;
  auto* minor = app.add_subcommand("minor", "K_t minor from a stochastic connector");
  minor->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  minor->add_option("--t", t, "clique order")->required();
  minor->add_option("--seed", seed, "random seed");
  minor->add_option("--attempts", attempts, "independent sampling attempts");
  minor->add_option("--trace", trace_path, "read trees from a `sep --full-trace` file");
  minor->add_option("--profile", profile_name, "profile used to recompute trees without --trace");
  minor->add_option("--out", out_path, "minor output, - for stdout");

  // dense-minor
  std::size_t dense_d = 0;
  auto* dense = app.add_subcommand("dense-minor", "K_h minor of a graph with at least d*n edges");
  dense->add_option("graph", graph_path, "edge-list file, - for stdin")->required();
  dense->add_option("--h", h, "clique order")->required();
  dense->add_option("--d", dense_d, "degree parameter, default 100 h^2");
  dense->add_option("--out", out_path, "minor output, - for stdout");

  // verify-sep / verify-minor / check-invariants
  std::string object_path, json_path;
  auto* vsep = app.add_subcommand("verify-sep", "Exit 0 iff the separator is alpha-balanced");
  vsep->add_option("graph", graph_path, "edge-list file")->required();
  vsep->add_option("separator", object_path, "separator file")->required();
  vsep->add_option("--alpha", alpha_text, "balance, as p/q or a decimal");
  vsep->add_option("--json", json_path, "write the report here");

  auto* vminor = app.add_subcommand("verify-minor", "Exit 0 iff the branch sets form a clique minor model");
  vminor->add_option("graph", graph_path, "edge-list file")->required();
  vminor->add_option("minor", object_path, "minor file")->required();
  vminor->add_option("--json", json_path, "write the report here");

  auto* inv = app.add_subcommand("check-invariants", "Exit 0 iff every loop invariant holds in a full trace");
  inv->add_option("trace", object_path, "trace file from `sep --full-trace`")->required();
  inv->add_option("--json", json_path, "write the report here");

  // bench
  std::vector<std::size_t> sizes;
  std::size_t trials = 3;
  auto* bench = app.add_subcommand("bench", "Median timings of find_balanced_separator over growing sizes");
  bench->add_option("--family", family, "grid | grid_torus | path | cycle | random_gnm | random_regular")->default_val("grid");
  bench->add_option("--sizes", sizes, "increasing vertex counts")->required()->expected(1, -1);
  bench->add_option("--h", h, "excluded clique order")->default_val(5);
  bench->add_option("--profile", profile_name, "paper | desk | profile file");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--trials", trials, "trials per size");
  bench->add_option("--json", json_path, "JSON-lines output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::map<std::string, std::uint64_t> params;
      for (auto [key, value, opt] : {std::tuple{"a", a, "--a"}, {"b", b, "--b"}, {"n", n, "--n"}, {"m", m, "--m"}, {"d", d, "--d"}}) {
        if (gen->count(opt) > 0) params[key] = value;
      }
      params["seed"] = seed;
      const Graph g = generate(family, params);
      write_text_file(out_path, render([&](std::ostream& o) { write_edge_list(o, g); }));
      return 0;
    }
    if (*wbfs_cmd) {
      const Graph g = read_graph_file(graph_path);
      const WeightFn w = load_weights(weights_path, g.num_vertices(), uniform_weight);
      const WTree tree = weighted_bfs(g, w, sources, radius);
      write_text_file(out_path, render([&](std::ostream& o) {
        for (Vertex v : tree.members) {
          o << v << " " << (tree.parent[v] == kNoVertex ? std::string("-1") : std::to_string(tree.parent[v])) << " "
            << tree.dist[v] << " " << tree.subtree_size[v] << "\n";
        }
      }));
      return 0;
    }
    if (*kpr_cmd) {
      const Graph g = read_graph_file(graph_path);
      const WeightFn w = load_weights(weights_path, g.num_vertices(), uniform_weight);
      const KprOutcome outcome = kpr(g, w, delta, h);
      std::cout << "outcome " << (outcome.tag == KprTag::Separated ? "separated" : "minor") << "\n"
                << "separator " << outcome.separator.size() << "\n"
                << "core " << outcome.core.size() << "\n"
                << "rounds";
      for (const VertexSet& cut : outcome.round_cuts) std::cout << " " << cut.size();
      std::cout << "\n";
      if (!emit_minor.empty() && outcome.model) {
        write_text_file(emit_minor, render([&](std::ostream& o) { write_minor(o, *outcome.model); }));
      }
      return 0;
    }
    if (*sep) {
      const Graph g = read_graph_file(graph_path);
      const ConstantsProfile profile = ConstantsProfile::resolve(profile_name);
      SepOptions options;
      options.dense_guard = !no_dense_guard;
      options.snapshots = full_trace;
      options.bfs_on_component = on_component;
      const SepResult r = find_balanced_separator(g, h, parse_rational(alpha_text), profile, seed, options);
      if (!trace_path.empty()) {
        json all = json::array();
        for (const RunTrace& tr : r.traces) all.push_back(json::parse(trace_to_json(tr)));
        write_text_file(trace_path, all.dump() + "\n");
      }
      std::cerr << "result " << to_string(r.tag) << " rounds " << r.rounds << " balance " << r.balance.str()
                << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
      if (r.tag == SepTag::Minor) {
        write_text_file(out_path, render([&](std::ostream& o) { write_minor(o, *r.model); }));
        return 0;
      }
      write_text_file(out_path, render([&](std::ostream& o) { write_separator(o, r.separator); }));
      return r.tag == SepTag::Separator ? 0 : kInvalid;
    }
    if (*minor) {
      const Graph g = read_graph_file(graph_path);
      std::vector<WTree> trees;
      if (!trace_path.empty()) {
        const json all = json::parse(read_text_file(trace_path));
        const json& first = all.is_array() ? all.at(0) : all;
        trees = trace_from_json(first.dump()).trees;
        if (trees.empty()) throw InputError("trace holds no trees; rerun sep with --full-trace");
      } else {
        SepOptions options;
        options.snapshots = true;
        options.dense_guard = false;
        const SepResult once = find_separator_once(g, t, ConstantsProfile::resolve(profile_name), seed, options);
        trees = once.traces.front().trees;
      }
      const FindMinorResult fm = find_minor(g, trees, t, seed, attempts);
      if (!fm.model) {
        std::cerr << "no model after " << fm.attempts << " attempt(s) over " << trees.size() << " trees\n";
        return kInvalid;
      }
      write_text_file(out_path, render([&](std::ostream& o) { write_minor(o, *fm.model); }));
      return 0;
    }
    if (*dense) {
      const std::size_t dd = dense_d > 0 ? dense_d : 100 * h * h;
      std::ifstream file;
      std::istream* in = &std::cin;
      if (graph_path != "-") {
        file.open(graph_path);
        if (!file) throw InputError("cannot open " + graph_path);
        in = &file;
      }
      const Graph g = read_edge_list_prefix(*in, [&](std::size_t nv) { return std::optional<std::size_t>(dd * nv); });
      const MinorModel model = minor_in_dense(g, h, dd);
      write_text_file(out_path, render([&](std::ostream& o) { write_minor(o, model); }));
      return 0;
    }
    if (*vsep) {
      const Graph g = read_graph_file(graph_path);
      std::istringstream in(read_text_file(object_path));
      const VertexSet s = read_separator(in);
      const Rational alpha = parse_rational(alpha_text);
      const SepReport r = verify_separator(g, s, alpha);
      std::cout << emit_json({{"valid", r.valid},
                              {"separator_size", r.separator_size},
                              {"max_component", r.max_component},
                              {"max_component_fraction", r.max_component_fraction.str()},
                              {"alpha", alpha.str()},
                              {"components", r.component_sizes.size()}},
                             json_path);
      return r.valid ? 0 : kInvalid;
    }
    if (*vminor) {
      const Graph g = read_graph_file(graph_path);
      std::istringstream in(read_text_file(object_path));
      const MinorModel model = read_minor(in);
      const ModelReport r = verify_minor_model(g, model);
      std::cout << emit_json({{"valid", r.valid}, {"order", model.order()}, {"violation", r.violation}}, json_path);
      return r.valid ? 0 : kInvalid;
    }
    if (*inv) {
      const json all = json::parse(read_text_file(object_path));
      json runs = json::array();
      bool ok = true;
      for (const json& one : all.is_array() ? all : json::array({all})) {
        const InvariantReport rep = check_invariants(trace_from_json(one.dump()));
        ok = ok && rep.all_pass();
        json rows = json::array();
        for (const IterationCheck& row : rep.iterations) {
          json status = json::array(), detail = json::array();
          for (int i = 0; i < 5; ++i) {
            status.push_back(to_string(row.status[i]));
            detail.push_back(row.detail[i]);
          }
          rows.push_back({{"t", row.t}, {"status", status}, {"detail", detail}});
        }
        runs.push_back({{"all_pass", rep.all_pass()}, {"iterations", rows}});
      }
      std::cout << emit_json({{"all_pass", ok}, {"runs", runs}}, json_path);
      return ok ? 0 : kInvalid;
    }
    if (*bench) {
      const BenchSummary s = run_bench(family, sizes, h, ConstantsProfile::resolve(profile_name), seed, trials);
      std::string lines;
      for (const BenchRecord& r : s.records) lines += to_json_line(r) + "\n";
      if (!json_path.empty()) write_text_file(json_path, lines);
      std::cout << lines;
      for (std::size_t i = 0; i < s.time_ratios.size(); ++i) {
        std::cout << "# step " << i + 1 << ": time ratio " << s.time_ratios[i] << ", size ratio " << s.size_ratios[i]
                  << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kError;
  }
  return 0;
}
