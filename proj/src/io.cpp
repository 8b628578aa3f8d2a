#include "minorsep/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "minorsep/errors.hpp"

namespace minorsep {
namespace {

using nlohmann::json;

// Next line that is neither blank nor a comment; false at end of stream.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    return true;
  }
  return false;
}

std::uint64_t parse_id(std::istringstream& fields, std::size_t lineno, const char* what) {
  std::string tok;
  if (!(fields >> tok)) throw InputError("line " + std::to_string(lineno) + ": missing " + what);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size() || tok[0] == '-') {
    throw InputError("line " + std::to_string(lineno) + ": '" + tok + "' is not a nonnegative integer");
  }
  return v;
}

void expect_end(std::istringstream& fields, std::size_t lineno) {
  std::string extra;
  if (fields >> extra) throw InputError("line " + std::to_string(lineno) + ": unexpected '" + extra + "'");
}

// Reads `<keyword> <count>`.
std::uint64_t read_header(std::istream& in, const char* keyword, std::size_t& lineno) {
  std::string line;
  if (!next_line(in, line, lineno)) throw InputError(std::string("empty input, expected '") + keyword + "' header");
  std::istringstream fields(line);
  std::string key;
  fields >> key;
  if (key != keyword) throw InputError("line " + std::to_string(lineno) + ": expected '" + keyword + "' header");
  const std::uint64_t count = parse_id(fields, lineno, "count");
  expect_end(fields, lineno);
  return count;
}

json tree_to_json(const WTree& t) {
  json parent = json::array(), dist = json::array();
  for (Vertex p : t.parent) parent.push_back(p == kNoVertex ? json(-1) : json(p));
  for (Distance d : t.dist) dist.push_back(d == kUnreached ? json(-1) : json(d));
  return {{"parent", parent}, {"dist", dist}};
}

WTree tree_from_json(const json& j) {
  std::vector<Vertex> parent;
  std::vector<Distance> dist;
  for (const auto& p : j.at("parent")) parent.push_back(p.is_number_unsigned() ? p.get<Vertex>() : kNoVertex);
  for (const auto& d : j.at("dist")) dist.push_back(d.is_number_unsigned() ? d.get<Distance>() : kUnreached);
  if (parent.size() != dist.size()) throw InputError("trace tree has mismatched parent/dist lengths");
  return WTree::from_parents(std::move(parent), std::move(dist));
}

}  // namespace

Graph read_edge_list(std::istream& in, std::optional<std::size_t> max_edges) {
  return read_edge_list_prefix(in, [&](std::size_t) { return max_edges; });
}

Graph read_edge_list_prefix(std::istream& in,
                            const std::function<std::optional<std::size_t>(std::size_t n)>& limit) {
  std::size_t lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) throw InputError("empty graph input");
  std::istringstream header(line);
  std::string p;
  header >> p;
  if (p != "p") throw InputError("line " + std::to_string(lineno) + ": expected 'p <n> <m>'");
  const std::uint64_t n = parse_id(header, lineno, "n");
  const std::uint64_t m = parse_id(header, lineno, "m");
  expect_end(header, lineno);
  const std::optional<std::size_t> max_edges = limit(n);
  const std::uint64_t want = max_edges ? std::min<std::uint64_t>(*max_edges, m) : m;
  std::vector<Edge> edges;
  edges.reserve(want);
  while (edges.size() < want && next_line(in, line, lineno)) {
    std::istringstream fields(line);
    const std::uint64_t u = parse_id(fields, lineno, "endpoint");
    const std::uint64_t v = parse_id(fields, lineno, "endpoint");
    expect_end(fields, lineno);
    if (u >= n || v >= n) throw InputError("line " + std::to_string(lineno) + ": vertex out of range for n=" + std::to_string(n));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.size() < want) {
    throw InputError("header promises " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  if (!max_edges && next_line(in, line, lineno)) {
    throw InputError("line " + std::to_string(lineno) + ": more edges than the header's m=" + std::to_string(m));
  }
  return Graph::from_edges(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

VertexSet read_separator(std::istream& in) {
  std::size_t lineno = 0;
  const std::uint64_t size = read_header(in, "separator", lineno);
  std::vector<Vertex> ids;
  std::string line;
  while (ids.size() < size && next_line(in, line, lineno)) {
    std::istringstream fields(line);
    ids.push_back(static_cast<Vertex>(parse_id(fields, lineno, "vertex id")));
    expect_end(fields, lineno);
  }
  if (ids.size() != size) throw InputError("separator header promises " + std::to_string(size) + " ids");
  VertexSet s = VertexSet::from_unsorted(ids);
  if (s.size() != size) throw InputError("separator lists a vertex twice");
  return s;
}

void write_separator(std::ostream& out, const VertexSet& s) {
  out << "separator " << s.size() << "\n";
  for (Vertex v : s) out << v << "\n";
}

MinorModel read_minor(std::istream& in) {
  std::size_t lineno = 0;
  const std::uint64_t h = read_header(in, "minor", lineno);
  MinorModel m;
  std::string line;
  // Branch sets are never empty, so blank lines carry no information.
  while (m.branch_sets.size() < h && next_line(in, line, lineno)) {
    std::istringstream fields(line);
    std::vector<Vertex> ids;
    std::uint64_t v = 0;
    while (fields >> v) ids.push_back(static_cast<Vertex>(v));
    if (!fields.eof()) throw InputError("line " + std::to_string(lineno) + ": bad vertex id");
    m.branch_sets.push_back(VertexSet::from_unsorted(std::move(ids)));
  }
  if (m.branch_sets.size() != h) throw InputError("minor header promises " + std::to_string(h) + " branch sets");
  return m;
}

void write_minor(std::ostream& out, const MinorModel& m) {
  out << "minor " << m.order() << "\n";
  for (const VertexSet& b : m.branch_sets) {
    bool first = true;
    for (Vertex v : b) {
      out << (first ? "" : " ") << v;
      first = false;
    }
    out << "\n";
  }
}

Rational parse_rational(const std::string& text) {
  auto digits = [&](const std::string& part) {
    if (part.empty() || part.size() > 18 || part.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("'" + text + "' is not a fraction");
    }
    return static_cast<u128>(std::stoull(part));
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const u128 den = digits(text.substr(slash + 1));
    if (den == 0) throw InputError("'" + text + "' has a zero denominator");
    return Rational::make(digits(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    u128 den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = dot == 0 ? "0" : text.substr(0, dot);
    return Rational::make(digits(whole) * den + digits(frac), den);
  }
  return Rational::make(digits(text), 1);
}

Graph read_graph_file(const std::string& path, std::optional<std::size_t> max_edges) {
  if (path == "-") return read_edge_list(std::cin, max_edges);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in, max_edges);
}

void write_text_file(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trace_to_json(const RunTrace& trace, int indent) {
  json j;
  j["n"] = trace.n;
  j["h"] = trace.h;
  j["delta"] = trace.delta;
  j["profile"] = trace.profile.to_text();
  json its = json::array();
  for (const IterationRecord& r : trace.iterations) {
    json it{{"t", r.t},
            {"separator_size", r.separator_size},
            {"core_size", r.core_size},
            {"root", r.root == kNoVertex ? json(nullptr) : json(r.root)},
            {"total_weight", r.total_weight},
            {"weight_checksum", r.weight_checksum},
            {"tree_size", r.tree_size}};
    if (!r.weights.empty()) it["weights"] = r.weights;
    its.push_back(std::move(it));
  }
  j["iterations"] = std::move(its);
  if (!trace.trees.empty()) {
    json trees = json::array();
    for (const WTree& t : trace.trees) trees.push_back(tree_to_json(t));
    j["trees"] = std::move(trees);
  }
  if (!trace.final_weights.empty()) j["final_weights"] = trace.final_weights;
  return j.dump(indent) + "\n";
}

RunTrace trace_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunTrace t;
    t.n = j.at("n").get<std::size_t>();
    t.h = j.at("h").get<std::size_t>();
    t.delta = j.at("delta").get<std::uint64_t>();
    t.profile = ConstantsProfile::from_text(j.at("profile").get<std::string>(), "trace");
    for (const auto& it : j.at("iterations")) {
      IterationRecord r;
      r.t = it.at("t").get<std::size_t>();
      r.separator_size = it.at("separator_size").get<std::size_t>();
      r.core_size = it.at("core_size").get<std::size_t>();
      r.root = it.at("root").is_null() ? kNoVertex : it.at("root").get<Vertex>();
      r.total_weight = it.at("total_weight").get<std::uint64_t>();
      r.weight_checksum = it.at("weight_checksum").get<std::uint64_t>();
      r.tree_size = it.at("tree_size").get<std::size_t>();
      if (it.contains("weights")) r.weights = it.at("weights").get<std::vector<std::uint64_t>>();
      t.iterations.push_back(std::move(r));
    }
    if (j.contains("trees")) {
      for (const auto& tj : j.at("trees")) t.trees.push_back(tree_from_json(tj));
    }
    if (j.contains("final_weights")) t.final_weights = j.at("final_weights").get<std::vector<std::uint64_t>>();
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed trace: ") + e.what());
  }
}

}  // namespace minorsep
