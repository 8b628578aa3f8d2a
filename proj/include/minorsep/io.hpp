#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "minorsep/graph.hpp"
#include "minorsep/minor_model.hpp"
#include "minorsep/separator.hpp"

namespace minorsep {

/// Edge list: `p <n> <m>`, then m lines `<u> <v>`, `#` lines ignored.
/// With `max_edges`, stops after that many edge lines and skips the count check.
Graph read_edge_list(std::istream& in, std::optional<std::size_t> max_edges = {});
/// Same format; `limit(n)` is consulted once the header is read.
Graph read_edge_list_prefix(std::istream& in,
                            const std::function<std::optional<std::size_t>(std::size_t n)>& limit);
void write_edge_list(std::ostream& out, const Graph& g);

/// `separator <size>` followed by one id per line.
VertexSet read_separator(std::istream& in);
void write_separator(std::ostream& out, const VertexSet& s);

/// `minor <h>` followed by h lines of space-separated ids.
MinorModel read_minor(std::istream& in);
void write_minor(std::ostream& out, const MinorModel& m);

/// "p/q", an integer, or a decimal such as "0.5"; InputError otherwise.
Rational parse_rational(const std::string& text);

/// "-" means stdin / stdout.
Graph read_graph_file(const std::string& path, std::optional<std::size_t> max_edges = {});
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// JSON with one record per iteration (t, |S_t|, |C*_t|, W_t, ...); weights,
/// trees and final weights appear only when the trace holds them.
std::string trace_to_json(const RunTrace& trace, int indent = -1);
RunTrace trace_from_json(const std::string& text);

}  // namespace minorsep
