#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "bfgp/cycle_cover.hpp"
#include "bfgp/genpos.hpp"
#include "bfgp/graph.hpp"

namespace bfgp {

// Canonical JSON: ordered_json keeps keys in the order written here, ids are
// sorted, and dump() uses two-space indentation. Byte-identical output for
// identical values.
using Json = nlohmann::ordered_json;

Json graph_to_json(const Graph& g);
/// Rebuilds and checks the graph; butterfly/cycle/path files must match the
/// generator exactly. Throws parse_error.
Graph graph_from_json(const Json& doc);

std::string export_graph_json(const Graph& g);
/// Parse errors carry "line L, column C" in the message.
Graph import_graph(std::string_view text);

/// Undirected DOT; butterfly vertices are named L<level>_<row>.
std::string export_graph_dot(const Graph& g);

Json vertex_set_to_json(const VertexSet& s);
VertexSet vertex_set_from_json(const Json& doc);

Json witness_to_json(const GpWitness& w);
/// Deterministic fields only; timing lives in the run manifest.
Json solve_result_to_json(const SolveResult& r);

Json cover_to_json(const CycleCover& c);
CycleCover cover_from_json(const Json& doc);
Json cover_report_to_json(const CoverReport& r);

/// Parses text into JSON, mapping syntax errors to parse_error with line and
/// column.
Json parse_json(std::string_view text);

/// 2-space indented dump with trailing newline.
std::string dump(const Json& doc);

}  // namespace bfgp
