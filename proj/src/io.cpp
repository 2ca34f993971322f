#include "bfgp/io.hpp"

#include <algorithm>
#include <sstream>

#include "bfgp/butterfly.hpp"
#include "bfgp/error.hpp"

namespace bfgp {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::parse_error, what);
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object()) bad("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

int require_int(const Json& doc, const char* key) {
  const Json& v = require(doc, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<VertexId> id_list(const Json& arr, const std::string& where) {
  if (!arr.is_array()) bad(where + " must be an array");
  std::vector<VertexId> ids;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) bad(where + " must contain integers");
    ids.push_back(v.get<VertexId>());
  }
  return ids;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    bad("line " + std::to_string(line) + ", column " + std::to_string(column) +
        " (offset " + std::to_string(e.byte) + "): " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json graph_to_json(const Graph& g) {
  Json doc;
  const auto& tag = g.family();
  doc["family"] = family_name(tag.family);
  if (tag.family == Family::butterfly) doc["r"] = tag.param;
  if (tag.family == Family::cycle || tag.family == Family::path) {
    doc["n"] = tag.param;
  }
  doc["num_vertices"] = g.num_vertices();
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
  doc["edges"] = std::move(edges);
  if (tag.family == Family::butterfly) {
    const int r = tag.param;
    Json labels = Json::array();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto lbl = label_of(g, v);
      labels.push_back(
          {{"id", v}, {"level", lbl.level}, {"row", row_string(lbl.row, r)}});
    }
    doc["labels"] = std::move(labels);
  }
  return doc;
}

Graph graph_from_json(const Json& doc) {
  const Json& fam = require(doc, "family");
  if (!fam.is_string()) bad("field 'family' must be a string");
  const std::string family = fam.get<std::string>();
  const int n = require_int(doc, "num_vertices");
  if (n < 0) bad("num_vertices must be non-negative");

  const Json& arr = require(doc, "edges");
  if (!arr.is_array()) bad("field 'edges' must be an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      bad("edges[" + std::to_string(i) + "] must be a pair of integers");
    }
    const int u = e[0].get<int>(), v = e[1].get<int>();
    if (u >= v) bad("edges[" + std::to_string(i) + "] must satisfy u < v");
    edges.push_back({u, v});
  }

  Graph g;
  try {
    g = Graph::from_edges(n, edges);
  } catch (const Error& e) {
    bad(e.what());
  }

  auto expect_same = [&](const Graph& generated) {
    if (generated.num_vertices() != g.num_vertices() ||
        generated.edges() != g.edges()) {
      bad("edges do not match the " + generated.ref() + " generator");
    }
    return generated;
  };
  try {
    if (family == "butterfly") {
      const int r = require_int(doc, "r");
      Graph built = expect_same(build_butterfly(r));
      if (auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array() || it->size() != static_cast<std::size_t>(n)) {
          bad("labels must list every vertex");
        }
        for (const auto& rec : *it) {
          const int id = require_int(rec, "id");
          const int level = require_int(rec, "level");
          const Json& row = require(rec, "row");
          if (!row.is_string()) bad("label row must be a string");
          if (!built.contains(id) ||
              id_of(built, {level, parse_row(row.get<std::string>(), r)}) != id) {
            bad("label for vertex " + std::to_string(id) +
                " disagrees with the canonical encoding");
          }
        }
      }
      return built;
    }
    if (family == "cycle") return expect_same(build_cycle(require_int(doc, "n")));
    if (family == "path") return expect_same(build_path(require_int(doc, "n")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    bad(e.what());
  }
  if (family != "custom") bad("unknown family '" + family + "'");
  return g;
}

std::string export_graph_json(const Graph& g) { return dump(graph_to_json(g)); }

Graph import_graph(std::string_view text) {
  return graph_from_json(parse_json(text));
}

std::string export_graph_dot(const Graph& g) {
  const bool bf = g.family().family == Family::butterfly;
  auto name = [&](VertexId v) {
    if (!bf) return std::to_string(v);
    auto lbl = label_of(g, v);
    return "L" + std::to_string(lbl.level) + "_" +
           row_string(lbl.row, g.family().param);
  };
  std::ostringstream out;
  out << "graph \"" << g.ref() << "\" {\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << "  " << name(v);
    if (bf) out << " [label=\"" << format_label(label_of(g, v), g.family().param) << "\"]";
    out << ";\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << name(e.first) << " -- " << name(e.second) << ";\n";
  }
  out << "}\n";
  return out.str();
}

Json vertex_set_to_json(const VertexSet& s) {
  Json doc;
  doc["graph_ref"] = s.graph_ref;
  doc["ids"] = s.members;
  doc["provenance"] = to_string(s.provenance);
  return doc;
}

VertexSet vertex_set_from_json(const Json& doc) {
  const Json& ref = require(doc, "graph_ref");
  if (!ref.is_string()) bad("graph_ref must be a string");
  Provenance prov = Provenance::user;
  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_string()) bad("provenance must be a string");
    try {
      prov = parse_provenance(it->get<std::string>());
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  try {
    return VertexSet::make(ref.get<std::string>(),
                           id_list(require(doc, "ids"), "ids"), prov);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    bad(e.what());
  }
}

Json witness_to_json(const GpWitness& w) {
  Json doc;
  doc["status"] = w.verified ? "verified-general-position" : "violation";
  if (w.violation) {
    doc["triple"] = {{"first", w.violation->first},
                     {"middle", w.violation->middle},
                     {"last", w.violation->last}};
  } else {
    doc["triple"] = nullptr;
  }
  return doc;
}

Json solve_result_to_json(const SolveResult& r) {
  Json doc;
  doc["best_set"] = vertex_set_to_json(r.best_set);
  doc["size"] = r.size;
  doc["optimal"] = r.optimal;
  doc["nodes_explored"] = r.nodes_explored;
  doc["budget_exhausted"] = r.budget_exhausted;
  return doc;
}

Json cover_to_json(const CycleCover& c) {
  Json doc;
  doc["graph_ref"] = c.graph_ref;
  doc["kind"] = to_string(c.kind);
  doc["cycles"] = c.cycles;
  return doc;
}

CycleCover cover_from_json(const Json& doc) {
  const Json& ref = require(doc, "graph_ref");
  if (!ref.is_string()) bad("graph_ref must be a string");
  const Json& kind = require(doc, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  CycleCover c;
  c.graph_ref = ref.get<std::string>();
  try {
    c.kind = parse_cover_kind(kind.get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
  const Json& cycles = require(doc, "cycles");
  if (!cycles.is_array()) bad("cycles must be an array");
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    c.cycles.push_back(id_list(cycles[i], "cycles[" + std::to_string(i) + "]"));
  }
  return c;
}

Json cover_report_to_json(const CoverReport& r) {
  auto flag = [](const std::optional<bool>& f) -> Json {
    return f ? Json(*f) : Json(nullptr);
  };
  Json doc;
  doc["passes"] = r.passes();
  Json flags;
  flags["sequences_valid"] = r.sequences_valid;
  flags["lengths_ok"] = flag(r.lengths_ok);
  flags["count_ok"] = flag(r.count_ok);
  flags["edge_disjoint"] = flag(r.edge_disjoint);
  flags["edge_partition"] = flag(r.edge_partition);
  flags["all_isometric"] = r.all_isometric;
  flags["level0_pairs_ok"] = flag(r.level0_pairs_ok);
  flags["incidence_ok"] = flag(r.incidence_ok);
  flags["vertex_cover"] = r.vertex_cover;
  doc["flags"] = std::move(flags);
  if (r.first_failure) {
    doc["first_failure"] = {{"check", r.first_failure->check},
                            {"index", r.first_failure->index},
                            {"detail", r.first_failure->detail}};
  } else {
    doc["first_failure"] = nullptr;
  }
  doc["incidence"] = r.incidence;
  return doc;
}

}  // namespace bfgp
