#include "bfgp/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bfgp/butterfly.hpp"
#include "bfgp/cycle_cover.hpp"
#include "bfgp/error.hpp"
#include "bfgp/genpos.hpp"
#include "bfgp/io.hpp"

namespace bfgp::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

namespace {

struct Options {
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 200'000'000;
  std::optional<double> time_budget;
  bool quiet = false;

  std::string family;
  std::optional<int> r;
  std::optional<int> n;
  std::string graph_path;
  std::string set_path;
  std::string cover_path;
  std::string pool = "all";
  std::string pool_path;
  std::string r_range = "2..5";
  int exact_max_r = 4;
};

// Thrown by command bodies to finish with a given exit code and payload.
struct Finished {
  int code;
  Json result;
};

class Run {
 public:
  Run(Options& opts, std::ostream& err) : opts_(opts), err_(err) {}

  Json manifest_inputs = Json::array();
  Json manifest_outputs = Json::array();

  void note(const std::string& line) {
    if (!opts_.quiet) err_ << line << "\n";
  }

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::invalid_parameter, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    manifest_inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
    return text;
  }

  Json read_json(const std::string& path) {
    try {
      return parse_json(read_file(path));
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  }

  /// Writes to --out when given; returns true if written.
  bool write_artifact(const std::string& text) {
    if (opts_.out_path.empty()) return false;
    std::ofstream out(opts_.out_path, std::ios::binary);
    if (!out) {
      throw Error(ErrorCode::invalid_parameter, "cannot write " + opts_.out_path);
    }
    out << text;
    manifest_outputs.push_back(
        {{"path", opts_.out_path}, {"sha256", sha256_hex(text)}});
    return true;
  }

  Graph load_graph() {
    if (!opts_.graph_path.empty()) {
      if (opts_.r) {
        throw Error(ErrorCode::invalid_parameter, "give either --graph or --r");
      }
      try {
        return graph_from_json(read_json(opts_.graph_path));
      } catch (const Error& e) {
        throw Error(e.code(), opts_.graph_path + ": " + e.what());
      }
    }
    if (opts_.r) return build_butterfly(*opts_.r);
    throw Error(ErrorCode::invalid_parameter, "a graph is required: --graph FILE or --r R");
  }

  // -- commands ------------------------------------------------------------

  Finished generate() {
    Graph g;
    if (opts_.family == "butterfly") {
      if (!opts_.r) throw Error(ErrorCode::invalid_parameter, "butterfly needs --r");
      g = build_butterfly(*opts_.r);
    } else if (opts_.family == "cycle" || opts_.family == "path") {
      if (!opts_.n) {
        throw Error(ErrorCode::invalid_parameter, opts_.family + " needs --n");
      }
      g = opts_.family == "cycle" ? build_cycle(*opts_.n) : build_path(*opts_.n);
    } else {
      throw Error(ErrorCode::invalid_parameter, "unknown family '" + opts_.family + "'");
    }
    const std::string text =
        opts_.format == "dot" ? export_graph_dot(g) : export_graph_json(g);
    Json result;
    result["graph_ref"] = g.ref();
    result["num_vertices"] = g.num_vertices();
    result["num_edges"] = g.num_edges();
    result["format"] = opts_.format;
    if (!write_artifact(text)) {
      if (opts_.format == "dot") {
        result["dot"] = text;
      } else {
        result["graph"] = graph_to_json(g);
      }
    }
    note(g.ref() + ": " + std::to_string(g.num_vertices()) + " vertices, " +
         std::to_string(g.num_edges()) + " edges");
    return {kSuccess, result};
  }

  Finished gpset_construct() {
    if (!opts_.r) throw Error(ErrorCode::invalid_parameter, "construct needs --r");
    const VertexSet s = construct_bf_gp_set(*opts_.r);
    const Graph g = build_butterfly(*opts_.r);
    const auto dm = all_pairs_distances(g);
    const GpWitness w = verify_general_position(g, dm, s);
    Json result;
    result["set"] = vertex_set_to_json(s);
    result["size"] = s.size();
    result["witness"] = witness_to_json(w);
    write_artifact(dump(vertex_set_to_json(s)));
    note(g.ref() + ": constructed set of size " + std::to_string(s.size()) +
         (w.verified ? ", verified" : ", NOT in general position"));
    return {w.verified ? kSuccess : kVerificationFailed, result};
  }

  Finished gpset_verify() {
    const Graph g = load_graph();
    if (opts_.set_path.empty()) {
      throw Error(ErrorCode::invalid_parameter, "verify needs --set FILE");
    }
    const VertexSet s = vertex_set_from_json(read_json(opts_.set_path));
    check_ref(s.graph_ref, g);
    const auto dm = all_pairs_distances(g);
    const GpWitness w = verify_general_position(g, dm, s);
    Json result;
    result["graph_ref"] = g.ref();
    result["size"] = s.size();
    result["witness"] = witness_to_json(w);
    write_artifact(dump(witness_to_json(w)));
    if (w.verified) {
      note("general position set of size " + std::to_string(s.size()));
    } else {
      note("violation: " + std::to_string(w.violation->middle) +
           " lies between " + std::to_string(w.violation->first) + " and " +
           std::to_string(w.violation->last));
    }
    return {w.verified ? kSuccess : kVerificationFailed, result};
  }

  Finished gpset_max() {
    const Graph g = load_graph();
    const auto dm = all_pairs_distances(g);
    SolveOptions so;
    so.node_budget = opts_.node_budget;
    if (opts_.time_budget) {
      so.time_budget = std::chrono::duration<double>(*opts_.time_budget);
    }
    if (opts_.pool == "deg2") {
      std::vector<VertexId> pool;
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 2) pool.push_back(v);
      so.pool = std::move(pool);
    } else if (opts_.pool == "file") {
      if (opts_.pool_path.empty()) {
        throw Error(ErrorCode::invalid_parameter, "--pool file needs --pool-file");
      }
      VertexSet p = vertex_set_from_json(read_json(opts_.pool_path));
      check_ref(p.graph_ref, g);
      so.pool = p.members;
    }
    const SolveResult res = max_general_position(g, dm, so);
    Json result = solve_result_to_json(res);
    result["pool"] = opts_.pool;
    result["pool_size"] = so.pool ? so.pool->size()
                                  : static_cast<std::size_t>(g.num_vertices());
    write_artifact(dump(solve_result_to_json(res)));
    manifest_extra_["solver_elapsed_seconds"] = res.elapsed.count();
    note(g.ref() + ": best size " + std::to_string(res.size) +
         (res.optimal ? " (optimal)" : " (budget exhausted)") + ", " +
         std::to_string(res.nodes_explored) + " nodes");
    return {res.optimal ? kSuccess : kInconclusive, result};
  }

  Finished cover_construct() {
    if (!opts_.r) throw Error(ErrorCode::invalid_parameter, "construct needs --r");
    const Graph g = build_butterfly(*opts_.r);
    const auto dm = all_pairs_distances(g);
    CoverSearchStats stats;
    const CycleCover cover = construct_bf_cycle_cover(g, dm, opts_.node_budget, &stats);
    const CoverReport report = verify_bf_cover(g, dm, cover);
    Json result;
    result["graph_ref"] = g.ref();
    result["cycles"] = cover.cycles.size();
    result["cycle_length"] = cover.cycles.front().size();
    result["search_nodes"] = stats.nodes;
    result["report"] = cover_report_to_json(report);
    if (!write_artifact(dump(cover_to_json(cover)))) {
      result["cover"] = cover_to_json(cover);
    }
    note(g.ref() + ": " + std::to_string(cover.cycles.size()) + " cycles of length " +
         std::to_string(cover.cycles.front().size()) +
         (report.passes() ? ", all checks pass" : ", verification FAILED"));
    return {report.passes() ? kSuccess : kVerificationFailed, result};
  }

  std::pair<CycleCover, CoverReport> load_and_verify_cover(const Graph& g,
                                                            const DistanceMatrix& dm) {
    if (opts_.cover_path.empty()) {
      throw Error(ErrorCode::invalid_parameter, "a cover file is required: --cover FILE");
    }
    CycleCover cover = cover_from_json(read_json(opts_.cover_path));
    check_ref(cover.graph_ref, g);
    CoverReport report = g.family().family == Family::butterfly &&
                                 cover.kind == CoverKind::cycle
                             ? verify_bf_cover(g, dm, cover)
                             : verify_cover(g, dm, cover);
    return {std::move(cover), std::move(report)};
  }

  Finished cover_verify() {
    const Graph g = load_graph();
    const auto dm = all_pairs_distances(g);
    auto [cover, report] = load_and_verify_cover(g, dm);
    Json result = cover_report_to_json(report);
    write_artifact(dump(result));
    note(report.passes() ? "cover verified"
                         : "cover failed: " + report.first_failure->check + " (" +
                               report.first_failure->detail + ")");
    return {report.passes() ? kSuccess : kVerificationFailed, result};
  }

  Finished cover_bounds() {
    const Graph g = load_graph();
    const auto dm = all_pairs_distances(g);
    auto [cover, report] = load_and_verify_cover(g, dm);
    Json result;
    result["graph_ref"] = g.ref();
    result["kind"] = to_string(cover.kind);
    result["size"] = cover.cycles.size();
    if (!report.passes()) {
      result["report"] = cover_report_to_json(report);
      note("refusing bounds: cover failed " + report.first_failure->check);
      return {kVerificationFailed, result};
    }
    const GpBounds b = gp_upper_bounds(cover, report);
    result["from_ic"] = b.from_ic ? Json(*b.from_ic) : Json(nullptr);
    result["from_ip"] = b.from_ip ? Json(*b.from_ip) : Json(nullptr);
    write_artifact(dump(result));
    if (b.from_ic) note("gp <= " + std::to_string(*b.from_ic) + " (3 x isometric cycles)");
    if (b.from_ip) note("gp <= " + std::to_string(*b.from_ip) + " (2 x isometric paths)");
    return {kSuccess, result};
  }

  Finished report() {
    auto [lo, hi] = parse_range(opts_.r_range);
    Json rows = Json::array();
    int code = kSuccess;
    std::ostringstream table;
    table << " r  |S|  verified  cover  3*ic  exact\n";
    for (int r = lo; r <= hi; ++r) {
      const Graph g = build_butterfly(r);
      const auto dm = all_pairs_distances(g);
      const VertexSet s = construct_bf_gp_set(r);
      const bool verified = verify_general_position(g, dm, s).verified;
      if (!verified) code = std::max(code, int{kVerificationFailed});

      Json row;
      row["r"] = r;
      row["set_size"] = s.size();
      row["set_verified"] = verified;
      row["cover_size"] = nullptr;
      row["cover_verified"] = false;
      row["bound_from_ic"] = nullptr;
      try {
        const CycleCover cover = construct_bf_cycle_cover(g, dm, opts_.node_budget);
        const CoverReport rep = verify_bf_cover(g, dm, cover);
        row["cover_size"] = cover.cycles.size();
        row["cover_verified"] = rep.passes();
        if (rep.passes()) {
          row["bound_from_ic"] = *gp_upper_bounds(cover, rep).from_ic;
        } else {
          code = std::max(code, int{kVerificationFailed});
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::inconclusive) throw;
        code = std::max(code, int{kInconclusive});
      }

      row["exact_gp"] = nullptr;
      if (r <= opts_.exact_max_r) {
        SolveOptions so;
        so.node_budget = opts_.node_budget;
        if (opts_.time_budget) {
          so.time_budget = std::chrono::duration<double>(*opts_.time_budget);
        }
        const SolveResult res = max_general_position(g, dm, so);
        if (res.optimal) row["exact_gp"] = res.size;
      }
      rows.push_back(row);

      auto cell = [](const Json& j) {
        return j.is_null() ? std::string("-") : j.dump();
      };
      table << std::setw(2) << r << "  " << std::setw(4) << s.size() << "  "
            << std::setw(8) << (verified ? "yes" : "NO") << "  " << std::setw(5)
            << cell(row["cover_size"]) << "  " << std::setw(4)
            << cell(row["bound_from_ic"]) << "  " << std::setw(5)
            << cell(row["exact_gp"]) << "\n";
    }
    Json result;
    result["rows"] = rows;
    write_artifact(dump(result));
    note(table.str());
    return {code, result};
  }

  Json manifest_extra_ = Json::object();

 private:
  void check_ref(const std::string& ref, const Graph& g) {
    if (ref != g.ref()) {
      throw Error(ErrorCode::invalid_parameter,
                  "file refers to " + ref + " but the graph is " + g.ref());
    }
  }

  static std::pair<int, int> parse_range(const std::string& text) {
    auto bad = [&] {
      return Error(ErrorCode::invalid_parameter,
                   "--r expects R or LO..HI, got '" + text + "'");
    };
    try {
      auto dots = text.find("..");
      std::size_t used = 0;
      if (dots == std::string::npos) {
        int v = std::stoi(text, &used);
        if (used != text.size()) throw bad();
        return {v, v};
      }
      int lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots) throw bad();
      std::string rest = text.substr(dots + 2);
      int hi = std::stoi(rest, &used);
      if (used != rest.size() || lo > hi) throw bad();
      return {lo, hi};
    } catch (const std::logic_error&) {
      throw bad();
    }
  }

  Options& opts_;
  std::ostream& err_;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::inconclusive: return kInconclusive;
    case ErrorCode::unverified_cover: return kVerificationFailed;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options opts;

  CLI::App app{"General position sets and isometric cycle covers of butterfly networks",
               "bfgp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--out", opts.out_path, "Write the command's artifact to this file");
  app.add_option("--format", opts.format, "Graph output format")
      ->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--seed", opts.seed, "Seed for any randomized step");
  app.add_option("--node-budget", opts.node_budget, "Deterministic search node limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-budget", opts.time_budget, "Advisory wall-clock limit (seconds)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opts.quiet, "No human-readable notes on stderr");

  auto* generate = app.add_subcommand("generate", "Build a graph");
  generate->add_option("family", opts.family, "butterfly | cycle | path")->required();
  generate->add_option("--r", opts.r, "Butterfly dimension");
  generate->add_option("--n", opts.n, "Cycle/path order");

  auto graph_source = [&](CLI::App* sub) {
    sub->add_option("--graph", opts.graph_path, "Graph JSON file");
    sub->add_option("--r", opts.r, "Use BF(r) directly");
  };

  auto* gpset = app.add_subcommand("gpset", "General position sets");
  gpset->require_subcommand(1);
  auto* gp_construct = gpset->add_subcommand("construct", "Explicit large set in BF(r)");
  gp_construct->add_option("--r", opts.r, "Butterfly dimension")->required();
  auto* gp_verify = gpset->add_subcommand("verify", "Check a set for collinear triples");
  graph_source(gp_verify);
  gp_verify->add_option("--set", opts.set_path, "Vertex set JSON")->required();
  auto* gp_max = gpset->add_subcommand("max", "Exact maximum general position set");
  graph_source(gp_max);
  gp_max->add_option("--pool", opts.pool, "Candidate vertices")
      ->check(CLI::IsMember({"all", "deg2", "file"}));
  gp_max->add_option("--pool-file", opts.pool_path, "Vertex set JSON used with --pool file");

  auto* cover = app.add_subcommand("cover", "Isometric cycle covers");
  cover->require_subcommand(1);
  auto* cv_construct = cover->add_subcommand("construct", "Edge-partition cover of BF(r)");
  cv_construct->add_option("--r", opts.r, "Butterfly dimension")->required();
  auto* cv_verify = cover->add_subcommand("verify", "Replay every cover check");
  graph_source(cv_verify);
  cv_verify->add_option("--cover", opts.cover_path, "Cover JSON")->required();
  auto* cv_bounds = cover->add_subcommand("bounds", "Upper bounds on gp from a verified cover");
  graph_source(cv_bounds);
  cv_bounds->add_option("--cover", opts.cover_path, "Cover JSON")->required();

  auto* report = app.add_subcommand("report", "Summary table over a range of r");
  report->add_option("--r", opts.r_range, "R or LO..HI");
  report->add_option("--exact-max-r", opts.exact_max_r,
                     "Largest r for which the exact solver is attempted");

  std::string command;
  Json manifest;
  Json doc;
  Run run(opts, err);
  int code = kSuccess;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto* sub : app.get_subcommands()) {
      command = sub->get_name();
      for (auto* leaf : sub->get_subcommands()) command += " " + leaf->get_name();
    }
    Finished f{kSuccess, Json::object()};
    if (*generate) f = run.generate();
    else if (*gp_construct) f = run.gpset_construct();
    else if (*gp_verify) f = run.gpset_verify();
    else if (*gp_max) f = run.gpset_max();
    else if (*cv_construct) f = run.cover_construct();
    else if (*cv_verify) f = run.cover_verify();
    else if (*cv_bounds) f = run.cover_bounds();
    else if (*report) f = run.report();
    code = f.code;
    doc["command"] = command;
    doc["exit_code"] = code;
    doc["result"] = f.result;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    code = kUsage;
    doc["command"] = command;
    doc["exit_code"] = code;
    doc["error"] = {{"code", "usage"}, {"message", e.what()}};
    if (!opts.quiet) err << "usage error: " << e.what() << "\n";
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    doc["command"] = command;
    doc["exit_code"] = code;
    doc["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (!opts.quiet) err << to_string(e.code()) << ": " << e.what() << "\n";
  }

  manifest["argv"] = args;
  manifest["seed"] = opts.seed;
  manifest["node_budget"] = opts.node_budget;
  manifest["time_budget"] = opts.time_budget ? Json(*opts.time_budget) : Json(nullptr);
  manifest["inputs"] = run.manifest_inputs;
  manifest["outputs"] = run.manifest_outputs;
  manifest["result_sha256"] =
      sha256_hex(doc.contains("result") ? doc["result"].dump() : doc["error"].dump());
  for (auto& [k, v] : run.manifest_extra_.items()) manifest[k] = v;
  manifest["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  doc["manifest"] = manifest;
  out << dump(doc);
  return code;
}

}  // namespace bfgp::cli
