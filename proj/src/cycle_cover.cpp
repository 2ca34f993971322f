#include "bfgp/cycle_cover.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "bfgp/butterfly.hpp"
#include "bfgp/error.hpp"

namespace bfgp {

const char* to_string(CoverKind kind) {
  return kind == CoverKind::cycle ? "cycle-cover" : "path-cover";
}

CoverKind parse_cover_kind(const std::string& text) {
  if (text == "cycle-cover") return CoverKind::cycle;
  if (text == "path-cover") return CoverKind::path;
  throw Error(ErrorCode::invalid_parameter, "unknown cover kind '" + text + "'");
}

bool CoverReport::passes() const {
  auto ok = [](const std::optional<bool>& f) { return f.value_or(true); };
  return sequences_valid && all_isometric && vertex_cover && ok(lengths_ok) &&
         ok(count_ok) && ok(edge_disjoint) && ok(edge_partition) &&
         ok(level0_pairs_ok) && ok(incidence_ok);
}

namespace {

void fail(CoverReport& report, std::string check, int index,
          std::string detail) {
  if (!report.first_failure) {
    report.first_failure =
        CoverFailure{std::move(check), index, std::move(detail)};
  }
}

std::vector<Edge> sequence_edges(const CycleCover& cover,
                                 const std::vector<VertexId>& seq) {
  std::vector<Edge> out;
  const std::size_t len = seq.size();
  const std::size_t steps = cover.kind == CoverKind::cycle ? len : len - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    auto [a, b] = std::minmax(seq[i], seq[(i + 1) % len]);
    out.push_back({a, b});
  }
  return out;
}

struct CommonChecks {
  CoverReport report;
  std::vector<char> valid;  // sequence i is a genuine cycle/path of g
  std::optional<CoverFailure> validity_failure;
  std::optional<CoverFailure> isometry_failure;
};

// Structural validity, isometry, incidence and vertex cover. Failures are
// returned separately so each verifier can order them by its check list.
CommonChecks verify_common(const Graph& g, const DistanceMatrix& dm,
                           const CycleCover& cover) {
  if (cover.cycles.empty()) {
    throw Error(ErrorCode::invalid_cover, "cover has no sequences");
  }
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    if (cover.cycles[i].empty()) {
      throw Error(ErrorCode::invalid_cover,
                  "sequence " + std::to_string(i) + " is empty");
    }
    for (VertexId v : cover.cycles[i]) {
      if (!g.contains(v)) {
        throw Error(ErrorCode::invalid_cover,
                    "sequence " + std::to_string(i) +
                        " has out-of-range vertex " + std::to_string(v));
      }
    }
  }

  CommonChecks out;
  CoverReport& report = out.report;
  report.incidence.assign(g.num_vertices(), 0);
  out.valid.assign(cover.cycles.size(), 0);

  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    const auto& seq = cover.cycles[i];
    const int index = static_cast<int>(i);
    std::string problem;
    try {
      if (cover.kind == CoverKind::cycle) {
        auto iso = check_isometric_cycle(g, dm, seq);
        if (!iso.isometric) {
          problem = "pair (" + std::to_string(iso.violation->first) + ", " +
                    std::to_string(iso.violation->second) +
                    ") is closer in the graph than along the cycle";
        }
      } else if (!is_isometric_path(g, dm, seq)) {
        problem = "path is longer than the distance between its ends";
      }
      out.valid[i] = 1;
    } catch (const Error& e) {
      report.sequences_valid = false;
      if (!out.validity_failure) {
        out.validity_failure = CoverFailure{"sequences_valid", index, e.what()};
      }
    }
    if (!problem.empty()) {
      report.all_isometric = false;
      if (!out.isometry_failure) {
        out.isometry_failure = CoverFailure{"all_isometric", index, problem};
      }
    }
    if (out.valid[i]) {
      for (VertexId v : seq) ++report.incidence[v];
    }
  }
  report.vertex_cover = std::all_of(report.incidence.begin(),
                                    report.incidence.end(),
                                    [](int c) { return c > 0; });
  return out;
}

void note_vertex_cover(const Graph& g, CoverReport& report) {
  if (report.vertex_cover) return;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (report.incidence[v] == 0) {
      fail(report, "vertex_cover", -1,
           "vertex " + std::to_string(v) + " is not covered");
      return;
    }
  }
}

}  // namespace

CoverReport verify_cover(const Graph& g, const DistanceMatrix& dm,
                         const CycleCover& cover) {
  CommonChecks common = verify_common(g, dm, cover);
  CoverReport report = std::move(common.report);
  report.first_failure = common.validity_failure;
  if (!report.first_failure) report.first_failure = common.isometry_failure;
  note_vertex_cover(g, report);
  return report;
}

CoverReport verify_bf_cover(const Graph& g, const DistanceMatrix& dm,
                            const CycleCover& cover) {
  const int r = butterfly_dimension(g);
  if (r < 2) {
    throw Error(ErrorCode::invalid_parameter,
                "cover verification needs r >= 2, got " + std::to_string(r));
  }
  if (cover.kind != CoverKind::cycle) {
    throw Error(ErrorCode::invalid_cover, "butterfly cover must be a cycle cover");
  }
  // first_failure follows check order: validity, lengths, count, edges,
  // isometry, level-0 pairs, incidence, vertex cover.
  CommonChecks common = verify_common(g, dm, cover);
  CoverReport report = std::move(common.report);
  const std::vector<char>& valid = common.valid;
  report.first_failure = common.validity_failure;

  const std::size_t expected_len = static_cast<std::size_t>(4 * r);
  report.lengths_ok = true;
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    if (cover.cycles[i].size() != expected_len) {
      report.lengths_ok = false;
      fail(report, "lengths_ok", static_cast<int>(i),
           "length " + std::to_string(cover.cycles[i].size()) + ", expected " +
               std::to_string(expected_len));
    }
  }

  const std::size_t expected_count = std::size_t{1} << (r - 1);
  report.count_ok = cover.cycles.size() == expected_count;
  if (!*report.count_ok) {
    fail(report, "count_ok", -1,
         std::to_string(cover.cycles.size()) + " cycles, expected " +
             std::to_string(expected_count));
  }

  const auto& edges = g.edges();
  std::vector<int> owner(edges.size(), -1);
  report.edge_disjoint = true;
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    if (!valid[i]) continue;
    for (const Edge& e : sequence_edges(cover, cover.cycles[i])) {
      auto slot = std::lower_bound(edges.begin(), edges.end(), e) - edges.begin();
      if (owner[slot] >= 0) {
        report.edge_disjoint = false;
        fail(report, "edge_disjoint", static_cast<int>(i),
             "edge (" + std::to_string(e.first) + ", " +
                 std::to_string(e.second) + ") already used by cycle " +
                 std::to_string(owner[slot]));
      } else {
        owner[slot] = static_cast<int>(i);
      }
    }
  }
  const bool all_used =
      std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; });
  report.edge_partition = *report.edge_disjoint && all_used &&
                          report.sequences_valid;
  if (!*report.edge_partition && *report.edge_disjoint) {
    auto it = std::find(owner.begin(), owner.end(), -1);
    std::string detail = "some cycle is not a cycle of the graph";
    if (it != owner.end()) {
      const Edge& e = edges[it - owner.begin()];
      detail = "edge (" + std::to_string(e.first) + ", " +
               std::to_string(e.second) + ") is not covered";
    }
    fail(report, "edge_partition", -1, detail);
  }

  if (common.isometry_failure && !report.first_failure) {
    report.first_failure = common.isometry_failure;
  }

  report.level0_pairs_ok = true;
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    const auto bottom = std::count_if(
        cover.cycles[i].begin(), cover.cycles[i].end(),
        [&](VertexId v) { return label_of(g, v).level == 0; });
    if (bottom != 2) {
      report.level0_pairs_ok = false;
      fail(report, "level0_pairs_ok", static_cast<int>(i),
           std::to_string(bottom) + " level-0 vertices, expected 2");
    }
  }

  report.incidence_ok = true;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const int want = g.degree(v) / 2;
    if (report.incidence[v] != want) {
      report.incidence_ok = false;
      fail(report, "incidence_ok", -1,
           "vertex " + std::to_string(v) + " lies on " +
               std::to_string(report.incidence[v]) + " cycles, expected " +
               std::to_string(want));
      break;
    }
  }

  note_vertex_cover(g, report);
  return report;
}

std::vector<VertexId> butterfly_candidate_cycle(int r, std::uint32_t low0,
                                                std::uint32_t high) {
  const std::uint32_t low1 = low0 ^ row_bit(r, r);
  const std::uint32_t high1 = high ^ row_bit(r, 1);
  const std::uint32_t full = (std::uint32_t{1} << r) - 1;
  // Monotone path from [from,0] to [to,r] sits on row
  // to[1..w] from[w+1..r] at level w.
  auto row_at = [&](std::uint32_t from, std::uint32_t to, int level) {
    const std::uint32_t top = full & ~(full >> level);
    return (to & top) | (from & ~top);
  };
  std::vector<VertexId> cycle;
  cycle.reserve(4 * r);
  for (int w = 0; w <= r; ++w) cycle.push_back(butterfly_id(r, w, row_at(low0, high, w)));
  for (int w = r - 1; w >= 0; --w) cycle.push_back(butterfly_id(r, w, row_at(low1, high, w)));
  for (int w = 1; w <= r; ++w) cycle.push_back(butterfly_id(r, w, row_at(low1, high1, w)));
  for (int w = r - 1; w >= 1; --w) cycle.push_back(butterfly_id(r, w, row_at(low0, high1, w)));
  return cycle;
}

CycleCover construct_bf_cycle_cover(const Graph& g, const DistanceMatrix& dm,
                                    std::uint64_t node_budget,
                                    CoverSearchStats* stats) {
  const int r = butterfly_dimension(g);
  if (r < 2) {
    throw Error(ErrorCode::invalid_parameter,
                "cycle cover needs r >= 2, got " + std::to_string(r));
  }
  if (node_budget == 0) {
    throw Error(ErrorCode::invalid_parameter, "node budget must be positive");
  }
  const int pairs = 1 << (r - 1);
  std::vector<std::uint32_t> bottoms, tops;  // representative rows
  for (std::uint32_t row = 0; row < (1u << r); ++row) {
    if (!test_row_bit(row, r, r)) bottoms.push_back(row);
    if (!test_row_bit(row, r, 1)) tops.push_back(row);
  }

  const auto& edges = g.edges();
  auto edge_slots = [&](const std::vector<VertexId>& cycle) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      auto [a, b] = std::minmax(cycle[i], cycle[(i + 1) % cycle.size()]);
      slots.push_back(std::lower_bound(edges.begin(), edges.end(), Edge{a, b}) -
                      edges.begin());
    }
    return slots;
  };

  // 0 = unknown, 1 = isometric, 2 = rejected.
  std::vector<char> isometric(static_cast<std::size_t>(pairs) * pairs, 0);
  std::vector<char> edge_used(edges.size(), 0);
  std::vector<char> top_used(pairs, 0);
  std::vector<int> assignment(pairs, -1);
  std::uint64_t nodes = 0;
  bool exhausted = false;

  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == pairs) return true;
    for (int j = 0; j < pairs; ++j) {
      if (top_used[j]) continue;
      if (nodes >= node_budget) {
        exhausted = true;
        return false;
      }
      ++nodes;
      auto cycle = butterfly_candidate_cycle(r, bottoms[i], tops[j]);
      char& iso = isometric[static_cast<std::size_t>(i) * pairs + j];
      if (iso == 0) iso = check_isometric_cycle(g, dm, cycle).isometric ? 1 : 2;
      if (iso == 2) continue;
      auto slots = edge_slots(cycle);
      if (std::any_of(slots.begin(), slots.end(),
                      [&](std::size_t s) { return edge_used[s]; })) {
        continue;
      }
      for (auto s : slots) edge_used[s] = 1;
      top_used[j] = 1;
      assignment[i] = j;
      if (place(i + 1)) return true;
      for (auto s : slots) edge_used[s] = 0;
      top_used[j] = 0;
      assignment[i] = -1;
      if (exhausted) return false;
    }
    return false;
  };

  const bool found = place(0);
  if (stats) stats->nodes = nodes;
  if (!found) {
    if (exhausted) {
      throw Error(ErrorCode::inconclusive,
                  "cycle cover search for BF(" + std::to_string(r) +
                      ") ran out of budget after " + std::to_string(nodes) +
                      " placements");
    }
    throw Error(ErrorCode::invalid_cover,
                "no edge partition exists within the candidate family");
  }

  CycleCover cover{g.ref(), CoverKind::cycle, {}};
  for (int i = 0; i < pairs; ++i) {
    cover.cycles.push_back(
        butterfly_candidate_cycle(r, bottoms[i], tops[assignment[i]]));
  }
  const CoverReport report = verify_bf_cover(g, dm, cover);
  if (!report.passes()) {
    throw Error(ErrorCode::invalid_cover,
                "constructed cover failed verification: " +
                    report.first_failure->check);
  }
  return cover;
}

GpBounds gp_upper_bounds(const CycleCover& cover, const CoverReport& report) {
  if (!report.passes()) {
    throw Error(ErrorCode::unverified_cover,
                "refusing to derive a bound from a cover that failed " +
                    (report.first_failure ? report.first_failure->check
                                          : std::string("verification")));
  }
  const int k = static_cast<int>(cover.cycles.size());
  GpBounds bounds;
  if (cover.kind == CoverKind::cycle) {
    bounds.from_ic = 3 * k;
  } else {
    bounds.from_ip = 2 * k;
  }
  return bounds;
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> isometric_cycle_masks(const Graph& g,
                                        const DistanceMatrix& dm) {
  const int n = g.num_vertices();
  const int longest = 2 * static_cast<int>(dm.diameter()) + 1;
  std::vector<Mask> masks;
  std::vector<VertexId> path;
  std::vector<char> on_path(n, 0);

  for (int len = 3; len <= std::min(longest, n); ++len) {
    const int half = len / 2;
    std::function<void(VertexId)> extend = [&](VertexId u) {
      const int k = static_cast<int>(path.size());
      if (k == len) {
        if (!g.has_edge(u, path.front()) || path[1] > path.back()) return;
        if (check_isometric_cycle(g, dm, path).isometric) {
          Mask m = 0;
          for (VertexId v : path) m |= Mask{1} << v;
          masks.push_back(m);
        }
        return;
      }
      for (VertexId w : g.neighbors(u)) {
        if (w <= path.front() || on_path[w]) continue;
        // Every stretch of at most len/2 steps must be a geodesic.
        bool ok = true;
        for (int j = 1; j <= std::min(half, k) && ok; ++j) {
          ok = dm(path[k - j], w) == static_cast<DistanceMatrix::Distance>(j);
        }
        if (!ok) continue;
        path.push_back(w);
        on_path[w] = 1;
        extend(w);
        on_path[w] = 0;
        path.pop_back();
      }
    };
    for (VertexId s = 0; s < n; ++s) {
      path.assign(1, s);
      on_path[s] = 1;
      extend(s);
      on_path[s] = 0;
    }
  }
  return masks;
}

std::vector<Mask> geodesic_masks(const Graph& g, const DistanceMatrix& dm) {
  const int n = g.num_vertices();
  std::vector<Mask> masks;
  for (VertexId v = 0; v < n; ++v) masks.push_back(Mask{1} << v);
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) {
      if (!dm.reachable(s, t)) continue;
      std::function<void(VertexId, Mask)> walk = [&](VertexId u, Mask m) {
        if (u == t) {
          masks.push_back(m);
          return;
        }
        for (VertexId w : g.neighbors(u)) {
          if (dm(s, w) == dm(s, u) + 1 && dm(w, t) + 1 == dm(u, t)) {
            walk(w, m | (Mask{1} << w));
          }
        }
      };
      walk(s, Mask{1} << s);
    }
  }
  return masks;
}

std::vector<Mask> maximal_only(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Mask> out;
  for (Mask m : masks) {
    bool dominated = std::any_of(masks.begin(), masks.end(), [&](Mask o) {
      return o != m && (o & m) == m;
    });
    if (!dominated) out.push_back(m);
  }
  return out;
}

}  // namespace

std::optional<int> min_cover_exact(const Graph& g, const DistanceMatrix& dm,
                                   CoverKind kind, int size_cap) {
  const int n = g.num_vertices();
  if (n > kMaxExactCoverVertices) {
    throw Error(ErrorCode::too_large,
                "exact cover limited to " +
                    std::to_string(kMaxExactCoverVertices) + " vertices, got " +
                    std::to_string(n));
  }
  if (size_cap < 0) {
    throw Error(ErrorCode::invalid_parameter, "size cap must be non-negative");
  }
  if (n == 0) return 0;

  const std::vector<Mask> sets = maximal_only(
      kind == CoverKind::cycle ? isometric_cycle_masks(g, dm)
                               : geodesic_masks(g, dm));
  const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  Mask coverable = 0;
  for (Mask m : sets) coverable |= m;
  if (coverable != all) return std::nullopt;

  int best = size_cap + 1;
  std::function<void(Mask, int)> cover = [&](Mask covered, int used) {
    if (covered == all) {
      best = std::min(best, used);
      return;
    }
    if (used + 1 >= best) return;
    // Branch on the uncovered vertex with the fewest covering sets.
    int pick = -1;
    int options = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (covered & (Mask{1} << v)) continue;
      int c = 0;
      for (Mask m : sets) c += (m >> v) & 1;
      if (pick < 0 || c < options) {
        pick = v;
        options = c;
      }
    }
    for (Mask m : sets) {
      if ((m >> pick) & 1) cover(covered | m, used + 1);
    }
  };
  cover(0, 0);
  if (best > size_cap) return std::nullopt;
  return best;
}

}  // namespace bfgp
