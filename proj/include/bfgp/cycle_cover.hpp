#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfgp/geodesy.hpp"
#include "bfgp/graph.hpp"

namespace bfgp {

enum class CoverKind { cycle, path };

const char* to_string(CoverKind kind);
CoverKind parse_cover_kind(const std::string& text);

/// Vertex sequences claimed to be isometric cycles (in cyclic order) or
/// isometric paths of one graph.
struct CycleCover {
  std::string graph_ref;
  CoverKind kind = CoverKind::cycle;
  std::vector<std::vector<VertexId>> cycles;
};

struct CoverFailure {
  std::string check;
  int index = -1;  // offending sequence, -1 when the check is global
  std::string detail;
};

/// Result of a cover verification. Flags that do not apply to the verifier
/// that produced the report are left empty.
struct CoverReport {
  bool sequences_valid = true;
  std::optional<bool> lengths_ok;
  std::optional<bool> count_ok;
  std::optional<bool> edge_disjoint;
  std::optional<bool> edge_partition;
  bool all_isometric = true;
  std::optional<bool> level0_pairs_ok;
  std::optional<bool> incidence_ok;
  bool vertex_cover = true;

  std::optional<CoverFailure> first_failure;
  /// Number of sequences containing each vertex.
  std::vector<int> incidence;

  bool passes() const;
};

/// Every sequence is a cycle/path of g, isometric, and together they cover
/// V(g). Throws invalid_cover for an empty cover or out-of-range ids.
CoverReport verify_cover(const Graph& g, const DistanceMatrix& dm,
                         const CycleCover& cover);

/// Butterfly checks, in order: sequence validity, every length 4r,
/// 2^{r-1} cycles, edge partition of E(BF(r)), isometry, exactly two level-0
/// vertices per cycle, and incidence 1 on degree-2 / 2 on degree-4 vertices.
CoverReport verify_bf_cover(const Graph& g, const DistanceMatrix& dm,
                            const CycleCover& cover);

/// The four-path cycle through level-0 rows {low0, low0 ^ bit r} and level-r
/// rows {high, high ^ bit 1}, listed from [low0, 0] upwards. Row arguments
/// must have bit r (resp. bit 1) clear.
std::vector<VertexId> butterfly_candidate_cycle(int r, std::uint32_t low0,
                                                std::uint32_t high);

struct CoverSearchStats {
  std::uint64_t nodes = 0;
};

/// Edge partition of BF(r) into 2^{r-1} isometric cycles of length 4r.
///
/// Each cycle joins a level-0 pair differing only in bit r with a level-r
/// pair differing only in bit 1 through the four unique monotone paths. The
/// search assigns level-0 pairs in row order, trying level-r pairs in row
/// order, and backtracks on edge clashes or non-isometric candidates. The
/// result has already passed verify_bf_cover.
///
/// Throws inconclusive when `node_budget` candidate placements are spent and
/// invalid_cover if the candidate family admits no partition.
CycleCover construct_bf_cycle_cover(const Graph& g, const DistanceMatrix& dm,
                                    std::uint64_t node_budget = 10'000'000,
                                    CoverSearchStats* stats = nullptr);

struct GpBounds {
  std::optional<int> from_ic;  // 3 * cycles
  std::optional<int> from_ip;  // 2 * paths
};

/// gp(G) <= 3 ic(G) and gp(G) <= 2 ip(G) applied to a verified cover. Throws
/// unverified_cover if the report does not pass.
GpBounds gp_upper_bounds(const CycleCover& cover, const CoverReport& report);

inline constexpr int kMaxExactCoverVertices = 16;

/// Minimum number of isometric cycles (or paths) covering V(g), found by
/// enumeration plus exact set cover. Empty if no cover of at most
/// `size_cap` sequences exists. Throws too_large above
/// kMaxExactCoverVertices vertices.
std::optional<int> min_cover_exact(const Graph& g, const DistanceMatrix& dm,
                                   CoverKind kind, int size_cap);

}  // namespace bfgp
