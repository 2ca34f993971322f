#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfgp/geodesy.hpp"
#include "bfgp/graph.hpp"

namespace bfgp {

enum class Provenance { constructed, solver_exact, solver_lower_bound, user };

const char* to_string(Provenance p);
Provenance parse_provenance(const std::string& text);

/// Candidate or certified general position set. Members are sorted and
/// distinct; `make` enforces that.
struct VertexSet {
  std::string graph_ref;
  std::vector<VertexId> members;
  Provenance provenance = Provenance::user;

  static VertexSet make(std::string graph_ref, std::vector<VertexId> ids,
                        Provenance provenance);

  std::size_t size() const noexcept { return members.size(); }
};

/// `middle` lies on a geodesic between `first` and `last`.
struct CollinearTriple {
  VertexId first;
  VertexId middle;
  VertexId last;

  friend bool operator==(const CollinearTriple&,
                         const CollinearTriple&) = default;
};

struct GpWitness {
  bool verified = true;
  std::optional<CollinearTriple> violation;
};

/// Checks every 3-subset in lexicographic order and reports the first
/// collinear one. Throws invalid_parameter for ids outside g.
GpWitness verify_general_position(const Graph& g, const DistanceMatrix& dm,
                                  const VertexSet& set);

/// Union of three families in BF(r), r >= 2:
///   level 0 rows ending in 1            (2^{r-1} vertices)
///   level r rows starting with 1        (2^{r-1} vertices)
///   level 1 rows starting and ending 0  (2^{r-2} vertices)
/// 2^r + 2^{r-2} vertices in total, no three on a common geodesic.
VertexSet construct_bf_gp_set(int r);

struct SolveOptions {
  /// Restrict the search to these vertices (distances stay those of g).
  std::optional<std::vector<VertexId>> pool;
  /// Branch-and-bound nodes; the deterministic limit.
  std::uint64_t node_budget = 200'000'000;
  /// Advisory wall-clock limit; hitting it clears `optimal`.
  std::optional<std::chrono::duration<double>> time_budget;
};

struct SolveResult {
  VertexSet best_set;
  std::size_t size = 0;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
  bool budget_exhausted = false;
};

/// Largest general position set inside the pool, by branch and bound over
/// the 3-uniform hypergraph of collinear triples.
///
/// Branching picks the candidate involved in the most live conflicts
/// (ties to the smallest id), tries including it first, then excluding it.
/// The bound subtracts one vertex per disjoint conflict found greedily:
/// pairs that would complete a collinear triple with an already chosen
/// vertex, then triples lying wholly among the candidates.
///
/// Throws invalid_parameter for an empty graph, a zero budget, or a pool that
/// is out of range or larger than kMaxSolverPool; not_connected when pool
/// vertices are mutually unreachable.
SolveResult max_general_position(const Graph& g, const DistanceMatrix& dm,
                                 const SolveOptions& options = {});

inline constexpr int kMaxSolverPool = 512;

enum class GreedyOrder { degree, id, random };

/// Scans vertices in the given order and keeps each one that does not close a
/// collinear triple. Degree order is ascending degree, ties by id.
VertexSet greedy_gp_lower_bound(const Graph& g, const DistanceMatrix& dm,
                                GreedyOrder order, std::uint64_t seed = 0);

}  // namespace bfgp
