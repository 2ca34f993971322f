#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bfgp/graph.hpp"

namespace bfgp {

/// Dense symmetric all-pairs hop-count table.
class DistanceMatrix {
 public:
  using Distance = std::uint32_t;
  static constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(int n)
      : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int size() const noexcept { return n_; }

  Distance operator()(VertexId u, VertexId v) const noexcept {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }
  Distance& at(VertexId u, VertexId v) noexcept {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }

  bool reachable(VertexId u, VertexId v) const noexcept {
    return (*this)(u, v) != kUnreachable;
  }

  /// Largest finite distance.
  Distance diameter() const noexcept;

 private:
  int n_ = 0;
  std::vector<Distance> d_;
};

/// One BFS per source.
DistanceMatrix all_pairs_distances(const Graph& g);

/// True iff y lies on some x-z geodesic: d(x,y) + d(y,z) = d(x,z).
/// Throws invalid_parameter on repeated vertices, not_connected if any pair
/// is unreachable.
bool lies_between(const DistanceMatrix& dm, VertexId x, VertexId y,
                  VertexId z);

/// True iff one of the three vertices lies between the other two.
bool is_collinear_triple(const DistanceMatrix& dm, VertexId a, VertexId b,
                         VertexId c);

/// Unchecked hot-path variant for the solver: vertices distinct, reachable.
inline bool collinear_unchecked(const DistanceMatrix& dm, VertexId a,
                                VertexId b, VertexId c) noexcept {
  const auto ab = dm(a, b), bc = dm(b, c), ac = dm(a, c);
  return ab + bc == ac || ab + ac == bc || ac + bc == ab;
}

struct CycleIsometry {
  bool isometric = true;
  /// Lexicographically first (smaller id, larger id) pair whose cycle
  /// distance differs from the graph distance.
  std::optional<std::pair<VertexId, VertexId>> violation;
};

/// Throws invalid_cycle when the sequence is not a cycle of g (too short,
/// repeated vertex, or a missing edge); the message names the first bad
/// position.
CycleIsometry check_isometric_cycle(const Graph& g, const DistanceMatrix& dm,
                                    std::span<const VertexId> cycle);

/// Geodesic test for a path of g; throws invalid_path if it is not one.
bool is_isometric_path(const Graph& g, const DistanceMatrix& dm,
                       std::span<const VertexId> path);

}  // namespace bfgp
