#include "bfgp/geodesy.hpp"

#include <algorithm>
#include <string>

#include "bfgp/error.hpp"

namespace bfgp {

DistanceMatrix::Distance DistanceMatrix::diameter() const noexcept {
  Distance best = 0;
  for (Distance d : d_) {
    if (d != kUnreachable) best = std::max(best, d);
  }
  return best;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.num_vertices();
  DistanceMatrix dm(n);
  std::vector<VertexId> queue(n);
  for (VertexId source = 0; source < n; ++source) {
    std::size_t head = 0, tail = 0;
    queue[tail++] = source;
    dm.at(source, source) = 0;
    while (head < tail) {
      VertexId u = queue[head++];
      const auto next = dm(source, u) + 1;
      for (VertexId w : g.neighbors(u)) {
        if (dm(source, w) == DistanceMatrix::kUnreachable) {
          dm.at(source, w) = next;
          queue[tail++] = w;
        }
      }
    }
  }
  return dm;
}

namespace {

void check_triple(const DistanceMatrix& dm, VertexId x, VertexId y,
                  VertexId z) {
  const int n = dm.size();
  for (VertexId v : {x, y, z}) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::invalid_parameter,
                  "vertex out of range: " + std::to_string(v));
    }
  }
  if (x == y || y == z || x == z) {
    throw Error(ErrorCode::invalid_parameter,
                "triple must have three distinct vertices");
  }
  if (!dm.reachable(x, y) || !dm.reachable(y, z) || !dm.reachable(x, z)) {
    throw Error(ErrorCode::not_connected,
                "triple spans more than one component");
  }
}

}  // namespace

bool lies_between(const DistanceMatrix& dm, VertexId x, VertexId y,
                  VertexId z) {
  check_triple(dm, x, y, z);
  return dm(x, y) + dm(y, z) == dm(x, z);
}

bool is_collinear_triple(const DistanceMatrix& dm, VertexId a, VertexId b,
                         VertexId c) {
  check_triple(dm, a, b, c);
  return collinear_unchecked(dm, a, b, c);
}

CycleIsometry check_isometric_cycle(const Graph& g, const DistanceMatrix& dm,
                                    std::span<const VertexId> cycle) {
  const std::size_t len = cycle.size();
  if (len < 3) {
    throw Error(ErrorCode::invalid_cycle, "cycle needs at least 3 vertices");
  }
  std::vector<VertexId> sorted(cycle.begin(), cycle.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < len; ++i) {
    if (!g.contains(cycle[i])) {
      throw Error(ErrorCode::invalid_cycle,
                  "vertex out of range at position " + std::to_string(i));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      auto pos = std::find(cycle.begin(), cycle.end(), sorted[i]);
      auto again = std::find(pos + 1, cycle.end(), sorted[i]);
      throw Error(ErrorCode::invalid_cycle,
                  "repeated vertex at position " +
                      std::to_string(again - cycle.begin()));
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (!g.has_edge(cycle[i], cycle[(i + 1) % len])) {
      throw Error(ErrorCode::invalid_cycle,
                  "no edge between positions " + std::to_string(i) + " and " +
                      std::to_string((i + 1) % len));
    }
  }

  CycleIsometry result;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      const std::size_t gap = j - i;
      const auto along = static_cast<DistanceMatrix::Distance>(
          std::min(gap, len - gap));
      if (dm(cycle[i], cycle[j]) != along) {
        auto pair = std::minmax(cycle[i], cycle[j]);
        std::pair<VertexId, VertexId> p{pair.first, pair.second};
        if (!result.violation || p < *result.violation) result.violation = p;
        result.isometric = false;
      }
    }
  }
  return result;
}

bool is_isometric_path(const Graph& g, const DistanceMatrix& dm,
                       std::span<const VertexId> path) {
  if (path.empty()) {
    throw Error(ErrorCode::invalid_path, "empty path");
  }
  std::vector<VertexId> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::invalid_path, "path repeats a vertex");
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.contains(path[i])) {
      throw Error(ErrorCode::invalid_path,
                  "vertex out of range at position " + std::to_string(i));
    }
    if (i + 1 < path.size() && !g.has_edge(path[i], path[i + 1])) {
      throw Error(ErrorCode::invalid_path,
                  "no edge between positions " + std::to_string(i) + " and " +
                      std::to_string(i + 1));
    }
  }
  return dm(path.front(), path.back()) == path.size() - 1;
}

}  // namespace bfgp
