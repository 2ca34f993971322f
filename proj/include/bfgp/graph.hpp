#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bfgp {

using VertexId = int;

/// Unordered edge stored with first < second.
struct Edge {
  VertexId first;
  VertexId second;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Family { butterfly, cycle, path, custom };

/// Describes where a graph came from. `param` is r for butterflies, n for
/// cycles and paths, unused for custom graphs.
struct FamilyTag {
  Family family = Family::custom;
  int param = 0;

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

const char* family_name(Family family);

/// Short stable reference such as "butterfly(3)" or "cycle(8)"; used as the
/// graph_ref of sets and covers.
std::string graph_ref(const FamilyTag& tag, int num_vertices);

/// Immutable undirected simple graph on vertex ids 0..n-1.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes the edge list. Throws invalid_parameter on
  /// self-loops, duplicates or out-of-range endpoints.
  static Graph from_edges(int num_vertices, std::vector<Edge> edges,
                          FamilyTag tag = {});

  int num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Sorted by (first, second).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted ascending.
  std::span<const VertexId> neighbors(VertexId v) const;
  int degree(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  bool contains(VertexId v) const noexcept {
    return v >= 0 && v < num_vertices_;
  }

  const FamilyTag& family() const noexcept { return tag_; }
  std::string ref() const { return graph_ref(tag_, num_vertices_); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_ &&
           a.tag_ == b.tag_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  FamilyTag tag_;
};

Graph build_cycle(int n);
Graph build_path(int n);

/// Single BFS component test; the empty graph counts as connected.
bool is_connected(const Graph& g);

}  // namespace bfgp
