#include "bfgp/graph.hpp"

#include <algorithm>
#include <queue>

#include "bfgp/error.hpp"

namespace bfgp {

const char* family_name(Family family) {
  switch (family) {
    case Family::butterfly: return "butterfly";
    case Family::cycle: return "cycle";
    case Family::path: return "path";
    case Family::custom: return "custom";
  }
  return "custom";
}

std::string graph_ref(const FamilyTag& tag, int num_vertices) {
  if (tag.family == Family::custom) {
    return "custom(" + std::to_string(num_vertices) + ")";
  }
  return std::string(family_name(tag.family)) + "(" +
         std::to_string(tag.param) + ")";
}

Graph Graph::from_edges(int num_vertices, std::vector<Edge> edges,
                        FamilyTag tag) {
  if (num_vertices < 0) {
    throw Error(ErrorCode::invalid_parameter, "negative vertex count");
  }
  for (auto& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= num_vertices ||
        e.second >= num_vertices) {
      throw Error(ErrorCode::invalid_parameter,
                  "edge endpoint out of range: (" + std::to_string(e.first) +
                      ", " + std::to_string(e.second) + ")");
    }
    if (e.first == e.second) {
      throw Error(ErrorCode::invalid_parameter,
                  "self-loop at vertex " + std::to_string(e.first));
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw Error(ErrorCode::invalid_parameter,
                "duplicate edge (" + std::to_string(dup->first) + ", " +
                    std::to_string(dup->second) + ")");
  }

  Graph g;
  g.num_vertices_ = num_vertices;
  g.tag_ = tag;
  std::vector<std::size_t> degree(num_vertices, 0);
  for (const auto& e : edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  g.offsets_.assign(num_vertices + 1, 0);
  for (int v = 0; v < num_vertices; ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  }
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    g.adjacency_[fill[e.first]++] = e.second;
    g.adjacency_[fill[e.second]++] = e.first;
  }
  for (int v = 0; v < num_vertices; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v],
              g.adjacency_.begin() + g.offsets_[v + 1]);
  }
  g.edges_ = std::move(edges);
  return g;
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  if (!contains(v)) {
    throw Error(ErrorCode::invalid_parameter,
                "vertex out of range: " + std::to_string(v));
  }
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

int Graph::degree(VertexId v) const {
  return static_cast<int>(neighbors(v).size());
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v)) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph build_cycle(int n) {
  if (n < 3) {
    throw Error(ErrorCode::invalid_parameter,
                "cycle needs n >= 3, got " + std::to_string(n));
  }
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, std::move(edges), {Family::cycle, n});
}

Graph build_path(int n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_parameter,
                "path needs n >= 1, got " + std::to_string(n));
  }
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::from_edges(n, std::move(edges), {Family::path, n});
}

bool is_connected(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    VertexId u = frontier.front();
    frontier.pop();
    for (VertexId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

}  // namespace bfgp
