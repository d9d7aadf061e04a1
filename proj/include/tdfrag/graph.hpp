#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdfrag/rational.hpp"

namespace tdfrag {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // always sorted ascending, no repeats
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
  }

  int size() const { return static_cast<int>(adj_.size()); }
  const VertexSet& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m += a.size();
    return m / 2;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_graph(int n, std::span<const Edge> edges);
  std::vector<VertexSet> adj_;
};

// Builds a simple graph; duplicate edges collapse, loops and bad endpoints throw.
inline Graph build_graph(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

inline Graph build_graph(int n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

inline Graph build_graph(int n, const std::vector<Edge>& edges) {
  return build_graph(n, std::span<const Edge>(edges));
}

inline constexpr int kUnreachable = -1;

// BFS distances from `source`; unreachable vertices get kUnreachable.
// When `limit` >= 0 the search stops expanding past that depth.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source, int limit = -1) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), kUnreachable);
  std::queue<Vertex> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    int du = dist[static_cast<std::size_t>(u)];
    if (limit >= 0 && du >= limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

// Multi-source BFS: distance from each vertex to the nearest source.
inline std::vector<int> bfs_distances_from_set(const Graph& g, std::span<const Vertex> sources,
                                               int limit = -1) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), kUnreachable);
  std::queue<Vertex> frontier;
  for (Vertex s : sources) {
    if (dist[static_cast<std::size_t>(s)] == kUnreachable) {
      dist[static_cast<std::size_t>(s)] = 0;
      frontier.push(s);
    }
  }
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    int du = dist[static_cast<std::size_t>(u)];
    if (limit >= 0 && du >= limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

// G^p: u ~ v iff 1 <= dist(u, v) <= p.
inline Graph graph_power(const Graph& g, int p) {
  if (p < 1) throw std::invalid_argument("graph power must be >= 1");
  if (p == 1) return g;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.size(); ++u) {
    auto dist = bfs_distances(g, u, p);
    for (Vertex v = u + 1; v < g.size(); ++v)
      if (dist[static_cast<std::size_t>(v)] != kUnreachable) edges.emplace_back(u, v);
  }
  return build_graph(g.size(), edges);
}

// Connected components, each sorted; components ordered by smallest vertex.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.size()), -1);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (Vertex w : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(w)] == -1) {
          comp[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// Subgraph induced by a sorted vertex set, relabelled 0..k-1 in set order.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i])) {
      int j = local[static_cast<std::size_t>(w)];
      if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
    }
  return build_graph(static_cast<int>(vertices.size()), edges);
}

inline bool is_connected_subset(const Graph& g, std::span<const Vertex> vertices) {
  if (vertices.empty()) return false;
  std::vector<char> inside(static_cast<std::size_t>(g.size()), 0), seen(inside);
  for (Vertex v : vertices) inside[static_cast<std::size_t>(v)] = 1;
  std::vector<Vertex> stack{vertices.front()};
  seen[static_cast<std::size_t>(vertices.front())] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbors(u)) {
      auto wi = static_cast<std::size_t>(w);
      if (inside[wi] && !seen[wi]) {
        seen[wi] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == vertices.size();
}

// Per-index nonnegative rational weights.
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::vector<Rational> weights) : w_(std::move(weights)) {
    for (const auto& x : w_)
      if (x < 0) throw std::invalid_argument("negative weight " + format_rational(x));
  }
  static WeightMap uniform(std::size_t n, const Rational& value = 1) {
    return WeightMap(std::vector<Rational>(n, value));
  }

  std::size_t size() const { return w_.size(); }
  const Rational& operator[](std::size_t i) const { return w_[i]; }
  const std::vector<Rational>& values() const { return w_; }
  bool operator==(const WeightMap&) const = default;

 private:
  std::vector<Rational> w_;
};

// Family of connected vertex subsets of a host graph.
struct SubgraphFamily {
  std::vector<VertexSet> members;
  int h_max = 1;

  std::size_t size() const { return members.size(); }

  static SubgraphFamily singletons(int n) {
    SubgraphFamily f;
    f.members.reserve(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) f.members.push_back({v});
    return f;
  }
};

// Checks every member is non-empty, sorted, within range, connected in the
// host and no larger than h_max. Throws std::invalid_argument otherwise.
inline void validate_family(const Graph& host, const SubgraphFamily& fam) {
  for (std::size_t j = 0; j < fam.members.size(); ++j) {
    const auto& m = fam.members[j];
    auto where = " (member " + std::to_string(j) + ")";
    if (m.empty()) throw std::invalid_argument("empty family member" + where);
    if (!std::is_sorted(m.begin(), m.end()) ||
        std::adjacent_find(m.begin(), m.end()) != m.end())
      throw std::invalid_argument("family member not a sorted set" + where);
    if (m.front() < 0 || m.back() >= host.size())
      throw std::invalid_argument("family member vertex out of range" + where);
    if (static_cast<int>(m.size()) > fam.h_max)
      throw std::invalid_argument("family member larger than h_max" + where);
    if (!is_connected_subset(host, m))
      throw std::invalid_argument("family member not connected in host" + where);
  }
}

}  // namespace tdfrag
