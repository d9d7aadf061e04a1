#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tdfrag/graph.hpp"

namespace tdfrag {

// Conflict graph G(H): one vertex per member, i ~ j when the members share a
// vertex or an edge of `g` joins them.
inline Graph conflict_graph(const Graph& g, const SubgraphFamily& fam) {
  validate_family(g, fam);
  std::vector<std::vector<int>> owners(static_cast<std::size_t>(g.size()));
  for (std::size_t j = 0; j < fam.size(); ++j)
    for (Vertex v : fam.members[j]) owners[static_cast<std::size_t>(v)].push_back(static_cast<int>(j));

  std::vector<Edge> edges;
  std::vector<int> stamp(fam.size(), -1);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    auto mark = [&](Vertex u) {
      for (int j : owners[static_cast<std::size_t>(u)]) {
        if (j != static_cast<int>(i) && stamp[static_cast<std::size_t>(j)] != static_cast<int>(i)) {
          stamp[static_cast<std::size_t>(j)] = static_cast<int>(i);
          if (j > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), j);
        }
      }
    };
    for (Vertex v : fam.members[i]) {
      mark(v);
      for (Vertex u : g.neighbors(v)) mark(u);
    }
  }
  return build_graph(static_cast<int>(fam.size()), edges);
}

// Closed balls of radius d around every vertex, as a family on g.
inline SubgraphFamily ball_family(const Graph& g, int radius) {
  SubgraphFamily fam;
  fam.h_max = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    auto dist = bfs_distances(g, v, radius);
    VertexSet ball;
    for (Vertex u = 0; u < g.size(); ++u)
      if (dist[static_cast<std::size_t>(u)] != kUnreachable) ball.push_back(u);
    fam.h_max = std::max(fam.h_max, static_cast<int>(ball.size()));
    fam.members.push_back(std::move(ball));
  }
  return fam;
}

// Checks G^{k+2d} == G^k(H) where H_v is the radius-d ball around v.
inline bool verify_power_identity(const Graph& g, int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("k and d must be positive");
  Graph lhs = graph_power(g, k + 2 * d);
  Graph rhs = conflict_graph(graph_power(g, k), ball_family(g, d));
  return lhs == rhs;
}

inline constexpr int kDefaultTemplateCap = 3;

namespace detail {

inline bool spans_template(const Graph& g, const VertexSet& subset, const Graph& tmpl) {
  std::vector<int> perm(subset.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto tmpl_edges = tmpl.edges();
  do {
    bool ok = std::all_of(tmpl_edges.begin(), tmpl_edges.end(), [&](const Edge& e) {
      return g.adjacent(subset[static_cast<std::size_t>(perm[static_cast<std::size_t>(e.first)])],
                        subset[static_cast<std::size_t>(perm[static_cast<std::size_t>(e.second)])]);
    });
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

template <typename Visit>
void for_each_subset(int n, int size, Visit&& visit) {
  VertexSet cur;
  auto rec = [&](auto&& self, Vertex start) -> void {
    if (static_cast<int>(cur.size()) == size) {
      visit(cur);
      return;
    }
    for (Vertex v = start; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// All vertex subsets of size <= h whose induced subgraph has a spanning
// subgraph isomorphic to one of the templates. Members are listed by size,
// then lexicographically.
inline SubgraphFamily enumerate_family(const Graph& g, const std::vector<Graph>& templates, int h,
                                       int cap = kDefaultTemplateCap) {
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  if (h > cap) throw std::invalid_argument("h exceeds the template size cap");
  for (const auto& t : templates) {
    if (t.size() > h) throw std::invalid_argument("template larger than h");
    VertexSet all(static_cast<std::size_t>(t.size()));
    std::iota(all.begin(), all.end(), 0);
    if (!is_connected_subset(t, all)) throw std::invalid_argument("template is not connected");
  }
  SubgraphFamily fam;
  fam.h_max = h;
  for (int s = 1; s <= h; ++s) {
    bool any = std::any_of(templates.begin(), templates.end(), [&](const Graph& t) { return t.size() == s; });
    if (!any) continue;
    detail::for_each_subset(g.size(), s, [&](const VertexSet& subset) {
      if (!is_connected_subset(g, subset)) return;
      for (const auto& t : templates) {
        if (t.size() == s && detail::spans_template(g, subset, t)) {
          fam.members.push_back(subset);
          return;
        }
      }
    });
  }
  return fam;
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return build_graph(n, e);
}

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return build_graph(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return build_graph(n, e);
}

inline Graph complete_bipartite_graph(int a, int b) {
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
  return build_graph(a + b, e);
}

}  // namespace tdfrag
