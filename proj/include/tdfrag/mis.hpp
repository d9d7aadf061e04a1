#pragma once

#include <span>
#include <vector>

#include "tdfrag/bitset.hpp"
#include "tdfrag/graph.hpp"

namespace tdfrag {

// Exact independence number of g[vertices].
//
// Branch and bound in the style of Tomita's MCQ run on the complement: the
// candidate set is greedily partitioned into cliques of g, and the number of
// cliques bounds how many more vertices an independent set can gain. Bags in
// this library have small independence number, so the search stays shallow.
inline int independence_number(const Graph& g, std::span<const Vertex> vertices) {
  const int k = static_cast<int>(vertices.size());
  if (k == 0) return 0;
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(vertices[static_cast<std::size_t>(i)])] = i;

  std::vector<DynBitset> adj(static_cast<std::size_t>(k), DynBitset(k));
  std::vector<DynBitset> nonadj(static_cast<std::size_t>(k), DynBitset(k));
  for (int i = 0; i < k; ++i) {
    for (Vertex w : g.neighbors(vertices[static_cast<std::size_t>(i)])) {
      int j = local[static_cast<std::size_t>(w)];
      if (j >= 0) adj[static_cast<std::size_t>(i)].set(j);
    }
    for (int j = 0; j < k; ++j)
      if (j != i && !adj[static_cast<std::size_t>(i)].test(j)) nonadj[static_cast<std::size_t>(i)].set(j);
  }

  int best = 0;
  auto expand = [&](auto&& self, DynBitset cand, int size) -> void {
    std::vector<int> order, color;
    DynBitset uncolored = cand;
    int c = 0;
    while (uncolored.any()) {
      ++c;
      DynBitset q = uncolored;
      for (int v = q.first(); v != -1; v = q.next(v + 1)) {
        q &= adj[static_cast<std::size_t>(v)];  // class stays a clique of g
        uncolored.reset(v);
        order.push_back(v);
        color.push_back(c);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + color[static_cast<std::size_t>(i)] <= best) return;
      int v = order[static_cast<std::size_t>(i)];
      DynBitset next = cand;
      next &= nonadj[static_cast<std::size_t>(v)];
      if (!next.any()) {
        if (size + 1 > best) best = size + 1;
      } else {
        self(self, std::move(next), size + 1);
      }
      cand.reset(v);
    }
  };

  DynBitset all(k);
  for (int i = 0; i < k; ++i) all.set(i);
  expand(expand, all, 0);
  return best;
}

inline int independence_number(const Graph& g) {
  VertexSet all(static_cast<std::size_t>(g.size()));
  for (Vertex v = 0; v < g.size(); ++v) all[static_cast<std::size_t>(v)] = v;
  return independence_number(g, all);
}

}  // namespace tdfrag
