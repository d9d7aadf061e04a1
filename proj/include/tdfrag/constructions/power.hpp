#pragma once

#include <stdexcept>

#include "tdfrag/graph.hpp"
#include "tdfrag/treedec.hpp"

namespace tdfrag {

struct PowerDecomposition {
  Graph power;  // G^{1+2d}
  TreeDecomposition td;
  Layering lay;
};

// Layered decomposition of G^{1+2d} from one of G: each bag grows to the
// vertices within distance d of it, and every 1+2d consecutive layers merge
// into one. Cell independence grows by at most a factor 1+4d.
inline PowerDecomposition power_decomposition(const Graph& g, const TreeDecomposition& td, const Layering& lay, int d) {
  if (d <= 0) throw std::invalid_argument("power_decomposition: d must be >= 1");
  require_valid(g, td);
  auto lrep = validate_layering(g, lay);
  if (!lrep.ok()) throw std::invalid_argument("invalid layering: " + describe(lrep));

  PowerDecomposition out;
  const int p = 1 + 2 * d;
  out.power = graph_power(g, p);
  out.td.tree_edges = td.tree_edges;
  for (const auto& bag : td.bags) {
    auto dist = bfs_distances_from_set(g, bag, d);
    VertexSet grown;
    for (Vertex v = 0; v < g.size(); ++v)
      if (dist[static_cast<std::size_t>(v)] != kUnreachable) grown.push_back(v);
    out.td.bags.push_back(std::move(grown));
  }
  Layering base = lay;
  base.normalize();
  std::vector<int> merged(base.layer.size());
  for (std::size_t v = 0; v < merged.size(); ++v) merged[v] = base.layer[v] / p;
  out.lay = Layering::normalized(std::move(merged));
  return out;
}

inline long power_cell_bound(int d, long k) { return (1 + 4L * d) * k; }

}  // namespace tdfrag
