#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "tdfrag/graph.hpp"
#include "tdfrag/treedec.hpp"

namespace tdfrag::detail {

// Path decomposition over grid rows. Every edge uv contributes its contact
// row to both endpoints; a vertex without neighbors uses `own_row`. Nodes are
// the distinct rows in decreasing order and each vertex is then spread over
// every row between its extreme contact rows.
inline TreeDecomposition contact_row_decomposition(const Graph& g,
                                                   const std::function<long(Vertex, Vertex)>& contact_row,
                                                   const std::function<long(Vertex)>& own_row) {
  const int n = g.size();
  std::vector<std::vector<long>> rows_of(static_cast<std::size_t>(n));
  for (auto [u, v] : g.edges()) {
    long row = contact_row(u, v);
    rows_of[static_cast<std::size_t>(u)].push_back(row);
    rows_of[static_cast<std::size_t>(v)].push_back(row);
  }
  for (Vertex v = 0; v < n; ++v)
    if (rows_of[static_cast<std::size_t>(v)].empty()) rows_of[static_cast<std::size_t>(v)].push_back(own_row(v));

  std::vector<long> rows;
  for (const auto& rs : rows_of) rows.insert(rows.end(), rs.begin(), rs.end());
  std::sort(rows.begin(), rows.end(), std::greater<>());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  auto node_of = [&](long row) {
    return static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), row, std::greater<>()) - rows.begin());
  };

  std::vector<VertexSet> bags(rows.size());
  for (Vertex v = 0; v < n; ++v) {
    const auto& rs = rows_of[static_cast<std::size_t>(v)];
    auto [lo, hi] = std::minmax_element(rs.begin(), rs.end());
    for (std::size_t t = node_of(*hi); t <= node_of(*lo); ++t) bags[t].push_back(v);
  }
  if (bags.empty()) bags.emplace_back();
  return TreeDecomposition::path(std::move(bags));
}

// Path decomposition with one node per used strip index; `range(v)` gives
// the inclusive, consecutive strip indices met by v.
inline TreeDecomposition strip_decomposition(int n, const std::function<std::pair<long, long>(Vertex)>& range) {
  std::map<long, VertexSet> strips;
  for (Vertex v = 0; v < n; ++v) {
    auto [a, b] = range(v);
    for (long s = a; s <= b; ++s) strips[s].push_back(v);
  }
  std::vector<VertexSet> bags;
  for (auto& [s, bag] : strips) bags.push_back(std::move(bag));
  if (bags.empty()) bags.emplace_back();
  return TreeDecomposition::path(std::move(bags));
}

}  // namespace tdfrag::detail
