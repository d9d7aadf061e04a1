#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tdfrag/graph.hpp"
#include "tdfrag/treedec.hpp"

namespace tdfrag {

// Multiset of vertex subsets, each with a decomposition of its induced
// subgraph (bags use host vertex ids).
struct GeneralCover {
  std::vector<VertexSet> elements;
  std::vector<TreeDecomposition> decomps;
  Rational beta = 0;

  std::size_t size() const { return elements.size(); }
};

// Number of elements holding each vertex.
inline std::vector<int> coverage_counts(int n, const GeneralCover& cover) {
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (const auto& el : cover.elements)
    for (Vertex v : el) ++count[static_cast<std::size_t>(v)];
  return count;
}

// Smallest fraction of elements containing a vertex (1 for an empty graph).
inline Rational min_coverage_fraction(int n, const GeneralCover& cover) {
  if (cover.size() == 0) return n == 0 ? Rational(1) : Rational(0);
  auto count = coverage_counts(n, cover);
  Rational best = 1;
  for (int c : count) best = std::min(best, frac(c, static_cast<long>(cover.size())));
  return best;
}

struct CoverReport {
  bool coverage_ok = true;
  std::vector<std::pair<int, ValidationReport>> bad_elements;  // element index, report
  bool ok() const { return coverage_ok && bad_elements.empty(); }
};

// Checks the beta coverage claim and every element decomposition against G[C_i].
inline CoverReport validate_cover(const Graph& g, const GeneralCover& cover) {
  CoverReport rep;
  if (cover.decomps.size() != cover.elements.size()) {
    rep.coverage_ok = false;
    return rep;
  }
  rep.coverage_ok = min_coverage_fraction(g.size(), cover) >= cover.beta;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    auto r = validate_decomposition(g, cover.decomps[i], cover.elements[i]);
    if (!r.ok()) rep.bad_elements.emplace_back(static_cast<int>(i), std::move(r));
  }
  return rep;
}

// Max over elements of the decomposition independence number.
inline int cover_independence_number(const Graph& g, const GeneralCover& cover) {
  int best = 0;
  for (std::size_t i = 0; i < cover.size(); ++i)
    best = std::max(best, independence_number(g, cover.decomps[i], cover.elements[i]));
  return best;
}

// (1 - 1/r)-general cover from a layered decomposition: element m drops the
// layers congruent to m mod r. Its decomposition restricts the bags to each
// component of G[C_m] (which spans at most r-1 layers) and merges them.
inline GeneralCover cover_from_layering(const Graph& g, const TreeDecomposition& td, const Layering& lay, int r) {
  if (r < 2) throw std::invalid_argument("cover_from_layering: r must be >= 2");
  require_valid(g, td);
  auto lrep = validate_layering(g, lay);
  if (!lrep.ok()) throw std::invalid_argument("invalid layering: " + describe(lrep));

  GeneralCover cover;
  cover.beta = frac(r - 1, r);
  for (int m = 0; m < r; ++m) {
    VertexSet element;
    for (Vertex v = 0; v < g.size(); ++v)
      if (lay.layer[static_cast<std::size_t>(v)] % r != m) element.push_back(v);
    Graph sub = induced_subgraph(g, element);
    std::vector<std::pair<VertexSet, TreeDecomposition>> parts;
    for (const auto& comp : connected_components(sub)) {
      VertexSet host_ids;
      for (Vertex local : comp) host_ids.push_back(element[static_cast<std::size_t>(local)]);
      parts.emplace_back(host_ids, restrict_decomposition(td, host_ids));
    }
    cover.elements.push_back(std::move(element));
    cover.decomps.push_back(merge_components(parts));
  }
  return cover;
}

inline long layering_cover_bound(long ell, int r) { return ell * (r - 1); }

}  // namespace tdfrag
