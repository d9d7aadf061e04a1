#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <vector>

#include "tdfrag/family.hpp"
#include "tdfrag/packing.hpp"
#include "tdfrag/treedec.hpp"

namespace tdfrag {

// Same tree, bag t becomes {j : H_j meets X_t}. Valid for conflict_graph(g, fam).
inline TreeDecomposition lift_decomposition(const Graph& g, const SubgraphFamily& fam, const TreeDecomposition& td) {
  require_valid(g, td);
  std::vector<std::vector<int>> owners(static_cast<std::size_t>(g.size()));
  for (std::size_t j = 0; j < fam.size(); ++j)
    for (Vertex v : fam.members[j]) owners[static_cast<std::size_t>(v)].push_back(static_cast<int>(j));
  TreeDecomposition out;
  out.tree_edges = td.tree_edges;
  for (const auto& bag : td.bags) {
    VertexSet lifted;
    for (Vertex v : bag) lifted.insert(lifted.end(), owners[static_cast<std::size_t>(v)].begin(), owners[static_cast<std::size_t>(v)].end());
    std::sort(lifted.begin(), lifted.end());
    lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());
    out.bags.push_back(std::move(lifted));
  }
  return out;
}

struct DPStats {
  std::size_t nice_nodes = 0;
  std::size_t max_states = 0;
  std::size_t max_bag = 0;
  int alpha = 0;           // measured independence number of the decomposition solved over
  bool state_bound_ok = true;  // |states| <= sum_{i<=alpha} C(|bag|, i) at every node
};

namespace detail {

struct DPEntry {
  Rational value;
  std::vector<int> chosen;  // sorted
};

inline bool better(const DPEntry& a, const DPEntry& b) {
  return a.value > b.value || (a.value == b.value && precedes(a.chosen, b.chosen));
}

inline Integer subsets_up_to(std::size_t n, int k) {
  Integer total = 0, c = 1;
  for (int i = 0; i <= k && static_cast<std::size_t>(i) <= n; ++i) {
    total += c;
    c = c * static_cast<unsigned long>(n - static_cast<std::size_t>(i)) / static_cast<unsigned long>(i + 1);
  }
  return total;
}

// MWIS on `cg` over a decomposition already valid for it.
inline PackingSolution dp_mwis(const Graph& cg, const WeightMap& w, const TreeDecomposition& td, DPStats* stats) {
  NiceDecomposition nice = make_nice(td);
  AlphaCache alpha(cg);
  int k = 0;
  for (const auto& bag : td.bags) k = std::max(k, alpha(bag));

  using Table = std::map<VertexSet, DPEntry>;
  std::vector<Table> tables(nice.nodes.size());
  DPStats local;
  local.nice_nodes = nice.nodes.size();
  local.alpha = k;

  for (std::size_t t = 0; t < nice.nodes.size(); ++t) {
    const NiceNode& node = nice.nodes[t];
    Table& out = tables[t];
    switch (node.kind) {
      case NiceKind::kLeaf:
        out.emplace(VertexSet{}, DPEntry{0, {}});
        break;
      case NiceKind::kIntroduce: {
        Table& in = tables[static_cast<std::size_t>(node.children[0])];
        const Vertex j = node.vertex;
        for (auto& [state, e] : in) {
          bool free = std::none_of(state.begin(), state.end(), [&](Vertex s) { return cg.adjacent(s, j); });
          if (free) {
            VertexSet s2 = state;
            s2.insert(std::lower_bound(s2.begin(), s2.end(), j), j);
            DPEntry e2{e.value + w[static_cast<std::size_t>(j)], e.chosen};
            e2.chosen.insert(std::lower_bound(e2.chosen.begin(), e2.chosen.end(), j), j);
            out.emplace(std::move(s2), std::move(e2));
          }
          out.emplace(state, std::move(e));
        }
        in.clear();
        break;
      }
      case NiceKind::kForget: {
        Table& in = tables[static_cast<std::size_t>(node.children[0])];
        const Vertex j = node.vertex;
        for (auto& [state, e] : in) {
          VertexSet s2 = state;
          auto it = std::lower_bound(s2.begin(), s2.end(), j);
          if (it != s2.end() && *it == j) s2.erase(it);
          auto [pos, fresh] = out.emplace(std::move(s2), e);
          if (!fresh && better(e, pos->second)) pos->second = std::move(e);
        }
        in.clear();
        break;
      }
      case NiceKind::kJoin: {
        Table& a = tables[static_cast<std::size_t>(node.children[0])];
        Table& b = tables[static_cast<std::size_t>(node.children[1])];
        for (auto& [state, ea] : a) {
          auto it = b.find(state);
          if (it == b.end()) continue;
          Rational shared = 0;
          for (Vertex s : state) shared += w[static_cast<std::size_t>(s)];
          DPEntry e{ea.value + it->second.value - shared, {}};
          std::set_union(ea.chosen.begin(), ea.chosen.end(), it->second.chosen.begin(), it->second.chosen.end(),
                         std::back_inserter(e.chosen));
          out.emplace(state, std::move(e));
        }
        a.clear();
        b.clear();
        break;
      }
    }
    local.max_states = std::max(local.max_states, out.size());
    local.max_bag = std::max(local.max_bag, node.bag.size());
    if (Integer(static_cast<unsigned long>(out.size())) > subsets_up_to(node.bag.size(), k)) local.state_bound_ok = false;
  }

  // the root bag may be nonempty; take the best state
  const Table& root = tables[static_cast<std::size_t>(nice.root())];
  const DPEntry* best = nullptr;
  for (const auto& [state, e] : root)
    if (!best || better(e, *best)) best = &e;
  if (stats) *stats = local;
  PackingSolution sol;
  sol.chosen = best->chosen;
  sol.weight = best->value;
  return sol;
}

}  // namespace detail

// Exact maximum weight independent packing given a decomposition of the host.
inline PackingSolution solve_packing(const PackingInstance& inst, const TreeDecomposition& td,
                                     DPStats* stats = nullptr) {
  inst.validate();
  Graph cg = conflict_graph(inst.host, inst.family);
  TreeDecomposition lifted = lift_decomposition(inst.host, inst.family, td);
  PackingSolution sol = detail::dp_mwis(cg, inst.weights, lifted, stats);
  sol.verified = verify_packing(inst.host, inst.family, sol.chosen);
  return sol;
}

// MWIS: singleton family, no lift.
inline PackingSolution solve_mwis(const Graph& g, const WeightMap& w, const TreeDecomposition& td,
                                  DPStats* stats = nullptr) {
  if (w.size() != static_cast<std::size_t>(g.size()))
    throw std::invalid_argument("weight count does not match vertex count");
  require_valid(g, td);
  PackingSolution sol = detail::dp_mwis(g, w, td, stats);
  sol.verified = verify_packing(g, SubgraphFamily::singletons(g.size()), sol.chosen);
  return sol;
}

}  // namespace tdfrag
