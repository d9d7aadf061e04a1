#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdfrag/bitset.hpp"
#include "tdfrag/graph.hpp"

namespace tdfrag {

struct PackingInstance {
  Graph host;
  SubgraphFamily family;
  WeightMap weights;  // indexed by family member

  void validate() const {
    validate_family(host, family);
    if (weights.size() != family.size())
      throw std::invalid_argument("weight count does not match family size");
  }
};

inline PackingInstance mwis_instance(Graph g, WeightMap w) {
  int n = g.size();
  if (w.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("weight count does not match vertex count");
  return {std::move(g), SubgraphFamily::singletons(n), std::move(w)};
}

struct PackingSolution {
  std::vector<int> chosen;  // sorted family indices
  Rational weight = 0;
  bool verified = false;
};

// Deterministic tie-break between two distinct index sets: `a` comes first
// iff the smallest index in their symmetric difference belongs to `a`.
// Equivalently, compare membership vectors lexicographically with "member"
// ranking before "non-member". This order is compatible with combining
// partial solutions over disjoint index ranges, which the DP relies on.
inline bool precedes(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  if (i == a.size()) return false;  // a is a prefix of b (or equal)
  if (i == b.size()) return true;
  return a[i] < b[i];
}

// Independent feasibility check: chosen members are pairwise vertex-disjoint
// and no host edge joins two of them. Works directly on vertex ownership.
inline bool verify_packing(const Graph& host, const SubgraphFamily& fam, const std::vector<int>& chosen) {
  std::vector<int> owner(static_cast<std::size_t>(host.size()), -1);
  for (int j : chosen) {
    if (j < 0 || static_cast<std::size_t>(j) >= fam.size()) return false;
    for (Vertex v : fam.members[static_cast<std::size_t>(j)]) {
      if (owner[static_cast<std::size_t>(v)] != -1) return false;
      owner[static_cast<std::size_t>(v)] = j;
    }
  }
  for (int j : chosen)
    for (Vertex v : fam.members[static_cast<std::size_t>(j)])
      for (Vertex u : host.neighbors(v)) {
        int o = owner[static_cast<std::size_t>(u)];
        if (o != -1 && o != j) return false;
      }
  return true;
}

// Pairwise distance check against a precomputed distance routine: every pair
// of chosen members must be at distance >= d in `host`.
inline bool verify_distance_packing(const Graph& host, const SubgraphFamily& fam,
                                    const std::vector<int>& chosen, int d) {
  for (std::size_t a = 0; a < chosen.size(); ++a) {
    const auto& ma = fam.members[static_cast<std::size_t>(chosen[a])];
    auto dist = bfs_distances_from_set(host, ma, d);
    for (std::size_t b = a + 1; b < chosen.size(); ++b)
      for (Vertex v : fam.members[static_cast<std::size_t>(chosen[b])]) {
        int dv = dist[static_cast<std::size_t>(v)];
        if (dv != kUnreachable && dv < d) return false;
      }
  }
  return true;
}

inline Rational packing_weight(const WeightMap& w, const std::vector<int>& chosen) {
  Rational total = 0;
  for (int j : chosen) total += w[static_cast<std::size_t>(j)];
  return total;
}

inline constexpr std::size_t kBruteForceGuard = 25;

// Exhaustive maximum-weight independent packing; among maximizers the
// smallest under `precedes` wins. Branches whose greedy clique-cover bound
// cannot reach the incumbent are skipped; ties are never pruned.
inline PackingSolution brute_force_packing(const PackingInstance& inst, bool allow_large = false) {
  inst.validate();
  const auto& fam = inst.family;
  const int m = static_cast<int>(fam.size());
  if (static_cast<std::size_t>(m) > kBruteForceGuard && !allow_large)
    throw std::length_error("brute force packing limited to " + std::to_string(kBruteForceGuard) +
                            " family members");

  // Pairwise conflicts computed directly from member vertex sets.
  std::vector<DynBitset> conflict(static_cast<std::size_t>(m), DynBitset(m));
  std::vector<DynBitset> closed(static_cast<std::size_t>(m), DynBitset(inst.host.size()));
  for (int i = 0; i < m; ++i)
    for (Vertex v : fam.members[static_cast<std::size_t>(i)]) {
      closed[static_cast<std::size_t>(i)].set(v);
      for (Vertex u : inst.host.neighbors(v)) closed[static_cast<std::size_t>(i)].set(u);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      for (Vertex v : fam.members[static_cast<std::size_t>(j)])
        if (closed[static_cast<std::size_t>(i)].test(v)) {
          conflict[static_cast<std::size_t>(i)].set(j);
          break;
        }
    }

  const auto& w = inst.weights;
  PackingSolution best;
  best.weight = -1;
  std::vector<int> current;
  Rational current_weight = 0;

  auto bound = [&](const DynBitset& cand) {
    // Greedy clique cover of the candidates; each clique contributes its
    // heaviest member.
    std::vector<int> heads;
    std::vector<DynBitset> clique_common;
    std::vector<Rational> clique_max;
    for (int v = cand.first(); v != -1; v = cand.next(v + 1)) {
      bool placed = false;
      for (std::size_t c = 0; c < heads.size(); ++c) {
        if (clique_common[c].test(v)) {
          clique_common[c] &= conflict[static_cast<std::size_t>(v)];
          if (w[static_cast<std::size_t>(v)] > clique_max[c]) clique_max[c] = w[static_cast<std::size_t>(v)];
          placed = true;
          break;
        }
      }
      if (!placed) {
        heads.push_back(v);
        clique_common.push_back(conflict[static_cast<std::size_t>(v)]);
        clique_max.push_back(w[static_cast<std::size_t>(v)]);
      }
    }
    Rational total = 0;
    for (const auto& x : clique_max) total += x;
    return total;
  };

  auto rec = [&](auto&& self, DynBitset cand) -> void {
    if (current_weight > best.weight ||
        (current_weight == best.weight && precedes(current, best.chosen))) {
      best.weight = current_weight;
      best.chosen = current;
    }
    int v = cand.first();
    if (v == -1) return;
    if (current_weight + bound(cand) < best.weight) return;
    // include v
    DynBitset with = cand;
    with.reset(v);
    with.subtract(conflict[static_cast<std::size_t>(v)]);
    current.push_back(v);
    current_weight += w[static_cast<std::size_t>(v)];
    self(self, std::move(with));
    current.pop_back();
    current_weight -= w[static_cast<std::size_t>(v)];
    // exclude v
    cand.reset(v);
    self(self, std::move(cand));
  };

  DynBitset all(m);
  for (int i = 0; i < m; ++i) all.set(i);
  rec(rec, all);
  best.verified = verify_packing(inst.host, fam, best.chosen);
  return best;
}

}  // namespace tdfrag
