#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdfrag/graph.hpp"
#include "tdfrag/mis.hpp"

namespace tdfrag {

using NodeId = int;

// Tree of bags over a host graph. Bags hold host vertex ids (sorted).
struct TreeDecomposition {
  std::vector<VertexSet> bags;                       // one per node
  std::vector<std::pair<NodeId, NodeId>> tree_edges;  // undirected

  int node_count() const { return static_cast<int>(bags.size()); }

  std::vector<std::vector<NodeId>> adjacency() const {
    std::vector<std::vector<NodeId>> adj(bags.size());
    for (auto [s, t] : tree_edges) {
      adj[static_cast<std::size_t>(s)].push_back(t);
      adj[static_cast<std::size_t>(t)].push_back(s);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }

  bool is_path() const {
    auto adj = adjacency();
    return std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() <= 2; });
  }

  // The decomposition with a single bag holding every vertex.
  static TreeDecomposition trivial(int n) {
    TreeDecomposition td;
    VertexSet all(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    td.bags.push_back(std::move(all));
    return td;
  }

  // Path-shaped decomposition over the given bags, in order.
  static TreeDecomposition path(std::vector<VertexSet> bags) {
    TreeDecomposition td;
    td.bags = std::move(bags);
    for (auto& b : td.bags) std::sort(b.begin(), b.end());
    for (NodeId t = 0; t + 1 < td.node_count(); ++t) td.tree_edges.emplace_back(t, t + 1);
    return td;
  }
};

// Layer index per vertex; indices are kept 0-based and contiguous.
struct Layering {
  std::vector<int> layer;

  int layer_count() const {
    int m = -1;
    for (int l : layer) m = std::max(m, l);
    return m + 1;
  }

  // Renumbers used layers to 0..k-1 preserving order. Dropping empty layers
  // only brings layers closer, so a valid layering stays valid.
  void normalize() {
    std::vector<int> used = layer;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (int& l : layer) l = static_cast<int>(std::lower_bound(used.begin(), used.end(), l) - used.begin());
  }

  static Layering normalized(std::vector<int> raw) {
    Layering lay{std::move(raw)};
    lay.normalize();
    return lay;
  }

  static Layering single(int n) { return Layering{std::vector<int>(static_cast<std::size_t>(n), 0)}; }
};

enum class Violation { kNotATree, kVertexOutOfRange, kBagOutsideSubset, kUncoveredVertex, kUncoveredEdge,
                       kDisconnectedTrace, kLayerCount, kLayerSpan };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::kNotATree: return "not-a-tree";
    case Violation::kVertexOutOfRange: return "vertex-out-of-range";
    case Violation::kBagOutsideSubset: return "bag-outside-subset";
    case Violation::kUncoveredVertex: return "T1-uncovered-vertex";
    case Violation::kUncoveredEdge: return "T2-uncovered-edge";
    case Violation::kDisconnectedTrace: return "T3-disconnected-trace";
    case Violation::kLayerCount: return "layer-count";
    case Violation::kLayerSpan: return "layer-span";
  }
  return "unknown";
}

struct ViolationRecord {
  Violation kind;
  Vertex u = -1;  // witness vertex (or edge endpoint)
  Vertex v = -1;  // second endpoint for edge witnesses
  NodeId node = -1;
};

struct ValidationReport {
  std::vector<ViolationRecord> violations;
  bool ok() const { return violations.empty(); }
  bool has(Violation kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const auto& r) { return r.kind == kind; });
  }
};

namespace detail {

inline bool is_tree(const TreeDecomposition& td) {
  const int n = td.node_count();
  if (n == 0) return true;
  if (static_cast<int>(td.tree_edges.size()) != n - 1) return false;
  for (auto [s, t] : td.tree_edges)
    if (s < 0 || t < 0 || s >= n || t >= n || s == t) return false;
  auto adj = td.adjacency();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    NodeId s = stack.back();
    stack.pop_back();
    ++reached;
    for (NodeId t : adj[static_cast<std::size_t>(s)])
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        stack.push_back(t);
      }
  }
  return reached == n;
}

}  // namespace detail

// Checks T1-T3 for `td` as a decomposition of g[subset] (all of g when
// `subset` is empty-optional). Every violated condition is reported with a
// witness; an empty report means the decomposition is valid.
inline ValidationReport validate_decomposition(const Graph& g, const TreeDecomposition& td,
                                               const std::optional<VertexSet>& subset = std::nullopt) {
  ValidationReport rep;
  const int n = g.size();
  std::vector<char> inside(static_cast<std::size_t>(n), subset ? 0 : 1);
  if (subset)
    for (Vertex v : *subset) inside[static_cast<std::size_t>(v)] = 1;

  if (!detail::is_tree(td)) rep.violations.push_back({Violation::kNotATree});

  std::vector<std::vector<NodeId>> trace(static_cast<std::size_t>(n));
  for (NodeId t = 0; t < td.node_count(); ++t) {
    for (Vertex v : td.bags[static_cast<std::size_t>(t)]) {
      if (v < 0 || v >= n) {
        rep.violations.push_back({Violation::kVertexOutOfRange, v, -1, t});
        continue;
      }
      if (!inside[static_cast<std::size_t>(v)]) {
        rep.violations.push_back({Violation::kBagOutsideSubset, v, -1, t});
        continue;
      }
      trace[static_cast<std::size_t>(v)].push_back(t);
    }
  }
  if (rep.has(Violation::kVertexOutOfRange)) return rep;

  for (Vertex v = 0; v < n; ++v)
    if (inside[static_cast<std::size_t>(v)] && trace[static_cast<std::size_t>(v)].empty())
      rep.violations.push_back({Violation::kUncoveredVertex, v});

  // T2: membership per node as sorted bag lookups.
  for (Vertex u = 0; u < n; ++u) {
    if (!inside[static_cast<std::size_t>(u)]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (v <= u || !inside[static_cast<std::size_t>(v)]) continue;
      bool covered = false;
      const auto& tu = trace[static_cast<std::size_t>(u)];
      for (NodeId t : tu) {
        const auto& bag = td.bags[static_cast<std::size_t>(t)];
        if (std::binary_search(bag.begin(), bag.end(), v)) {
          covered = true;
          break;
        }
      }
      if (!covered) rep.violations.push_back({Violation::kUncoveredEdge, u, v});
    }
  }

  // T3: nodes holding v induce a connected subtree.
  if (!rep.has(Violation::kNotATree)) {
    auto adj = td.adjacency();
    std::vector<int> mark(static_cast<std::size_t>(td.node_count()), -1);
    for (Vertex v = 0; v < n; ++v) {
      const auto& tv = trace[static_cast<std::size_t>(v)];
      if (tv.size() <= 1) continue;
      for (NodeId t : tv) mark[static_cast<std::size_t>(t)] = v;
      std::vector<NodeId> stack{tv.front()};
      mark[static_cast<std::size_t>(tv.front())] = -2 - v;
      std::size_t reached = 0;
      while (!stack.empty()) {
        NodeId s = stack.back();
        stack.pop_back();
        ++reached;
        for (NodeId t : adj[static_cast<std::size_t>(s)])
          if (mark[static_cast<std::size_t>(t)] == v) {
            mark[static_cast<std::size_t>(t)] = -2 - v;
            stack.push_back(t);
          }
      }
      if (reached != tv.size()) rep.violations.push_back({Violation::kDisconnectedTrace, v});
    }
  }
  return rep;
}

// Checks the layering covers every vertex and no edge spans two or more layer
// boundaries.
inline ValidationReport validate_layering(const Graph& g, const Layering& lay) {
  ValidationReport rep;
  if (lay.layer.size() != static_cast<std::size_t>(g.size())) {
    rep.violations.push_back({Violation::kLayerCount});
    return rep;
  }
  for (auto [u, v] : g.edges()) {
    int d = lay.layer[static_cast<std::size_t>(u)] - lay.layer[static_cast<std::size_t>(v)];
    if (d > 1 || d < -1) rep.violations.push_back({Violation::kLayerSpan, u, v});
  }
  return rep;
}

inline std::string describe(const ValidationReport& rep) {
  std::string out;
  for (const auto& r : rep.violations) {
    if (!out.empty()) out += "; ";
    out += to_string(r.kind);
    if (r.u >= 0) out += " u=" + std::to_string(r.u);
    if (r.v >= 0) out += " v=" + std::to_string(r.v);
    if (r.node >= 0) out += " node=" + std::to_string(r.node);
  }
  return out;
}

inline void require_valid(const Graph& g, const TreeDecomposition& td,
                          const std::optional<VertexSet>& subset = std::nullopt) {
  auto rep = validate_decomposition(g, td, subset);
  if (!rep.ok()) throw std::invalid_argument("invalid tree decomposition: " + describe(rep));
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Memoizes independence numbers of vertex sets of one graph.
class AlphaCache {
 public:
  explicit AlphaCache(const Graph& g) : g_(&g) {}
  int operator()(const VertexSet& s) {
    if (s.size() <= 1) return static_cast<int>(s.size());
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    int a = tdfrag::independence_number(*g_, s);
    memo_.emplace(s, a);
    return a;
  }

 private:
  const Graph* g_;
  std::unordered_map<VertexSet, int, VectorHash> memo_;
};

// Max over bags of alpha(g[bag]).
inline int independence_number(const Graph& g, const TreeDecomposition& td,
                               const std::optional<VertexSet>& subset = std::nullopt) {
  require_valid(g, td, subset);
  AlphaCache alpha(g);
  int best = 0;
  for (const auto& bag : td.bags) best = std::max(best, alpha(bag));
  return best;
}

// Max over (bag, layer) cells of alpha(g[bag ∩ layer]).
inline int layered_independence_number(const Graph& g, const TreeDecomposition& td, const Layering& lay,
                                       const std::optional<VertexSet>& subset = std::nullopt) {
  require_valid(g, td, subset);
  auto lrep = validate_layering(g, lay);
  if (!lrep.ok()) throw std::invalid_argument("invalid layering: " + describe(lrep));
  AlphaCache alpha(g);
  int best = 0;
  for (const auto& bag : td.bags) {
    std::map<int, VertexSet> cells;
    for (Vertex v : bag) cells[lay.layer[static_cast<std::size_t>(v)]].push_back(v);
    for (auto& [l, cell] : cells) best = std::max(best, alpha(cell));
  }
  return best;
}

// Restricts every bag to `keep` (sorted), drops nodes whose bag becomes
// empty and links the remaining forest pieces into one tree. Traces of kept
// vertices never span two pieces, so validity for g[keep] is preserved.
// An empty result is a single empty bag.
inline TreeDecomposition restrict_decomposition(const TreeDecomposition& td, const VertexSet& keep) {
  TreeDecomposition out;
  std::vector<NodeId> renum(static_cast<std::size_t>(td.node_count()), -1);
  for (NodeId t = 0; t < td.node_count(); ++t) {
    VertexSet b;
    std::set_intersection(td.bags[static_cast<std::size_t>(t)].begin(), td.bags[static_cast<std::size_t>(t)].end(),
                          keep.begin(), keep.end(), std::back_inserter(b));
    if (b.empty()) continue;
    renum[static_cast<std::size_t>(t)] = out.node_count();
    out.bags.push_back(std::move(b));
  }
  if (out.bags.empty()) {
    out.bags.emplace_back();
    return out;
  }
  for (auto [s, t] : td.tree_edges) {
    NodeId a = renum[static_cast<std::size_t>(s)], b = renum[static_cast<std::size_t>(t)];
    if (a >= 0 && b >= 0) out.tree_edges.emplace_back(a, b);
  }
  // Link forest pieces: union-find over surviving edges.
  std::vector<NodeId> parent(static_cast<std::size_t>(out.node_count()));
  for (NodeId t = 0; t < out.node_count(); ++t) parent[static_cast<std::size_t>(t)] = t;
  auto find = [&](NodeId x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [s, t] : out.tree_edges) parent[static_cast<std::size_t>(find(s))] = find(t);
  NodeId anchor = 0;
  for (NodeId t = 1; t < out.node_count(); ++t) {
    if (find(t) != find(anchor)) {
      out.tree_edges.emplace_back(anchor, t);
      parent[static_cast<std::size_t>(find(t))] = find(anchor);
    }
  }
  return out;
}

// Joins decompositions of vertex-disjoint parts under a fresh empty-bag node
// (node 0), which is adjacent to node 0 of every part.
inline TreeDecomposition merge_components(const std::vector<std::pair<VertexSet, TreeDecomposition>>& parts) {
  std::vector<int> seen;
  for (const auto& [vs, td] : parts) seen.insert(seen.end(), vs.begin(), vs.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("merge_components: overlapping vertex sets");

  TreeDecomposition out;
  out.bags.emplace_back();
  for (const auto& [vs, td] : parts) {
    NodeId offset = out.node_count();
    for (const auto& b : td.bags) {
      if (!std::includes(vs.begin(), vs.end(), b.begin(), b.end()))
        throw std::invalid_argument("merge_components: bag outside its part");
      out.bags.push_back(b);
    }
    for (auto [s, t] : td.tree_edges) out.tree_edges.emplace_back(s + offset, t + offset);
    if (td.node_count() > 0) out.tree_edges.emplace_back(0, offset);
  }
  return out;
}

enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
  NiceKind kind = NiceKind::kLeaf;
  Vertex vertex = -1;          // introduced / forgotten vertex
  std::vector<NodeId> children;
  VertexSet bag;
};

// Rooted nice decomposition; nodes are stored children-before-parent and
// the root is the last node.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;

  NodeId root() const { return static_cast<NodeId>(nodes.size()) - 1; }

  TreeDecomposition to_tree_decomposition() const {
    TreeDecomposition td;
    for (NodeId t = 0; t < static_cast<NodeId>(nodes.size()); ++t) {
      td.bags.push_back(nodes[static_cast<std::size_t>(t)].bag);
      for (NodeId c : nodes[static_cast<std::size_t>(t)].children) td.tree_edges.emplace_back(c, t);
    }
    return td;
  }

  // Structural checks: each introduce/forget changes the bag by exactly its
  // vertex, joins have two children with identical bags, leaves are empty.
  bool well_formed() const {
    for (const auto& node : nodes) {
      switch (node.kind) {
        case NiceKind::kLeaf:
          if (!node.children.empty() || !node.bag.empty()) return false;
          break;
        case NiceKind::kIntroduce:
        case NiceKind::kForget: {
          if (node.children.size() != 1) return false;
          const auto& child = nodes[static_cast<std::size_t>(node.children[0])].bag;
          const auto& small = node.kind == NiceKind::kIntroduce ? child : node.bag;
          const auto& big = node.kind == NiceKind::kIntroduce ? node.bag : child;
          if (big.size() != small.size() + 1) return false;
          if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) return false;
          if (!std::binary_search(big.begin(), big.end(), node.vertex) ||
              std::binary_search(small.begin(), small.end(), node.vertex))
            return false;
          break;
        }
        case NiceKind::kJoin:
          if (node.children.size() != 2) return false;
          for (NodeId c : node.children)
            if (nodes[static_cast<std::size_t>(c)].bag != node.bag) return false;
          break;
      }
    }
    return true;
  }
};

// Converts a decomposition into nice form rooted at node 0.
inline NiceDecomposition make_nice(const TreeDecomposition& td) {
  NiceDecomposition nice;
  if (td.node_count() == 0) {
    nice.nodes.push_back({});
    return nice;
  }
  auto adj = td.adjacency();
  auto push = [&](NiceNode node) {
    nice.nodes.push_back(std::move(node));
    return static_cast<NodeId>(nice.nodes.size()) - 1;
  };
  // Walks from `from_node` (bag `from`) to bag `to`: forget first, then introduce.
  auto morph = [&](NodeId from_node, const VertexSet& to) {
    VertexSet cur = nice.nodes[static_cast<std::size_t>(from_node)].bag;
    NodeId at = from_node;
    VertexSet drop, add;
    std::set_difference(cur.begin(), cur.end(), to.begin(), to.end(), std::back_inserter(drop));
    std::set_difference(to.begin(), to.end(), cur.begin(), cur.end(), std::back_inserter(add));
    for (Vertex v : drop) {
      cur.erase(std::lower_bound(cur.begin(), cur.end(), v));
      at = push({NiceKind::kForget, v, {at}, cur});
    }
    for (Vertex v : add) {
      cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
      at = push({NiceKind::kIntroduce, v, {at}, cur});
    }
    return at;
  };

  // Iterative post-order from node 0.
  struct Frame {
    NodeId node, parent;
    std::size_t next_child;
    std::vector<NodeId> built;
  };
  std::vector<Frame> stack;
  stack.push_back({0, -1, 0, {}});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nbrs = adj[static_cast<std::size_t>(f.node)];
    if (f.next_child < nbrs.size()) {
      NodeId c = nbrs[f.next_child++];
      if (c != f.parent) stack.push_back({c, f.node, 0, {}});
      continue;
    }
    const VertexSet& bag = td.bags[static_cast<std::size_t>(f.node)];
    std::vector<NodeId> chains;
    if (f.built.empty()) {
      NodeId leaf = push({NiceKind::kLeaf, -1, {}, {}});
      chains.push_back(morph(leaf, bag));
    } else {
      for (NodeId b : f.built) chains.push_back(morph(b, bag));
    }
    NodeId top = chains.front();
    for (std::size_t i = 1; i < chains.size(); ++i) top = push({NiceKind::kJoin, -1, {top, chains[i]}, bag});
    stack.pop_back();
    if (!stack.empty()) stack.back().built.push_back(top);
  }
  return nice;  // the last pushed node is the root's top
}

}  // namespace tdfrag
