#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tdfrag/generators.hpp"
#include "tdfrag/solver.hpp"

using namespace tdfrag;

namespace {

std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t m) {
  std::vector<Rational> w;
  for (std::size_t i = 0; i < m; ++i) w.push_back(frac(oracle::uniform(rng, 0, 12), oracle::uniform(rng, 1, 4)));
  return w;
}

}  // namespace

TEST(Lift, SingletonsAreIdentity) {
  std::mt19937_64 rng(5);
  Graph g = oracle::random_graph(rng, 10, 1, 3);
  auto td = oracle::random_decomposition(rng, g, 5);
  auto lifted = lift_decomposition(g, SubgraphFamily::singletons(10), td);
  EXPECT_EQ(lifted.bags, td.bags);
  EXPECT_EQ(lifted.tree_edges, td.tree_edges);
}

TEST(Lift, EdgesOfP3) {
  Graph g = path_graph(3);
  SubgraphFamily fam{{{0, 1}, {1, 2}}, 2};
  auto lifted = lift_decomposition(g, fam, TreeDecomposition::path({{0, 1}, {1, 2}}));
  EXPECT_EQ(lifted.bags[0], (VertexSet{0, 1}));
  EXPECT_EQ(lifted.bags[1], (VertexSet{0, 1}));
  EXPECT_TRUE(validate_decomposition(conflict_graph(g, fam), lifted).ok());
}

TEST(Lift, RandomValidAndAlphaDoesNotGrow) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    int n = oracle::uniform(rng, 2, 12);
    Graph g = oracle::random_graph(rng, n, 1, 3);
    auto fam = oracle::random_family(rng, g, 20);
    auto td = oracle::random_decomposition(rng, g, oracle::uniform(rng, 0, 6));
    auto lifted = lift_decomposition(g, fam, td);
    Graph cg = conflict_graph(g, fam);
    EXPECT_TRUE(oracle::valid_decomposition(cg, lifted)) << it;
    EXPECT_LE(oracle::decomposition_alpha(cg, lifted), oracle::decomposition_alpha(g, td)) << it;
  }
}

TEST(Solver, C5) {
  auto sol = solve_mwis(cycle_graph(5), WeightMap::uniform(5), TreeDecomposition::trivial(5));
  EXPECT_EQ(sol.weight, 2);
  EXPECT_TRUE(sol.verified);
}

TEST(Solver, InducedMatchingOnP6) {
  Graph g = path_graph(6);
  SubgraphFamily fam;
  fam.h_max = 2;
  for (int i = 0; i + 1 < 6; ++i) fam.members.push_back({i, i + 1});
  PackingInstance inst{g, fam, WeightMap::uniform(5)};
  auto td = TreeDecomposition::path({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  auto sol = solve_packing(inst, td);
  EXPECT_EQ(sol.weight, 2);
  EXPECT_EQ(sol.weight, brute_force_packing(inst).weight);
  EXPECT_TRUE(sol.verified);
}

TEST(Solver, SmallExamples) {
  auto empty = solve_mwis(Graph{}, WeightMap{}, TreeDecomposition::trivial(0));
  EXPECT_EQ(empty.weight, 0);
  EXPECT_TRUE(empty.chosen.empty());

  auto k33 = solve_mwis(complete_bipartite_graph(3, 3), WeightMap::uniform(6), TreeDecomposition::trivial(6));
  EXPECT_EQ(k33.weight, 3);
  EXPECT_EQ(k33.chosen, (std::vector<int>{0, 1, 2}));

  std::vector<Edge> star;
  for (int i = 1; i <= 5; ++i) star.emplace_back(0, i);
  std::vector<VertexSet> bags;
  for (int i = 1; i <= 5; ++i) bags.push_back({0, i});
  auto s = solve_mwis(build_graph(6, star), WeightMap({10, 1, 1, 1, 1, 1}), TreeDecomposition::path(bags));
  EXPECT_EQ(s.weight, 10);
  EXPECT_EQ(s.chosen, (std::vector<int>{0}));
}

TEST(Solver, RejectsInvalidDecomposition) {
  EXPECT_THROW(solve_mwis(path_graph(3), WeightMap::uniform(3), TreeDecomposition::path({{0, 1}})), std::invalid_argument);
}

TEST(Solver, FixtureOptima) {
  for (std::string name : {"c5", "k33", "p7", "tangent_chain_10", "k44_vpg"}) {
    auto fx = fixture(name);
    auto sol = solve_mwis(fx.graph, WeightMap::uniform(static_cast<std::size_t>(fx.graph.size())),
                          TreeDecomposition::trivial(fx.graph.size()));
    EXPECT_EQ(sol.weight, fx.mwis) << name;
  }
}

// The headline oracle comparison: exact weights and identical chosen sets.
TEST(Solver, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 300; ++it) {
    int n = oracle::uniform(rng, 1, 14);
    Graph g = oracle::random_graph(rng, n, oracle::uniform(rng, 1, 3), 6);
    auto fam = it % 3 == 0 ? SubgraphFamily::singletons(n) : oracle::random_family(rng, g, 25);
    PackingInstance inst{g, fam, WeightMap(random_weights(rng, fam.size()))};
    auto td = oracle::random_decomposition(rng, g, oracle::uniform(rng, 0, 8));
    DPStats stats;
    auto sol = solve_packing(inst, td, &stats);
    auto bf = brute_force_packing(inst);
    ASSERT_EQ(sol.weight, bf.weight) << it;
    EXPECT_EQ(sol.chosen, bf.chosen) << it;
    EXPECT_TRUE(sol.verified);
    EXPECT_EQ(sol.weight, packing_weight(inst.weights, sol.chosen));
    EXPECT_TRUE(stats.state_bound_ok) << it;
    if (fam.size() <= 20) {
      EXPECT_EQ(sol.weight, oracle::best_packing_weight(g, fam.members, inst.weights.values())) << it;
    }
  }
}

TEST(Solver, MonotoneInFamily) {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 50; ++it) {
    int n = oracle::uniform(rng, 3, 12);
    Graph g = oracle::random_graph(rng, n, 1, 3);
    auto fam = oracle::random_family(rng, g, 14);
    auto w = random_weights(rng, fam.size() + 1);
    auto td = oracle::random_decomposition(rng, g, 3);
    auto smaller = fam;
    smaller.members.pop_back();
    std::vector<Rational> ws(w.begin(), w.begin() + static_cast<long>(smaller.size()));
    std::vector<Rational> wf(w.begin(), w.begin() + static_cast<long>(fam.size()));
    auto a = solve_packing({g, smaller, WeightMap(ws)}, td);
    auto b = solve_packing({g, fam, WeightMap(wf)}, td);
    EXPECT_LE(a.weight, b.weight);
  }
}

TEST(Solver, ScaleEquivariant) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 50; ++it) {
    int n = oracle::uniform(rng, 3, 12);
    Graph g = oracle::random_graph(rng, n, 1, 3);
    auto fam = oracle::random_family(rng, g, 18);
    auto w = random_weights(rng, fam.size());
    auto td = oracle::random_decomposition(rng, g, 3);
    Rational k = frac(oracle::uniform(rng, 1, 9), oracle::uniform(rng, 1, 9));
    auto scaled = w;
    for (auto& x : scaled) x *= k;
    auto a = solve_packing({g, fam, WeightMap(w)}, td);
    auto b = solve_packing({g, fam, WeightMap(scaled)}, td);
    EXPECT_EQ(b.weight, a.weight * k);
    EXPECT_EQ(b.chosen, a.chosen);
  }
}

TEST(Solver, StateCountWithinBound) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    GenSpec s;
    s.kind = Kind::kUnitDisks;
    s.n = 40;
    s.seed = static_cast<std::uint64_t>(it + 1);
    s.density = frac(1, 3);
    auto inst = generate(s);
    Graph g = intersection_graph(inst);
    auto td = oracle::random_decomposition(rng, g, 0);
    DPStats stats;
    auto sol = solve_mwis(g, inst.weight_map(), td, &stats);
    EXPECT_TRUE(stats.state_bound_ok);
    EXPECT_TRUE(sol.verified);
    EXPECT_EQ(stats.alpha, oracle::decomposition_alpha(g, td));
  }
}
