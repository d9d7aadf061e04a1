#include <gtest/gtest.h>

#include <cstdio>

#include "oracles.hpp"
#include "tdfrag/constructions.hpp"
#include "tdfrag/io.hpp"

using namespace tdfrag;
using io::Json;

TEST(Rationals, ParseForms) {
  EXPECT_EQ(io::rational_from(Json("3/6")), frac(1, 2));
  EXPECT_EQ(io::rational_from(Json("-0.25")), frac(-1, 4));
  EXPECT_EQ(io::rational_from(Json(7)), 7);
  EXPECT_EQ(io::to_json(Rational(4)), "4/1");
  EXPECT_THROW(io::rational_from(Json(0.5)), std::invalid_argument);
  EXPECT_THROW(io::rational_from(Json("1/0")), std::invalid_argument);
  EXPECT_THROW(io::rational_from(Json("x")), std::invalid_argument);
}

TEST(Digest, FnvVectors) {
  // published FNV-1a 64 test vectors
  EXPECT_EQ(io::digest(""), "cbf29ce484222325");
  EXPECT_EQ(io::digest("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(io::digest("foobar"), "85944171f73967e8");
}

TEST(Digest, StripTimings) {
  Json a = {{"w", "1/1"}, {"elapsed_ms", 5}, {"inner", {{"ms", 3}, {"x", 1}}}, {"rows", {{{"timings_ms", 9}}}}};
  Json b = io::strip_timings(a);
  EXPECT_FALSE(b.contains("elapsed_ms"));
  EXPECT_FALSE(b["inner"].contains("ms"));
  EXPECT_EQ(b["inner"]["x"], 1);
  EXPECT_TRUE(b["rows"][0].empty());
}

TEST(RoundTrip, Instances) {
  for (Kind k : {Kind::kUnitDisks, Kind::kDisks, Kind::kRectangles, Kind::kBoxes, Kind::kGridPaths})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenSpec s;
      s.kind = k;
      s.n = 15;
      s.seed = seed;
      s.random_weights = seed % 2 == 0;
      s.contact = seed % 3 == 0 ? Contact::kEdge : Contact::kVertex;
      auto inst = generate(s);
      Json j = io::instance_json(inst);
      auto back = io::instance_from(Json::parse(j.dump()));
      EXPECT_EQ(io::instance_json(back).dump(), j.dump());
      EXPECT_EQ(intersection_graph(back).edges(), intersection_graph(inst).edges());
      EXPECT_EQ(back.weights, inst.weights);
    }
}

TEST(RoundTrip, RejectsMalformed) {
  EXPECT_THROW(io::instance_from(Json::parse(R"({"kind":"blobs","objects":[]})")), std::invalid_argument);
  EXPECT_ANY_THROW(io::instance_from(Json::parse(R"({"kind":"disks","d":2,"objects":[{"center":["0","0"],"radius":"-1"}]})")));
  EXPECT_THROW(io::graph_from(Json::parse(R"({"n":2,"edges":[[0,1]],"weights":["1"]})")), std::invalid_argument);
  EXPECT_THROW(io::decomposition_from(Json::parse(R"({"tree_edges":[],"bags":{"3":[0]}})")), std::invalid_argument);
}

TEST(RoundTrip, GraphsDecompositionsCovers) {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 30; ++iter) {
    int n = oracle::uniform(rng, 1, 12);
    Graph g = oracle::random_graph(rng, n, 1, 3);
    std::vector<Rational> w;
    for (int v = 0; v < n; ++v) w.push_back(frac(oracle::uniform(rng, 1, 9), oracle::uniform(rng, 1, 4)));
    auto [g2, w2] = io::graph_from(Json::parse(io::graph_json(g, WeightMap(w)).dump()));
    EXPECT_EQ(g2.edges(), g.edges());
    EXPECT_EQ(w2.values(), w);

    auto td = oracle::random_decomposition(rng, g, 2);
    auto lay = Layering::single(n);
    Json dj = io::decomposition_json(td, &lay);
    auto td2 = io::decomposition_from(Json::parse(dj.dump()));
    EXPECT_EQ(td2.bags, td.bags);
    EXPECT_EQ(td2.tree_edges, td.tree_edges);
    EXPECT_EQ(io::layering_from(dj)->layer, lay.layer);

    auto cover = cover_from_layering(g, td, lay, 3);
    auto c2 = io::cover_from(Json::parse(io::cover_json(cover).dump()));
    EXPECT_EQ(c2.elements, cover.elements);
    EXPECT_EQ(c2.beta, cover.beta);
    EXPECT_EQ(c2.decomps.size(), cover.decomps.size());
  }
}

TEST(RoundTrip, GenSpecAndFiles) {
  GenSpec s;
  s.kind = Kind::kGridPaths;
  s.width = Rational(0);
  s.max_horizontal = 0;
  s.max_bends = 0;
  s.contact = Contact::kEdge;
  s.seed = 1ULL << 40;
  Json j = io::genspec_json(s);
  auto s2 = io::genspec_from(j);
  EXPECT_EQ(io::genspec_json(s2).dump(), j.dump());
  EXPECT_FALSE(j.contains("height"));

  std::string path = ::testing::TempDir() + "tdfrag_io_roundtrip.json";
  io::write_text(path, j.dump(2));
  EXPECT_EQ(io::read_json(path), j);
  std::remove(path.c_str());
  EXPECT_THROW(io::read_json(path), std::runtime_error);
}
