#pragma once

// JSON formats. Rationals travel as "p/q" strings; plain JSON integers are
// accepted on input.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tdfrag/cover.hpp"
#include "tdfrag/generators.hpp"
#include "tdfrag/geometry.hpp"
#include "tdfrag/ptas.hpp"

namespace tdfrag::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return format_rational(q); }

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

inline Json point_json(const PointD& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(to_json(x));
  return a;
}

inline PointD point_from(const Json& j) {
  PointD p;
  for (const auto& x : j) p.push_back(rational_from(x));
  return p;
}

inline Json weights_json(const std::vector<Rational>& w) {
  Json a = Json::array();
  for (const auto& x : w) a.push_back(to_json(x));
  return a;
}

inline std::vector<Rational> weights_from(const Json& j) {
  std::vector<Rational> w;
  for (const auto& x : j) w.push_back(rational_from(x));
  return w;
}

// ---------------------------------------------------------------------------
// graphs

inline Json graph_json(const Graph& g, const WeightMap& w) {
  Json j;
  j["n"] = g.size();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["weights"] = weights_json(w.values());
  return j;
}

inline std::pair<Graph, WeightMap> graph_from(const Json& j) {
  int n = j.at("n").get<int>();
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  Graph g = build_graph(n, edges);
  WeightMap w = j.contains("weights") ? WeightMap(weights_from(j["weights"])) : WeightMap::uniform(static_cast<std::size_t>(n));
  if (w.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("weight count does not match n");
  return {std::move(g), std::move(w)};
}

// ---------------------------------------------------------------------------
// decompositions and covers

inline Json decomposition_json(const TreeDecomposition& td, const Layering* lay = nullptr) {
  Json j;
  Json edges = Json::array();
  for (auto [s, t] : td.tree_edges) edges.push_back({s, t});
  j["tree_edges"] = std::move(edges);
  Json bags = Json::object();
  for (int t = 0; t < td.node_count(); ++t) bags[std::to_string(t)] = td.bags[static_cast<std::size_t>(t)];
  j["bags"] = std::move(bags);
  if (lay) j["layering"] = lay->layer;
  return j;
}

inline TreeDecomposition decomposition_from(const Json& j) {
  TreeDecomposition td;
  const auto& bags = j.at("bags");
  td.bags.resize(bags.size());
  for (auto it = bags.begin(); it != bags.end(); ++it) {
    std::size_t pos = 0;
    long t = std::stol(it.key(), &pos);
    if (pos != it.key().size() || t < 0 || static_cast<std::size_t>(t) >= bags.size())
      throw std::invalid_argument("bag ids must be 0..N-1, got " + it.key());
    VertexSet b = it.value().get<VertexSet>();
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    td.bags[static_cast<std::size_t>(t)] = std::move(b);
  }
  for (const auto& e : j.at("tree_edges")) td.tree_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return td;
}

inline std::optional<Layering> layering_from(const Json& j) {
  if (!j.contains("layering")) return std::nullopt;
  return Layering{j["layering"].get<std::vector<int>>()};
}

inline Json cover_json(const GeneralCover& c) {
  Json j;
  j["beta"] = to_json(c.beta);
  Json els = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i)
    els.push_back({{"vertices", c.elements[i]}, {"decomposition", decomposition_json(c.decomps[i])}});
  j["elements"] = std::move(els);
  return j;
}

inline GeneralCover cover_from(const Json& j) {
  GeneralCover c;
  c.beta = rational_from(j.at("beta"));
  for (const auto& e : j.at("elements")) {
    c.elements.push_back(e.at("vertices").get<VertexSet>());
    c.decomps.push_back(decomposition_from(e.at("decomposition")));
  }
  return c;
}

// ---------------------------------------------------------------------------
// geometric instances

inline Json instance_json(const GeometricInstance& inst) {
  Json j;
  j["kind"] = to_string(inst.kind());
  Json objs = Json::array();
  switch (inst.kind()) {
    case Kind::kUnitDisks: {
      const auto& o = inst.as<UnitDisks>();
      j["d"] = 2;
      j["radius"] = to_json(o.radius);
      for (const auto& c : o.centers) objs.push_back({{"center", point_json(c)}});
      break;
    }
    case Kind::kDisks: {
      const auto& o = inst.as<Disks>();
      j["d"] = o.dim;
      for (std::size_t i = 0; i < o.centers.size(); ++i)
        objs.push_back({{"center", point_json(o.centers[i])}, {"radius", to_json(o.radii[i])}});
      break;
    }
    case Kind::kRectangles:
      j["d"] = 2;
      for (const auto& r : inst.as<Rectangles>().rects) objs.push_back({{"x1", r.x1}, {"y1", r.y1}, {"x2", r.x2}, {"y2", r.y2}});
      break;
    case Kind::kBoxes: {
      const auto& o = inst.as<Boxes>();
      j["d"] = o.dim;
      for (std::size_t i = 0; i < o.lo.size(); ++i) objs.push_back({{"lo", point_json(o.lo[i])}, {"hi", point_json(o.hi[i])}});
      break;
    }
    case Kind::kGridPaths: {
      const auto& o = inst.as<GridPaths>();
      j["d"] = 2;
      j["mode"] = o.contact == Contact::kEdge ? "e" : "v";
      for (const auto& p : o.paths) {
        Json pts = Json::array();
        for (const auto& q : p) pts.push_back({q.x, q.y});
        objs.push_back({{"points", std::move(pts)}});
      }
      break;
    }
  }
  j["objects"] = std::move(objs);
  if (!inst.weights.empty()) j["weights"] = weights_json(inst.weights);
  return j;
}

inline GeometricInstance instance_from(const Json& j) {
  Kind kind = parse_kind(j.at("kind").get<std::string>());
  int d = j.value("d", 2);
  GeometricInstance inst;
  const auto& objs = j.at("objects");
  switch (kind) {
    case Kind::kUnitDisks: {
      UnitDisks o{rational_from(j.at("radius")), {}};
      for (const auto& x : objs) o.centers.push_back(point_from(x.at("center")));
      inst.objects = std::move(o);
      break;
    }
    case Kind::kDisks: {
      Disks o{d, {}, {}};
      for (const auto& x : objs) {
        o.centers.push_back(point_from(x.at("center")));
        o.radii.push_back(rational_from(x.at("radius")));
      }
      inst.objects = std::move(o);
      break;
    }
    case Kind::kRectangles: {
      Rectangles o;
      for (const auto& x : objs)
        o.rects.push_back({x.at("x1").get<long>(), x.at("y1").get<long>(), x.at("x2").get<long>(), x.at("y2").get<long>()});
      inst.objects = std::move(o);
      break;
    }
    case Kind::kBoxes: {
      Boxes o{d, {}, {}};
      for (const auto& x : objs) {
        o.lo.push_back(point_from(x.at("lo")));
        o.hi.push_back(point_from(x.at("hi")));
      }
      inst.objects = std::move(o);
      break;
    }
    case Kind::kGridPaths: {
      std::string mode = j.value("mode", "v");
      if (mode != "v" && mode != "e") throw std::invalid_argument("grid path mode must be \"v\" or \"e\"");
      GridPaths o{mode == "e" ? Contact::kEdge : Contact::kVertex, {}};
      for (const auto& x : objs) {
        std::vector<GridPoint> p;
        for (const auto& q : x.at("points")) p.push_back({q.at(0).get<long>(), q.at(1).get<long>()});
        o.paths.push_back(std::move(p));
      }
      inst.objects = std::move(o);
      break;
    }
  }
  if (j.contains("weights")) inst.weights = weights_from(j["weights"]);
  validate_instance(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// families, solutions

inline Json family_json(const SubgraphFamily& fam, const WeightMap& w) {
  return {{"h", fam.h_max}, {"members", fam.members}, {"weights", weights_json(w.values())}};
}

inline Json solution_json(const PackingSolution& sol, long elapsed_ms) {
  Json j;
  j["weight"] = to_json(sol.weight);
  j["chosen"] = sol.chosen;
  j["verified"] = sol.verified;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

inline Json approx_json(const ApproxResult& res, long elapsed_ms) {
  Json j = solution_json(res.solution, elapsed_ms);
  j["guarantee"] = to_json(res.guarantee);
  j["winner"] = res.winner;
  j["winner_kind"] = res.winner_kind;
  Json per = Json::array();
  for (const auto& e : res.per_element)
    per.push_back({{"index", e.index}, {"weight", to_json(e.weight)}, {"vertices", e.vertices},
                   {"members", e.members}, {"max_states", e.max_states}});
  j["per_element"] = std::move(per);
  return j;
}

// ---------------------------------------------------------------------------
// generator specs

inline Json genspec_json(const GenSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["dim"] = s.dim;
  if (s.width) j["width"] = to_json(*s.width);
  if (s.height) j["height"] = to_json(*s.height);
  j["density"] = to_json(s.density);
  j["radius"] = to_json(s.radius);
  j["min_size"] = to_json(s.min_size);
  j["max_size"] = to_json(s.max_size);
  j["max_horizontal"] = s.max_horizontal;
  j["max_vertical"] = s.max_vertical;
  j["max_bends"] = s.max_bends;
  j["mode"] = s.contact == Contact::kEdge ? "e" : "v";
  j["denominator"] = s.denominator;
  j["random_weights"] = s.random_weights;
  return j;
}

inline GenSpec genspec_from(const Json& j) {
  GenSpec s;
  s.kind = parse_kind(j.at("kind").get<std::string>());
  s.n = j.value("n", s.n);
  s.seed = j.value("seed", s.seed);
  s.dim = j.value("dim", s.dim);
  if (j.contains("width")) s.width = rational_from(j["width"]);
  if (j.contains("height")) s.height = rational_from(j["height"]);
  if (j.contains("density")) s.density = rational_from(j["density"]);
  if (j.contains("radius")) s.radius = rational_from(j["radius"]);
  if (j.contains("min_size")) s.min_size = rational_from(j["min_size"]);
  if (j.contains("max_size")) s.max_size = rational_from(j["max_size"]);
  s.max_horizontal = j.value("max_horizontal", s.max_horizontal);
  s.max_vertical = j.value("max_vertical", s.max_vertical);
  s.max_bends = j.value("max_bends", s.max_bends);
  if (j.contains("mode")) s.contact = j["mode"].get<std::string>() == "e" ? Contact::kEdge : Contact::kVertex;
  s.denominator = j.value("denominator", s.denominator);
  s.random_weights = j.value("random_weights", s.random_weights);
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// files, digests

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// FNV-1a, 64 bit, as 16 hex digits. Stable across platforms, unlike std::hash.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

// Copy of `j` without timing fields, for reproducibility digests.
inline Json strip_timings(Json j) {
  if (j.is_object()) {
    for (const char* key : {"elapsed_ms", "timings_ms", "ms"}) j.erase(key);
    for (auto& [k, v] : j.items()) v = strip_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timings(v);
  }
  return j;
}

}  // namespace tdfrag::io
