#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tdfrag/constructions.hpp"
#include "tdfrag/solver.hpp"

namespace tdfrag {

// Thrown for distance-d packing with odd d: no PTAS exists there unless P = NP.
struct HardnessError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ElementLog {
  int index = 0;           // cover element or shift
  std::size_t vertices = 0;
  std::size_t members = 0;  // family members solved over
  Rational weight = 0;
  std::size_t max_states = 0;
};

struct ApproxResult {
  PackingSolution solution;
  Rational guarantee = 0;
  int winner = -1;
  std::string winner_kind;  // "element" or "shift"
  std::vector<ElementLog> per_element;
};

namespace detail {

// Runs job(i) for i in [0, count) on up to `threads` workers.
inline void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, count); ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline int max_member_size(const SubgraphFamily& fam) {
  int h = 1;
  for (const auto& m : fam.members) h = std::max(h, static_cast<int>(m.size()));
  return h;
}

struct Partial {
  std::vector<int> chosen;  // host family ids, sorted
  Rational weight = 0;
  ElementLog log;
};

inline void pick_best(ApproxResult& out, std::vector<Partial>& parts) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    out.per_element.push_back(parts[static_cast<std::size_t>(i)].log);
    if (best < 0 || parts[static_cast<std::size_t>(i)].weight > parts[static_cast<std::size_t>(best)].weight) best = i;
  }
  out.winner = best;
  if (best >= 0) {
    out.solution.chosen = std::move(parts[static_cast<std::size_t>(best)].chosen);
    out.solution.weight = parts[static_cast<std::size_t>(best)].weight;
  }
}

}  // namespace detail

// Solves exactly on every cover element (members fully inside it only) and
// keeps the best. Guarantee 1 - h/r for a (1-1/r)-general cover.
inline ApproxResult ptas_over_cover(const PackingInstance& inst, const GeneralCover& cover, int r, int threads = 1) {
  inst.validate();
  const Graph& g = inst.host;
  const int h = detail::max_member_size(inst.family);
  if (r <= h) throw std::invalid_argument("ptas_over_cover: r must exceed the largest member size");
  auto rep = validate_cover(g, cover);
  if (!rep.ok()) throw std::invalid_argument("ptas_over_cover: cover failed validation");
  if (min_coverage_fraction(g.size(), cover) < 1 - frac(1, r))
    throw std::invalid_argument("ptas_over_cover: cover is not (1-1/r)-general");

  std::vector<detail::Partial> parts(cover.size());
  detail::parallel_for(static_cast<int>(cover.size()), threads, [&](int i) {
    const VertexSet& el = cover.elements[static_cast<std::size_t>(i)];
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t a = 0; a < el.size(); ++a) local[static_cast<std::size_t>(el[a])] = static_cast<int>(a);

    PackingInstance sub;
    sub.host = induced_subgraph(g, el);
    sub.family.h_max = inst.family.h_max;
    std::vector<int> back;
    std::vector<Rational> w;
    for (std::size_t j = 0; j < inst.family.size(); ++j) {
      const auto& m = inst.family.members[j];
      if (!std::all_of(m.begin(), m.end(), [&](Vertex v) { return local[static_cast<std::size_t>(v)] >= 0; })) continue;
      VertexSet lm;
      for (Vertex v : m) lm.push_back(local[static_cast<std::size_t>(v)]);
      sub.family.members.push_back(std::move(lm));
      w.push_back(inst.weights[j]);
      back.push_back(static_cast<int>(j));
    }
    sub.weights = WeightMap(std::move(w));
    TreeDecomposition td = cover.decomps[static_cast<std::size_t>(i)];
    for (auto& bag : td.bags)
      for (auto& v : bag) v = local[static_cast<std::size_t>(v)];

    DPStats stats;
    PackingSolution sol = solve_packing(sub, td, &stats);
    auto& p = parts[static_cast<std::size_t>(i)];
    for (int j : sol.chosen) p.chosen.push_back(back[static_cast<std::size_t>(j)]);
    p.weight = sol.weight;
    p.log = {i, el.size(), sub.family.size(), sol.weight, stats.max_states};
  });

  ApproxResult out;
  out.guarantee = 1 - frac(h, r);
  out.winner_kind = "element";
  detail::pick_best(out, parts);
  out.solution.verified = verify_packing(g, inst.family, out.solution.chosen);
  return out;
}

// Distance-d packing for even d: an independent packing in G^{d-1}, solved
// over a cover of the power's layered decomposition.
inline ApproxResult ptas_distance_d(const PackingInstance& inst, const TreeDecomposition& td, const Layering& lay,
                                    int r, int d, int threads = 1) {
  if (d < 2) throw std::invalid_argument("ptas_distance_d: d must be >= 2");
  if (d % 2 == 1)
    throw HardnessError("distance-" + std::to_string(d) +
                        " packing: odd distances admit no PTAS unless P = NP; use an even d");
  inst.validate();
  ApproxResult out;
  if (d == 2) {
    out = ptas_over_cover(inst, cover_from_layering(inst.host, td, lay, r), r, threads);
  } else {
    auto pd = power_decomposition(inst.host, td, lay, d / 2 - 1);  // G^{1 + 2(d/2 - 1)} = G^{d-1}
    PackingInstance powered{pd.power, inst.family, inst.weights};
    out = ptas_over_cover(powered, cover_from_layering(pd.power, pd.td, pd.lay, r), r, threads);
  }
  out.solution.verified = verify_packing(inst.host, inst.family, out.solution.chosen) &&
                          verify_distance_packing(inst.host, inst.family, out.solution.chosen, d);
  return out;
}

// ---------------------------------------------------------------------------
// Geometric pipelines

// Default general cover for ptas_over_cover on a geometric instance.
//   unit disks: layered decomposition, layers dropped mod r
//   grid paths: same, with ell = longest horizontal part + 1
//   disks, boxes, rectangles: fat_cover with r0 = r
inline GeneralCover geometric_cover(const GeometricInstance& inst, const Graph& g, int r) {
  switch (inst.kind()) {
    case Kind::kUnitDisks: {
      auto ld = unit_disk_layered_decomposition(inst);
      return cover_from_layering(g, ld.td, ld.lay, r);
    }
    case Kind::kGridPaths: {
      long ell = 1;
      for (const auto& p : inst.as<GridPaths>().paths) {
        auto [a, b] = horizontal_part(p);
        ell = std::max(ell, b - a + 1);
      }
      auto ld = grid_path_layered_decomposition(inst, static_cast<int>(ell));
      return cover_from_layering(g, ld.td, ld.lay, r);
    }
    default:
      return fat_cover(inst, instance_fatness(inst), r).cover;
  }
}

// Layered decomposition used by the distance-d pipeline.
inline LayeredDecomposition geometric_layered(const GeometricInstance& inst) {
  switch (inst.kind()) {
    case Kind::kUnitDisks:
      return unit_disk_layered_decomposition(inst);
    case Kind::kRectangles:
      return rectangle_layered_decomposition(inst);
    case Kind::kGridPaths: {
      long ell = 1;
      for (const auto& p : inst.as<GridPaths>().paths) {
        auto [a, b] = horizontal_part(p);
        ell = std::max(ell, b - a + 1);
      }
      return grid_path_layered_decomposition(inst, static_cast<int>(ell));
    }
    default:
      throw std::invalid_argument(std::string("no layered decomposition for kind ") + to_string(inst.kind()));
  }
}

namespace detail {

// x-projection [lo, hi] of an object for the shifting scheme.
inline std::pair<Rational, Rational> x_extent(const GeometricInstance& inst, int v) {
  switch (inst.kind()) {
    case Kind::kGridPaths: {
      auto [a, b] = horizontal_part(inst.as<GridPaths>().paths[static_cast<std::size_t>(v)]);
      return {Rational(a), Rational(b)};
    }
    case Kind::kRectangles: {
      const Rect& r = inst.as<Rectangles>().rects[static_cast<std::size_t>(v)];
      return {Rational(r.x1), Rational(r.x2)};
    }
    case Kind::kUnitDisks: {
      const auto& u = inst.as<UnitDisks>();
      const Rational& x = u.centers[static_cast<std::size_t>(v)][0];
      return {x - u.radius, x + u.radius};
    }
    default:
      throw std::invalid_argument("shifting: unsupported kind");
  }
}

// Open unit intervals (i, i+1) met by [lo, hi]: i in [floor(lo), ceil(hi) - 1].
inline std::pair<long, long> open_cells(const std::pair<Rational, Rational>& ext) {
  return {to_long(floor_of(ext.first)), to_long(ceil_of(ext.second)) - 1};
}

inline GeometricInstance sub_instance(const GeometricInstance& inst, const VertexSet& vs, long dx) {
  GeometricInstance out;
  switch (inst.kind()) {
    case Kind::kGridPaths: {
      const auto& gp = inst.as<GridPaths>();
      GridPaths s{gp.contact, {}};
      for (Vertex v : vs) {
        auto p = gp.paths[static_cast<std::size_t>(v)];
        for (auto& q : p) q.x -= dx;
        s.paths.push_back(std::move(p));
      }
      out.objects = std::move(s);
      break;
    }
    case Kind::kRectangles: {
      Rectangles s;
      for (Vertex v : vs) {
        Rect r = inst.as<Rectangles>().rects[static_cast<std::size_t>(v)];
        r.x1 -= dx;
        r.x2 -= dx;
        s.rects.push_back(r);
      }
      out.objects = std::move(s);
      break;
    }
    default: {
      const auto& u = inst.as<UnitDisks>();
      UnitDisks s{u.radius, {}};
      for (Vertex v : vs) {
        auto p = u.centers[static_cast<std::size_t>(v)];
        p[0] -= dx;
        s.centers.push_back(std::move(p));
      }
      out.objects = std::move(s);
    }
  }
  return out;
}

}  // namespace detail

struct ShiftingParams {
  long c = 1;  // size constant
  long k = 1;  // slab multiplier; slabs are k*c columns wide
  long max_cells = 0;  // most open unit intervals one object meets
};

// k = ceil(1/eps) (paths, rectangles) or ceil(2/eps) (disks), raised when
// needed so that k*c*eps >= the most unit intervals one object can meet.
inline ShiftingParams shifting_params(const GeometricInstance& inst, const Rational& eps, std::optional<Rational> c_opt) {
  validate_instance(inst);
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("shifting_ptas: eps must lie in (0,1)");
  const Kind kind = inst.kind();
  if (kind != Kind::kGridPaths && kind != Kind::kRectangles && kind != Kind::kUnitDisks)
    throw std::invalid_argument(std::string("shifting_ptas: unsupported kind ") + to_string(kind));
  const int n = inst.size();
  Rational c;
  if (kind == Kind::kUnitDisks) {
    c = inst.as<UnitDisks>().radius;
    if (c_opt && *c_opt != c) throw std::invalid_argument("shifting_ptas: c must equal the disk radius");
    if (c < 1 || c.get_den() != 1) throw std::invalid_argument("shifting_ptas: disk radius must be an integer >= 1");
  } else {
    Rational widest = 1;
    for (int v = 0; v < n; ++v) {
      auto [lo, hi] = detail::x_extent(inst, v);
      if (kind == Kind::kRectangles && hi - lo < 1)
        throw std::invalid_argument("shifting_ptas: rectangles must be at least one unit wide");
      widest = std::max(widest, Rational(hi - lo));
    }
    c = c_opt ? *c_opt : widest;
    if (c < 1 || c.get_den() != 1) throw std::invalid_argument("shifting_ptas: c must be an integer >= 1");
    if (widest > c) throw std::invalid_argument("shifting_ptas: an object is wider than c");
  }
  ShiftingParams p;
  p.c = to_long(c.get_num());
  for (int v = 0; v < n; ++v) {
    auto [a, b] = detail::open_cells(detail::x_extent(inst, v));
    p.max_cells = std::max(p.max_cells, b - a + 1);
  }
  Rational base = kind == Kind::kUnitDisks ? 2 / eps : 1 / eps;
  p.k = std::max(to_long(ceil_of(base)), to_long(ceil_of(Rational(p.max_cells) / (c * eps))));
  p.k = std::max(p.k, 1L);
  return p;
}

// Shifting scheme over vertical slabs: for each shift, drop the objects meeting
// an open interval (i, i+1) with i = shift mod k*c, solve every remaining
// component exactly on a narrow-strip decomposition, keep the best shift.
inline ApproxResult shifting_ptas(const GeometricInstance& inst, const Rational& eps,
                                  std::optional<Rational> c_opt = std::nullopt, int threads = 1) {
  const ShiftingParams p = shifting_params(inst, eps, c_opt);
  const long period = p.k * p.c;
  if (period > (1L << 20)) throw std::invalid_argument("shifting_ptas: k*c too large");
  const int n = inst.size();
  Graph g = intersection_graph(inst);
  WeightMap w = inst.weight_map();
  std::vector<std::pair<long, long>> cells(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) cells[static_cast<std::size_t>(v)] = detail::open_cells(detail::x_extent(inst, v));

  std::vector<detail::Partial> parts(static_cast<std::size_t>(period));
  detail::parallel_for(static_cast<int>(period), threads, [&](int d) {
    VertexSet keep;
    for (int v = 0; v < n; ++v) {
      auto [a, b] = cells[static_cast<std::size_t>(v)];
      long first = a + (((d - a) % period) + period) % period;  // least i >= a with i = d mod period
      if (a > b || first > b) keep.push_back(v);
    }
    Graph rest = induced_subgraph(g, keep);
    auto& part = parts[static_cast<std::size_t>(d)];
    part.log.index = d;
    part.log.vertices = keep.size();
    part.log.members = keep.size();
    for (const auto& comp : connected_components(rest)) {
      VertexSet vs;
      for (Vertex local : comp) vs.push_back(keep[static_cast<std::size_t>(local)]);
      Rational lo = detail::x_extent(inst, vs.front()).first;
      for (Vertex v : vs) lo = std::min(lo, detail::x_extent(inst, v).first);
      auto sub = detail::sub_instance(inst, vs, to_long(floor_of(lo)));
      std::vector<Rational> sw;
      for (Vertex v : vs) sw.push_back(w[static_cast<std::size_t>(v)]);
      Graph sg = intersection_graph(sub);
      auto td = narrow_strip_decomposition(sub, static_cast<int>(period));
      DPStats stats;
      auto sol = solve_mwis(sg, WeightMap(sw), td, &stats);
      for (int j : sol.chosen) part.chosen.push_back(vs[static_cast<std::size_t>(j)]);
      part.weight += sol.weight;
      part.log.max_states = std::max(part.log.max_states, stats.max_states);
    }
    std::sort(part.chosen.begin(), part.chosen.end());
    part.log.weight = part.weight;
  });

  ApproxResult out;
  out.guarantee = 1 - eps;
  out.winner_kind = "shift";
  detail::pick_best(out, parts);
  out.solution.verified = verify_packing(g, SubgraphFamily::singletons(n), out.solution.chosen);
  return out;
}

}  // namespace tdfrag
