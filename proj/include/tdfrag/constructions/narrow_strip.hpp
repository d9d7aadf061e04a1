#pragma once

#include <stdexcept>

#include "tdfrag/constructions/rows.hpp"
#include "tdfrag/geometry.hpp"

namespace tdfrag {

// Column count of the grid spanned by the instance (grid paths, rectangles).
inline long grid_columns(const GeometricInstance& inst) {
  if (inst.size() == 0) return 0;
  long lo = 0, hi = 0;
  bool first = true;
  auto take = [&](long a, long b) {
    if (first || a < lo) lo = a;
    if (first || b > hi) hi = b;
    first = false;
  };
  if (inst.kind() == Kind::kGridPaths) {
    for (const auto& p : inst.as<GridPaths>().paths) {
      auto [a, b] = horizontal_part(p);
      take(a, b);
    }
  } else {
    for (const auto& r : inst.as<Rectangles>().rects) take(r.x1, r.x2);
  }
  return hi - lo + 1;
}

// Bound on alpha(T) guaranteed for narrow_strip_decomposition.
inline long narrow_strip_bound(const GeometricInstance& inst, int ell) {
  switch (inst.kind()) {
    case Kind::kGridPaths:
      return inst.as<GridPaths>().contact == Contact::kVertex ? ell : 3L * ell - 1;
    case Kind::kRectangles:
      return ell / 2;
    case Kind::kUnitDisks:
      return 2 * to_long(ceil_of(Rational(ell) / inst.as<UnitDisks>().radius));
    default:
      throw std::invalid_argument("narrow strip: unsupported kind");
  }
}

// Path decomposition of a narrow realization.
//   grid paths: at most ell columns; rows of contact points.
//   rectangles: at most ell columns, each at least one unit wide; same rows.
//   unit disks: radius c >= 1 inside an integral box of width <= ell-1;
//               bags are closed horizontal strips of height c.
inline TreeDecomposition narrow_strip_decomposition(const GeometricInstance& inst, int ell) {
  validate_instance(inst);
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  const int n = inst.size();
  switch (inst.kind()) {
    case Kind::kGridPaths: {
      if (grid_columns(inst) > ell) throw std::invalid_argument("narrow strip: more than ell grid columns");
      const auto& gp = inst.as<GridPaths>();
      Graph g = intersection_graph(inst);
      return detail::contact_row_decomposition(
          g,
          [&](Vertex u, Vertex v) {
            return first_common_point(gp.paths[static_cast<std::size_t>(u)], gp.paths[static_cast<std::size_t>(v)])->y;
          },
          [&](Vertex v) { return vertical_span(gp.paths[static_cast<std::size_t>(v)]).first; });
    }
    case Kind::kRectangles: {
      if (grid_columns(inst) > ell) throw std::invalid_argument("narrow strip: more than ell grid columns");
      const auto& rs = inst.as<Rectangles>().rects;
      for (const auto& r : rs)
        if (r.x2 - r.x1 < 1) throw std::invalid_argument("narrow strip: rectangle narrower than one grid column");
      Graph g = intersection_graph(inst);
      return detail::contact_row_decomposition(
          g,
          [&](Vertex u, Vertex v) {
            return std::max(rs[static_cast<std::size_t>(u)].y1, rs[static_cast<std::size_t>(v)].y1);
          },
          [&](Vertex v) { return rs[static_cast<std::size_t>(v)].y1; });
    }
    case Kind::kUnitDisks: {
      const auto& ud = inst.as<UnitDisks>();
      const Rational c = ud.radius;
      if (c < 1) throw std::invalid_argument("narrow strip: disk radius must be >= 1");
      if (n > 0) {
        Rational lo = ud.centers[0][0] - c, hi = ud.centers[0][0] + c;
        for (const auto& p : ud.centers) {
          lo = std::min(lo, Rational(p[0] - c));
          hi = std::max(hi, Rational(p[0] + c));
        }
        if (ceil_of(hi) - floor_of(lo) > ell - 1)
          throw std::invalid_argument("narrow strip: disks do not fit in an integral box of width ell-1");
      }
      return detail::strip_decomposition(n, [&](Vertex v) {
        const Rational& y = ud.centers[static_cast<std::size_t>(v)][1];
        return std::make_pair(to_long(ceil_of((y - c) / c)), to_long(floor_of((y + c) / c)) + 1);
      });
    }
    default:
      throw std::invalid_argument(std::string("narrow strip: unsupported kind ") + to_string(inst.kind()));
  }
}

}  // namespace tdfrag
