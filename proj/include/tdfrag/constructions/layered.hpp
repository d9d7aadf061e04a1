#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "tdfrag/constructions/rows.hpp"
#include "tdfrag/geometry.hpp"

namespace tdfrag {

struct LayeredDecomposition {
  TreeDecomposition td;
  Layering lay;
};

// Unit disks: bags are the disks meeting each closed vertical strip of width
// one diameter; the layer of a disk is the horizontal strip holding its
// center (lowest index on a boundary). Per-cell independence is at most 8.
inline LayeredDecomposition unit_disk_layered_decomposition(const GeometricInstance& inst) {
  validate_instance(inst);
  const auto& disks = inst.as<UnitDisks>();
  const int n = inst.size();
  if (n == 0) throw std::invalid_argument("unit_disk_layered_decomposition: empty instance");
  const Rational c = disks.radius;
  const Rational unit = 2 * c;  // strip width after scaling radius to 1/2

  LayeredDecomposition out;
  out.td = detail::strip_decomposition(n, [&](Vertex v) {
    const Rational& x = disks.centers[static_cast<std::size_t>(v)][0];
    long a = to_long(ceil_of((x - c) / unit));
    long b = to_long(floor_of((x + c) / unit)) + 1;
    return std::make_pair(a, b);
  });
  std::vector<int> layer(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    layer[static_cast<std::size_t>(v)] =
        static_cast<int>(to_long(ceil_of(disks.centers[static_cast<std::size_t>(v)][1] / unit)));
  out.lay = Layering::normalized(std::move(layer));
  return out;
}

inline int unit_disk_cell_bound() { return 8; }

// Grid paths whose horizontal part has length at most ell-1: rows of contact
// points with interval completion, layers are vertical strips of width
// 2*ell (lowest strip meeting the path). Per-cell independence <= 4*ell-1.
inline LayeredDecomposition grid_path_layered_decomposition(const GeometricInstance& inst, int ell) {
  validate_instance(inst);
  const auto& gp = inst.as<GridPaths>();
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  const int n = inst.size();
  for (const auto& p : gp.paths) {
    auto [lo, hi] = horizontal_part(p);
    if (hi - lo > ell - 1) throw std::invalid_argument("grid path horizontal part longer than ell-1");
  }
  Graph g = intersection_graph(inst);
  LayeredDecomposition out;
  out.td = detail::contact_row_decomposition(
      g,
      [&](Vertex u, Vertex v) {
        return first_common_point(gp.paths[static_cast<std::size_t>(u)], gp.paths[static_cast<std::size_t>(v)])->y;
      },
      [&](Vertex v) { return vertical_span(gp.paths[static_cast<std::size_t>(v)]).first; });
  std::vector<int> layer(static_cast<std::size_t>(n));
  const Integer width = 2 * ell;
  for (Vertex v = 0; v < n; ++v) {
    long xmin = horizontal_part(gp.paths[static_cast<std::size_t>(v)]).first;
    layer[static_cast<std::size_t>(v)] = static_cast<int>(to_long(ceil_of(Rational(xmin) / Rational(width))) - 1);
  }
  out.lay = Layering::normalized(std::move(layer));
  return out;
}

inline int grid_path_cell_bound(int ell) { return 4 * ell - 1; }

// Rectangles: same strip scheme with strips as wide as the widest rectangle
// and layers as tall as the tallest one (by bottom edge). No cell bound is
// claimed; the distance-d pipeline on rectangles only needs validity.
inline LayeredDecomposition rectangle_layered_decomposition(const GeometricInstance& inst) {
  validate_instance(inst);
  const auto& rs = inst.as<Rectangles>().rects;
  const int n = inst.size();
  if (n == 0) throw std::invalid_argument("rectangle_layered_decomposition: empty instance");
  long w = 1, h = 1;
  for (const auto& r : rs) {
    w = std::max(w, r.x2 - r.x1);
    h = std::max(h, r.y2 - r.y1);
  }
  LayeredDecomposition out;
  out.td = detail::strip_decomposition(n, [&](Vertex v) {
    const Rect& r = rs[static_cast<std::size_t>(v)];
    return std::make_pair(to_long(ceil_of(frac(r.x1, w))) - 1, to_long(floor_of(frac(r.x2, w))));
  });
  std::vector<int> layer(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v)
    layer[static_cast<std::size_t>(v)] = static_cast<int>(to_long(floor_of(frac(rs[static_cast<std::size_t>(v)].y1, h))));
  out.lay = Layering::normalized(std::move(layer));
  return out;
}

}  // namespace tdfrag
