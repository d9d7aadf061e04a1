#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tdfrag/graph.hpp"
#include "tdfrag/rational.hpp"

namespace tdfrag {

using PointD = std::vector<Rational>;  // point in R^d

struct GridPoint {
  long x = 0, y = 0;
  auto operator<=>(const GridPoint&) const = default;
};

// Contact mode for grid paths: shared grid-edge (EPG) or shared grid-point (VPG).
enum class Contact { kEdge, kVertex };

// Closed disks of one common radius, encoded by their centers.
struct UnitDisks {
  Rational radius;
  std::vector<PointD> centers;  // 2-d
};

// Closed balls in R^d with individual radii.
struct Disks {
  int dim = 2;
  std::vector<PointD> centers;
  std::vector<Rational> radii;
};

// Closed axis-aligned rectangles with corners on the integer grid.
struct Rect {
  long x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // x1 <= x2, y1 <= y2
  auto operator<=>(const Rect&) const = default;
};
struct Rectangles {
  std::vector<Rect> rects;
};

// Closed axis-aligned boxes in R^d.
struct Boxes {
  int dim = 2;
  std::vector<PointD> lo, hi;
};

// Paths on the integer grid, each given by endpoints and bend-points s(P).
struct GridPaths {
  Contact contact = Contact::kVertex;
  std::vector<std::vector<GridPoint>> paths;
};

enum class Kind { kUnitDisks, kDisks, kRectangles, kBoxes, kGridPaths };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::kUnitDisks: return "unit_disks";
    case Kind::kDisks: return "disks";
    case Kind::kRectangles: return "rectangles";
    case Kind::kBoxes: return "boxes_d";
    case Kind::kGridPaths: return "grid_paths";
  }
  return "unknown";
}

inline Kind parse_kind(const std::string& s) {
  if (s == "unit_disks") return Kind::kUnitDisks;
  if (s == "disks") return Kind::kDisks;
  if (s == "rectangles") return Kind::kRectangles;
  if (s == "boxes_d" || s == "boxes") return Kind::kBoxes;
  if (s == "grid_paths") return Kind::kGridPaths;
  throw std::invalid_argument("unknown instance kind: " + s);
}

using Objects = std::variant<UnitDisks, Disks, Rectangles, Boxes, GridPaths>;

struct GeometricInstance {
  Objects objects;
  std::vector<Rational> weights;  // empty means unit weights

  Kind kind() const { return static_cast<Kind>(objects.index()); }

  int size() const {
    return std::visit(
        [](const auto& o) -> int {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, UnitDisks> || std::is_same_v<T, Disks>)
            return static_cast<int>(o.centers.size());
          else if constexpr (std::is_same_v<T, Rectangles>)
            return static_cast<int>(o.rects.size());
          else if constexpr (std::is_same_v<T, Boxes>)
            return static_cast<int>(o.lo.size());
          else
            return static_cast<int>(o.paths.size());
        },
        objects);
  }

  template <typename T>
  const T& as() const {
    if (!std::holds_alternative<T>(objects))
      throw std::invalid_argument(std::string("instance is not of the expected kind (got ") + to_string(kind()) + ")");
    return std::get<T>(objects);
  }

  WeightMap weight_map() const {
    if (weights.empty()) return WeightMap::uniform(static_cast<std::size_t>(size()));
    return WeightMap(weights);
  }
};

// ---------------------------------------------------------------------------
// Grid-path helpers

struct Segment {
  GridPoint a, b;  // a <= b lexicographically; axis-parallel
  bool horizontal() const { return a.y == b.y && a.x != b.x; }
  bool vertical() const { return a.x == b.x && a.y != b.y; }
};

inline std::vector<Segment> segments_of(const std::vector<GridPoint>& path) {
  std::vector<Segment> out;
  if (path.size() == 1) out.push_back({path[0], path[0]});
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    GridPoint a = path[i], b = path[i + 1];
    if (b < a) std::swap(a, b);
    out.push_back({a, b});
  }
  return out;
}

// Horizontal part h(P): projection of the path onto the x-axis.
inline std::pair<long, long> horizontal_part(const std::vector<GridPoint>& path) {
  if (path.empty()) throw std::invalid_argument("empty grid path");
  long lo = path[0].x, hi = path[0].x;
  for (const auto& p : path) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  return {lo, hi};
}

inline std::pair<long, long> vertical_span(const std::vector<GridPoint>& path) {
  long lo = path.at(0).y, hi = path.at(0).y;
  for (const auto& p : path) {
    lo = std::min(lo, p.y);
    hi = std::max(hi, p.y);
  }
  return {lo, hi};
}

// Every grid point on the path, sorted and deduplicated.
inline std::vector<GridPoint> grid_points_of(const std::vector<GridPoint>& path) {
  std::vector<GridPoint> pts;
  for (const auto& s : segments_of(path)) {
    if (s.a.x == s.b.x)
      for (long y = s.a.y; y <= s.b.y; ++y) pts.push_back({s.a.x, y});
    else
      for (long x = s.a.x; x <= s.b.x; ++x) pts.push_back({x, s.a.y});
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Lexicographically smallest grid point shared by two segments, if any.
inline std::optional<GridPoint> segment_meet(const Segment& s, const Segment& t) {
  long x1 = std::max(std::min(s.a.x, s.b.x), std::min(t.a.x, t.b.x));
  long x2 = std::min(std::max(s.a.x, s.b.x), std::max(t.a.x, t.b.x));
  long y1 = std::max(std::min(s.a.y, s.b.y), std::min(t.a.y, t.b.y));
  long y2 = std::min(std::max(s.a.y, s.b.y), std::max(t.a.y, t.b.y));
  if (x1 > x2 || y1 > y2) return std::nullopt;
  return GridPoint{x1, y1};
}

// True when the segments overlap in at least one unit grid-edge.
inline bool segments_share_edge(const Segment& s, const Segment& t) {
  if (s.horizontal() && t.horizontal() && s.a.y == t.a.y)
    return std::min(s.b.x, t.b.x) - std::max(s.a.x, t.a.x) >= 1;
  if (s.vertical() && t.vertical() && s.a.x == t.a.x)
    return std::min(s.b.y, t.b.y) - std::max(s.a.y, t.a.y) >= 1;
  return false;
}

inline std::optional<GridPoint> first_common_point(const std::vector<GridPoint>& p, const std::vector<GridPoint>& q) {
  std::optional<GridPoint> best;
  for (const auto& s : segments_of(p))
    for (const auto& t : segments_of(q))
      if (auto m = segment_meet(s, t); m && (!best || *m < *best)) best = m;
  return best;
}

inline bool paths_intersect(const std::vector<GridPoint>& p, const std::vector<GridPoint>& q, Contact mode) {
  for (const auto& s : segments_of(p))
    for (const auto& t : segments_of(q)) {
      if (mode == Contact::kVertex ? segment_meet(s, t).has_value() : segments_share_edge(s, t)) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Predicates

inline Rational squared_distance(const PointD& a, const PointD& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline bool balls_intersect(const PointD& c1, const Rational& r1, const PointD& c2, const Rational& r2) {
  Rational reach = r1 + r2;
  return squared_distance(c1, c2) <= reach * reach;
}

inline bool boxes_intersect(const PointD& lo1, const PointD& hi1, const PointD& lo2, const PointD& hi2) {
  for (std::size_t j = 0; j < lo1.size(); ++j)
    if (hi1[j] < lo2[j] || hi2[j] < lo1[j]) return false;
  return true;
}

inline bool rects_intersect(const Rect& a, const Rect& b) {
  return a.x1 <= b.x2 && b.x1 <= a.x2 && a.y1 <= b.y2 && b.y1 <= a.y2;
}

// Exact intersection test between objects i and j of the instance.
inline bool intersects(const GeometricInstance& inst, int i, int j) {
  auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, UnitDisks>)
          return balls_intersect(o.centers[ui], o.radius, o.centers[uj], o.radius);
        else if constexpr (std::is_same_v<T, Disks>)
          return balls_intersect(o.centers[ui], o.radii[ui], o.centers[uj], o.radii[uj]);
        else if constexpr (std::is_same_v<T, Rectangles>)
          return rects_intersect(o.rects[ui], o.rects[uj]);
        else if constexpr (std::is_same_v<T, Boxes>)
          return boxes_intersect(o.lo[ui], o.hi[ui], o.lo[uj], o.hi[uj]);
        else
          return paths_intersect(o.paths[ui], o.paths[uj], o.contact);
      },
      inst.objects);
}

// Structural checks on an instance; throws std::invalid_argument.
inline void validate_instance(const GeometricInstance& inst) {
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        auto bad = [](const std::string& m) { throw std::invalid_argument(m); };
        if constexpr (std::is_same_v<T, UnitDisks>) {
          if (o.radius <= 0) bad("unit disk radius must be positive");
          for (const auto& c : o.centers)
            if (c.size() != 2) bad("unit disk centers must be 2-dimensional");
        } else if constexpr (std::is_same_v<T, Disks>) {
          if (o.dim < 2) bad("dimension must be >= 2");
          if (o.radii.size() != o.centers.size()) bad("disk radius count mismatch");
          for (const auto& c : o.centers)
            if (static_cast<int>(c.size()) != o.dim) bad("disk center dimension mismatch");
          for (const auto& r : o.radii)
            if (r < 0) bad("negative disk radius");
        } else if constexpr (std::is_same_v<T, Rectangles>) {
          for (const auto& r : o.rects)
            if (r.x1 > r.x2 || r.y1 > r.y2) bad("rectangle corners out of order");
        } else if constexpr (std::is_same_v<T, Boxes>) {
          if (o.dim < 2) bad("dimension must be >= 2");
          if (o.lo.size() != o.hi.size()) bad("box corner count mismatch");
          for (std::size_t i = 0; i < o.lo.size(); ++i) {
            if (static_cast<int>(o.lo[i].size()) != o.dim || static_cast<int>(o.hi[i].size()) != o.dim)
              bad("box dimension mismatch");
            for (int j = 0; j < o.dim; ++j)
              if (o.lo[i][static_cast<std::size_t>(j)] > o.hi[i][static_cast<std::size_t>(j)]) bad("box corners out of order");
          }
        } else {
          for (const auto& p : o.paths) {
            if (p.empty()) bad("empty grid path");
            for (std::size_t i = 0; i + 1 < p.size(); ++i) {
              bool axis = (p[i].x == p[i + 1].x) != (p[i].y == p[i + 1].y);
              if (!axis) bad("grid path steps must be axis-parallel and non-degenerate");
            }
          }
        }
      },
      inst.objects);
  if (!inst.weights.empty()) {
    if (inst.weights.size() != static_cast<std::size_t>(inst.size())) throw std::invalid_argument("weight count mismatch");
    for (const auto& w : inst.weights)
      if (w < 0) throw std::invalid_argument("negative weight");
  }
}

// One vertex per object, edge iff the closed objects intersect.
inline Graph intersection_graph(const GeometricInstance& inst) {
  validate_instance(inst);
  const int n = inst.size();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersects(inst, i, j)) edges.emplace_back(i, j);
  return build_graph(n, edges);
}

// ---------------------------------------------------------------------------
// Fatness

enum class FatKind { kBalls, kBoxes };

struct FatnessProfile {
  int d = 2;
  Integer c = 1;  // number of stabbing points per box
};

// Fatness constant: 3^d d! for balls, ceil((3 t sqrt(d))^d) for boxes of
// aspect ratio at most t. The box value is computed exactly as the least
// integer c with c^2 >= (9 t^2 d)^d.
inline FatnessProfile fatness_constant(FatKind kind, int d, const Rational& t = 1) {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  FatnessProfile p;
  p.d = d;
  if (kind == FatKind::kBalls) {
    Integer c = 1;
    for (int i = 1; i <= d; ++i) c *= 3 * i;
    p.c = c;
    return p;
  }
  if (t < 1) throw std::invalid_argument("aspect ratio must be >= 1");
  Rational x = rational_pow(Rational(9) * t * t * d, static_cast<unsigned long>(d));
  Integer y = ceil_of(x);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), y.get_mpz_t());
  if (s * s < y) s += 1;
  p.c = s;
  return p;
}

// ---------------------------------------------------------------------------
// Generic fat shapes (balls or boxes in R^d) used by rescaling and fat covers.

struct FatShape {
  bool ball = true;
  PointD a;      // center (ball) or low corner (box)
  PointD b;      // high corner (box only)
  Rational radius;

  int dim() const { return static_cast<int>(a.size()); }

  Rational size() const {
    if (ball) return 2 * radius;
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s = std::max(s, Rational(b[j] - a[j]));
    return s;
  }
  Rational lo(int j) const { return ball ? a[static_cast<std::size_t>(j)] - radius : a[static_cast<std::size_t>(j)]; }
  Rational hi(int j) const { return ball ? a[static_cast<std::size_t>(j)] + radius : b[static_cast<std::size_t>(j)]; }

  // A point inside the shape.
  PointD anchor() const {
    if (ball) return a;
    PointD p(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) p[j] = (a[j] + b[j]) / 2;
    return p;
  }

  bool meets_hyperplane(int j, const Rational& coord) const { return lo(j) <= coord && coord <= hi(j); }

  // Intersection with the closed cube prod_j [corner_j, corner_j + side].
  bool meets_cube(const PointD& corner, const Rational& side) const {
    if (!ball) {
      for (std::size_t j = 0; j < a.size(); ++j)
        if (b[j] < corner[j] || corner[j] + side < a[j]) return false;
      return true;
    }
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      Rational d = 0;
      if (a[j] < corner[j]) d = corner[j] - a[j];
      else if (a[j] > corner[j] + side) d = a[j] - corner[j] - side;
      s += d * d;
    }
    return s <= radius * radius;
  }

  bool meets(const FatShape& o) const {
    if (ball && o.ball) return balls_intersect(a, radius, o.a, o.radius);
    if (!ball && !o.ball) return boxes_intersect(a, b, o.a, o.b);
    const FatShape& ball_s = ball ? *this : o;
    const FatShape& box_s = ball ? o : *this;
    Rational s = 0;
    for (std::size_t j = 0; j < ball_s.a.size(); ++j) {
      Rational d = 0;
      if (ball_s.a[j] < box_s.a[j]) d = box_s.a[j] - ball_s.a[j];
      else if (ball_s.a[j] > box_s.b[j]) d = ball_s.a[j] - box_s.b[j];
      s += d * d;
    }
    return s <= ball_s.radius * ball_s.radius;
  }
};

// Converts an instance of a fat kind into generic shapes.
inline std::vector<FatShape> fat_shapes(const GeometricInstance& inst) {
  std::vector<FatShape> out;
  switch (inst.kind()) {
    case Kind::kUnitDisks: {
      const auto& o = inst.as<UnitDisks>();
      for (const auto& c : o.centers) out.push_back({true, c, {}, o.radius});
      break;
    }
    case Kind::kDisks: {
      const auto& o = inst.as<Disks>();
      for (std::size_t i = 0; i < o.centers.size(); ++i) out.push_back({true, o.centers[i], {}, o.radii[i]});
      break;
    }
    case Kind::kRectangles: {
      for (const auto& r : inst.as<Rectangles>().rects)
        out.push_back({false, {Rational(r.x1), Rational(r.y1)}, {Rational(r.x2), Rational(r.y2)}, 0});
      break;
    }
    case Kind::kBoxes: {
      const auto& o = inst.as<Boxes>();
      for (std::size_t i = 0; i < o.lo.size(); ++i) out.push_back({false, o.lo[i], o.hi[i], 0});
      break;
    }
    case Kind::kGridPaths:
      throw std::invalid_argument("grid paths are not a fat object family");
  }
  return out;
}

// Divides all coordinates by the largest object size so every size is <= 1.
// Returns the rescaled instance and the factor applied. Rectangles come
// back as boxes, since their corners leave the integer grid.
inline std::pair<GeometricInstance, Rational> rescale_to_unit(const GeometricInstance& inst) {
  validate_instance(inst);
  if (inst.size() == 0) throw std::invalid_argument("rescale_to_unit: empty instance");
  auto shapes = fat_shapes(inst);
  Rational max_size = 0;
  for (const auto& s : shapes) {
    Rational sz = s.size();
    if (sz == 0) throw std::invalid_argument("rescale_to_unit: zero-size object");
    max_size = std::max(max_size, sz);
  }
  Rational scale = 1 / max_size;
  auto scaled = [&](const PointD& p) {
    PointD q = p;
    for (auto& x : q) x *= scale;
    return q;
  };
  GeometricInstance out;
  out.weights = inst.weights;
  switch (inst.kind()) {
    case Kind::kUnitDisks: {
      const auto& o = inst.as<UnitDisks>();
      UnitDisks u{o.radius * scale, {}};
      for (const auto& c : o.centers) u.centers.push_back(scaled(c));
      out.objects = std::move(u);
      break;
    }
    case Kind::kDisks: {
      const auto& o = inst.as<Disks>();
      Disks u{o.dim, {}, {}};
      for (std::size_t i = 0; i < o.centers.size(); ++i) {
        u.centers.push_back(scaled(o.centers[i]));
        u.radii.push_back(o.radii[i] * scale);
      }
      out.objects = std::move(u);
      break;
    }
    case Kind::kRectangles:
    case Kind::kBoxes: {
      Boxes u{shapes.front().dim(), {}, {}};
      for (const auto& s : shapes) {
        u.lo.push_back(scaled(s.a));
        u.hi.push_back(scaled(s.b));
      }
      out.objects = std::move(u);
      break;
    }
    case Kind::kGridPaths:
      throw std::invalid_argument("rescale_to_unit: unsupported kind");
  }
  return {std::move(out), scale};
}

}  // namespace tdfrag
