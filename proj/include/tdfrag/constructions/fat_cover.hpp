#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "tdfrag/cover.hpp"
#include "tdfrag/geometry.hpp"

namespace tdfrag {

// f(r0) = 2 * ceil(1 / (1 - (1 - 1/r0)^(1/d))), evaluated exactly: the
// ceiling is the least integer q with (1 - 1/q)^d >= 1 - 1/r0.
inline int fat_grid_ratio(int r0, int d) {
  if (r0 < 2) throw std::invalid_argument("r0 must be >= 2");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  const Rational target = 1 - frac(1, r0);
  for (int q = 2;; ++q)
    if (rational_pow(1 - frac(1, q), static_cast<unsigned long>(d)) >= target) return 2 * q;
}

// Fatness profile read off the instance: balls use 3^d d!, boxes use the
// largest aspect ratio present.
inline FatnessProfile instance_fatness(const GeometricInstance& inst) {
  auto shapes = fat_shapes(inst);
  int d = shapes.empty() ? 2 : shapes.front().dim();
  if (inst.kind() == Kind::kUnitDisks || inst.kind() == Kind::kDisks) return fatness_constant(FatKind::kBalls, d);
  Rational t = 1;
  for (const auto& s : shapes) {
    Rational lo = s.b[0] - s.a[0], hi = lo;
    for (std::size_t j = 1; j < s.a.size(); ++j) {
      lo = std::min(lo, Rational(s.b[j] - s.a[j]));
      hi = std::max(hi, Rational(s.b[j] - s.a[j]));
    }
    if (lo == 0) throw std::invalid_argument("degenerate box: unbounded aspect ratio");
    t = std::max(t, Rational(hi / lo));
  }
  return fatness_constant(FatKind::kBoxes, d, t);
}

struct FatCover {
  GeneralCover cover;
  int r = 0;          // grid ratio f(r0)
  int k0 = 0;         // largest rank
  Rational scale;     // factor applied by rescale_to_unit
  Integer alpha_bound;  // c * r^(2d)
  std::vector<int> rank;
  std::vector<std::vector<int>> shifts;  // y per element, row-major order
};

namespace detail {

struct RankedGrid {
  int r, k0, d;
  std::vector<Rational> period;  // (1/r)^(i-1), i = 0..k0
  std::vector<Rational> step;    // sum_{k=i}^{k0+1} (1/r)^k

  RankedGrid(int r_, int k0_, int d_) : r(r_), k0(k0_), d(d_) {
    const Rational inv = frac(1, r);
    for (int i = 0; i <= k0; ++i) {
      period.push_back(r * rational_pow(inv, static_cast<unsigned long>(i)));
      Rational s = 0;
      for (int k = i; k <= k0 + 1; ++k) s += rational_pow(inv, static_cast<unsigned long>(k));
      step.push_back(s);
    }
  }

  Rational offset(int i, int yj) const { return step[static_cast<std::size_t>(i)] * yj; }

  // Does some rank-i hyperplane orthogonal to axis j meet [lo, hi]?
  bool hits(int i, int yj, const Rational& lo, const Rational& hi) const {
    const Rational& p = period[static_cast<std::size_t>(i)];
    Rational off = offset(i, yj);
    Integer m = ceil_of((lo - off) / p);
    return Rational(m) * p + off <= hi;
  }

  long cell(int i, int yj, const Rational& x) const {
    return to_long(floor_of((x - offset(i, yj)) / period[static_cast<std::size_t>(i)]));
  }
};

}  // namespace detail

// (1 - 1/r0)-general cover of a fat family: one element per shift vector y,
// each with a quadtree-like decomposition over ranked grids. Bags collect the
// members of rank <= i meeting the closed box B^i(y, m).
inline FatCover fat_cover(const GeometricInstance& inst, const FatnessProfile& profile, int r0) {
  if (inst.kind() == Kind::kGridPaths) throw std::invalid_argument("fat_cover: grid paths are not supported");
  validate_instance(inst);
  const int n = inst.size();
  FatCover out;
  auto shapes = std::vector<FatShape>{};
  if (n > 0) {
    auto [scaled, scale] = rescale_to_unit(inst);
    out.scale = scale;
    shapes = fat_shapes(scaled);
  } else {
    out.scale = 1;
  }
  const int d = shapes.empty() ? profile.d : shapes.front().dim();
  const int r = fat_grid_ratio(r0, d);
  out.r = r;
  out.alpha_bound = profile.c;
  for (int i = 0; i < 2 * d; ++i) out.alpha_bound *= r;
  out.cover.beta = 1 - frac(1, r0);

  // rank: (1/r)^k >= s > (1/r)^(k+1)
  out.rank.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    Rational s = shapes[static_cast<std::size_t>(v)].size();
    Rational p = 1;
    int k = 0;
    while (s <= p / r) {
      p /= r;
      ++k;
    }
    out.rank[static_cast<std::size_t>(v)] = k;
    out.k0 = std::max(out.k0, k);
  }
  detail::RankedGrid grid(r, out.k0, d);

  const int half = r / 2;
  std::vector<int> y(static_cast<std::size_t>(d), 0);
  while (true) {
    // C(y): members avoiding every hyperplane of their own rank
    VertexSet element;
    for (int v = 0; v < n; ++v) {
      const auto& s = shapes[static_cast<std::size_t>(v)];
      int i = out.rank[static_cast<std::size_t>(v)];
      bool hit = false;
      for (int j = 0; j < d && !hit; ++j) hit = grid.hits(i, y[static_cast<std::size_t>(j)], s.lo(j), s.hi(j));
      if (!hit) element.push_back(v);
    }

    // nodes t^i(y, m) for nonempty A^i(y, m)
    using Key = std::pair<int, std::vector<long>>;
    std::map<Key, int> node_of;
    for (Vertex v : element) {
      const auto& s = shapes[static_cast<std::size_t>(v)];
      int i = out.rank[static_cast<std::size_t>(v)];
      std::vector<long> m(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) m[static_cast<std::size_t>(j)] = grid.cell(i, y[static_cast<std::size_t>(j)], s.lo(j));
      node_of.emplace(Key{i, m}, 0);
    }
    TreeDecomposition td;
    td.bags.emplace_back();  // glue node with empty bag
    for (auto& [key, id] : node_of) {
      id = td.node_count();
      const auto& [i, m] = key;
      const Rational& side = grid.period[static_cast<std::size_t>(i)];
      PointD corner(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        corner[static_cast<std::size_t>(j)] = Rational(m[static_cast<std::size_t>(j)]) * side + grid.offset(i, y[static_cast<std::size_t>(j)]);
      VertexSet bag;
      for (Vertex v : element)
        if (out.rank[static_cast<std::size_t>(v)] <= i && shapes[static_cast<std::size_t>(v)].meets_cube(corner, side))
          bag.push_back(v);
      td.bags.push_back(std::move(bag));
    }
    // parent: deepest coarser existing box containing this one
    for (const auto& [key, id] : node_of) {
      const auto& [i, m] = key;
      const Rational& side = grid.period[static_cast<std::size_t>(i)];
      PointD center(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j)
        center[static_cast<std::size_t>(j)] =
            Rational(m[static_cast<std::size_t>(j)]) * side + grid.offset(i, y[static_cast<std::size_t>(j)]) + side / 2;
      int parent = 0;
      for (int i1 = i - 1; i1 >= 0 && parent == 0; --i1) {
        std::vector<long> m1(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
          m1[static_cast<std::size_t>(j)] = grid.cell(i1, y[static_cast<std::size_t>(j)], center[static_cast<std::size_t>(j)]);
        auto it = node_of.find(Key{i1, m1});
        if (it != node_of.end()) parent = it->second;
      }
      td.tree_edges.emplace_back(parent, id);
    }
    out.cover.elements.push_back(std::move(element));
    out.cover.decomps.push_back(std::move(td));
    out.shifts.push_back(y);

    int j = d - 1;
    while (j >= 0 && ++y[static_cast<std::size_t>(j)] == half) y[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  return out;
}

}  // namespace tdfrag
