#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdfrag/family.hpp"
#include "tdfrag/geometry.hpp"

namespace tdfrag {

// Random source for every generator: std::mt19937_64 seeded with the spec's
// seed. Sampling is done by hand (rejection on raw 64-bit draws) because the
// standard distributions are implementation-defined.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline long uniform_int(Rng& rng, long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  return lo + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

// Uniform over the grid {lo + k/den} inside [lo, hi].
inline Rational uniform_rational(Rng& rng, const Rational& lo, const Rational& hi, long den) {
  long steps = to_long(floor_of((hi - lo) * den));
  return lo + frac(uniform_int(rng, 0, steps), den);
}

struct GenSpec {
  Kind kind = Kind::kUnitDisks;
  int n = 10;
  std::uint64_t seed = 1;
  int dim = 2;             // disks / boxes
  std::optional<Rational> width;   // region [0,width] x [0,height]; unset sides come from density
  std::optional<Rational> height;
  Rational density = 1;    // objects per unit area when the region is derived
  Rational radius = 1;     // unit disks
  Rational min_size = 1;   // disk radius / box side / rectangle side range
  Rational max_size = 2;
  int max_horizontal = 2;  // grid paths: length of the horizontal part
  int max_vertical = 3;    // grid paths: length of one vertical run
  int max_bends = 2;
  Contact contact = Contact::kVertex;
  long denominator = 1024;  // coordinates snap to multiples of 1/denominator
  bool random_weights = false;  // weights k/8 with k in 1..16

  void validate() const {
    if (n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
    if (denominator < 1 || denominator > (1L << 16)) throw std::invalid_argument("GenSpec: denominator must be in [1, 2^16]");
    if ((width && *width < 0) || (height && *height < 0) || density <= 0) throw std::invalid_argument("GenSpec: bad region");
    if (min_size <= 0 || min_size > max_size) throw std::invalid_argument("GenSpec: bad size range");
    if (radius <= 0) throw std::invalid_argument("GenSpec: radius must be positive");
    if (dim < 2) throw std::invalid_argument("GenSpec: dim must be >= 2");
    if (kind == Kind::kGridPaths) {
      if (max_horizontal < 0 || max_vertical < 1 || max_bends < 0) throw std::invalid_argument("GenSpec: bad path budgets");
      if (max_horizontal == 0 && max_bends > 0)
        throw std::invalid_argument("GenSpec: bends need horizontal budget (max_horizontal = 0)");
    }
    if (kind == Kind::kRectangles && (min_size.get_den() != 1 || max_size.get_den() != 1))
      throw std::invalid_argument("GenSpec: rectangle sides must be integers");
  }

  // Side lengths of the sampling region.
  std::pair<Rational, Rational> region() const {
    if (width && height) return {*width, *height};
    Rational area = Rational(n) / density;
    Integer side;
    Integer a = ceil_of(area);
    mpz_sqrt(side.get_mpz_t(), a.get_mpz_t());
    if (side * side < a) side += 1;
    Rational w = width ? *width : Rational(side);
    Rational h = height ? *height : Rational(side);
    return {w, h};
  }
};

inline GeometricInstance generate(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  auto [w, h] = spec.region();
  const long den = spec.denominator;
  GeometricInstance inst;
  switch (spec.kind) {
    case Kind::kUnitDisks: {
      UnitDisks u{spec.radius, {}};
      for (int i = 0; i < spec.n; ++i) {
        Rational x = uniform_rational(rng, 0, w, den);
        Rational y = uniform_rational(rng, 0, h, den);
        u.centers.push_back({x, y});
      }
      inst.objects = std::move(u);
      break;
    }
    case Kind::kDisks: {
      Disks u{spec.dim, {}, {}};
      for (int i = 0; i < spec.n; ++i) {
        PointD c;
        for (int j = 0; j < spec.dim; ++j) c.push_back(uniform_rational(rng, 0, j == 1 ? h : w, den));
        u.centers.push_back(std::move(c));
        u.radii.push_back(uniform_rational(rng, spec.min_size, spec.max_size, den));
      }
      inst.objects = std::move(u);
      break;
    }
    case Kind::kBoxes: {
      Boxes u{spec.dim, {}, {}};
      for (int i = 0; i < spec.n; ++i) {
        PointD lo, hi;
        for (int j = 0; j < spec.dim; ++j) {
          Rational a = uniform_rational(rng, 0, j == 1 ? h : w, den);
          lo.push_back(a);
          hi.push_back(a + uniform_rational(rng, spec.min_size, spec.max_size, den));
        }
        u.lo.push_back(std::move(lo));
        u.hi.push_back(std::move(hi));
      }
      inst.objects = std::move(u);
      break;
    }
    case Kind::kRectangles: {
      Rectangles u;
      const long smin = to_long(spec.min_size.get_num()), smax = to_long(spec.max_size.get_num());
      const long wx = to_long(floor_of(w)), hy = to_long(floor_of(h));
      for (int i = 0; i < spec.n; ++i) {
        long x = uniform_int(rng, 0, wx), y = uniform_int(rng, 0, hy);
        long a = uniform_int(rng, smin, smax), b = uniform_int(rng, smin, smax);
        u.rects.push_back({x, y, x + a, y + b});
      }
      inst.objects = std::move(u);
      break;
    }
    case Kind::kGridPaths: {
      GridPaths u{spec.contact, {}};
      const long wx = to_long(floor_of(w)), hy = to_long(floor_of(h));
      for (int i = 0; i < spec.n; ++i) {
        GridPoint p{uniform_int(rng, 0, wx), uniform_int(rng, 0, hy)};
        // x stays within [x0, x0 + max_horizontal]; vertical runs go upward
        const long x0 = p.x, x1 = p.x + spec.max_horizontal;
        int bends = static_cast<int>(uniform_int(rng, 0, spec.max_bends));
        bool horizontal = spec.max_horizontal > 0 && uniform_int(rng, 0, 1) == 1;
        std::vector<GridPoint> path{p};
        for (int s = 0; s <= bends; ++s, horizontal = !horizontal) {
          GridPoint q = p;
          if (horizontal) {
            // any other column in the window
            long nx = uniform_int(rng, x0, x1 - 1);
            if (nx >= p.x) ++nx;
            q.x = nx;
          } else {
            q.y += uniform_int(rng, 1, spec.max_vertical);
          }
          path.push_back(q);
          p = q;
        }
        u.paths.push_back(std::move(path));
      }
      inst.objects = std::move(u);
      break;
    }
  }
  if (spec.random_weights)
    for (int i = 0; i < spec.n; ++i) inst.weights.push_back(frac(uniform_int(rng, 1, 16), 8));
  validate_instance(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Fixtures

struct Fixture {
  std::string name;
  std::string description;
  Graph graph;
  std::optional<GeometricInstance> instance;
  Rational mwis;  // optimum under unit weights, checked by hand
};

inline std::vector<std::string> fixture_names() {
  return {"c5", "k33", "p<n>", "tangent_chain_10", "k44_vpg"};
}

inline Fixture fixture(const std::string& name) {
  if (name == "c5") return {name, "5-cycle", cycle_graph(5), std::nullopt, 2};
  if (name == "k33") return {name, "complete bipartite K_{3,3}", complete_bipartite_graph(3, 3), std::nullopt, 3};
  if (name.size() > 1 && name[0] == 'p' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    int n = std::stoi(name.substr(1));
    if (n < 1 || n > 100000) throw std::invalid_argument("path fixture size out of range: " + name);
    return {name, "path on " + std::to_string(n) + " vertices", path_graph(n), std::nullopt, (n + 1) / 2};
  }
  if (name == "tangent_chain_10") {
    UnitDisks u{1, {}};
    for (int i = 0; i < 10; ++i) u.centers.push_back({Rational(2 * i), Rational(0)});
    GeometricInstance inst{std::move(u), {}};
    Graph g = intersection_graph(inst);
    return {name, "ten unit-radius disks in a row, consecutive ones tangent", std::move(g), std::move(inst), 5};
  }
  if (name == "k44_vpg") {
    GridPaths gp{Contact::kVertex, {}};
    for (long y = 0; y <= 6; y += 2) gp.paths.push_back({{0, y}, {7, y}});
    for (long x = 1; x <= 7; x += 2) gp.paths.push_back({{x, 0}, {x, 6}});
    GeometricInstance inst{std::move(gp), {}};
    Graph g = intersection_graph(inst);
    return {name, "grid paths realizing K_{4,4}: four rows crossed by four columns", std::move(g), std::move(inst), 4};
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace tdfrag
