// tdfrag: decompositions, exact packing and approximation schemes for
// geometric intersection graphs.
//
//   tdfrag generate   --kind unit_disks --n 40 --seed 7 --out inst.json
//   tdfrag decompose  --input inst.json --construction unit_disk_layered
//   tdfrag solve      --input inst.json --mode ptas-cover --eps 1/4
//   tdfrag bench      --input bench.json --out table.csv
//   tdfrag fixtures   [--name c5 --out c5.json]
//
// Exit codes: 0 all verification verdicts true, 1 failure or bad input,
// 2 odd distance for ptas-distance.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdfrag/io.hpp"

using namespace tdfrag;
using io::Json;

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

struct Input {
  std::optional<GeometricInstance> geo;
  Graph g;
  WeightMap w;
  std::optional<TreeDecomposition> td;
  std::optional<Layering> lay;
  std::string digest;
};

Json fixture_json(const Fixture& fx) {
  Json j = io::graph_json(fx.graph, WeightMap::uniform(static_cast<std::size_t>(fx.graph.size())));
  auto td = TreeDecomposition::trivial(fx.graph.size());
  auto lay = Layering::single(fx.graph.size());
  j["decomposition"] = io::decomposition_json(td, &lay);
  j["name"] = fx.name;
  j["description"] = fx.description;
  j["mwis"] = io::to_json(fx.mwis);
  if (fx.instance) j["instance"] = io::instance_json(*fx.instance);
  return j;
}

Input load_input(const std::string& spec) {
  Json j;
  if (spec.rfind("fixture:", 0) == 0) {
    auto fx = fixture(spec.substr(8));
    j = fx.instance ? io::instance_json(*fx.instance) : fixture_json(fx);
  } else {
    j = io::read_json(spec);
  }
  Input in;
  in.digest = io::digest(j.dump());
  if (j.contains("kind")) {
    in.geo = io::instance_from(j);
    in.g = intersection_graph(*in.geo);
    in.w = in.geo->weight_map();
  } else if (j.contains("n")) {
    std::tie(in.g, in.w) = io::graph_from(j);
  } else {
    throw std::invalid_argument(spec + ": neither an instance (\"kind\") nor a graph (\"n\")");
  }
  if (j.contains("decomposition")) {
    in.td = io::decomposition_from(j["decomposition"]);
    in.lay = io::layering_from(j["decomposition"]);
    require_valid(in.g, *in.td);
  }
  if (j.contains("layering")) in.lay = io::layering_from(j);
  return in;
}

// --family k1 | k2 | k1k2 | explicit:<file>
std::pair<SubgraphFamily, WeightMap> build_family(const std::string& spec, const Graph& g, const WeightMap& w) {
  SubgraphFamily fam;
  std::vector<Rational> fw;
  auto add = [&](VertexSet m) {
    Rational s = 0;
    for (Vertex v : m) s += w[static_cast<std::size_t>(v)];
    fw.push_back(s);
    fam.members.push_back(std::move(m));
  };
  if (spec.rfind("explicit:", 0) == 0) {
    Json j = io::read_json(spec.substr(9));
    for (const auto& m : j.at("members")) {
      VertexSet s = m.get<VertexSet>();
      std::sort(s.begin(), s.end());
      add(std::move(s));
    }
    if (j.contains("weights")) fw = io::weights_from(j["weights"]);
  } else if (spec == "k1" || spec == "k2" || spec == "k1k2") {
    if (spec != "k2")
      for (Vertex v = 0; v < g.size(); ++v) add({v});
    if (spec != "k1")
      for (auto [u, v] : g.edges()) add({u, v});
  } else {
    throw std::invalid_argument("unknown family " + spec + " (k1, k2, k1k2, explicit:<file>)");
  }
  fam.h_max = 1;
  for (const auto& m : fam.members) fam.h_max = std::max(fam.h_max, static_cast<int>(m.size()));
  validate_family(g, fam);
  return {std::move(fam), WeightMap(std::move(fw))};
}

int r_from(const std::optional<int>& r, const std::optional<std::string>& eps, int h) {
  if (r) return *r;
  if (!eps) throw std::invalid_argument("this mode needs --r or --eps");
  Rational e = parse_rational(*eps);
  if (e <= 0 || e >= 1) throw std::invalid_argument("--eps must lie in (0,1)");
  return static_cast<int>(to_long(ceil_of(Rational(h) / e)));
}

TreeDecomposition exact_decomposition(const Input& in) {
  if (in.td) return *in.td;
  if (!in.geo) throw std::invalid_argument("exact mode on an abstract graph needs an embedded \"decomposition\"");
  switch (in.geo->kind()) {
    case Kind::kUnitDisks:
    case Kind::kRectangles:
    case Kind::kGridPaths:
      return geometric_layered(*in.geo).td;
    default:
      return TreeDecomposition::trivial(in.g.size());
  }
}

std::pair<TreeDecomposition, Layering> layered_input(const Input& in) {
  if (in.td && in.lay) return {*in.td, *in.lay};
  if (!in.geo) throw std::invalid_argument("this mode needs an embedded decomposition with a \"layering\"");
  auto ld = geometric_layered(*in.geo);
  return {ld.td, ld.lay};
}

// Pairwise check straight on the objects, sharing nothing with graph code.
bool geometric_check(const GeometricInstance& inst, const std::vector<int>& chosen) {
  for (std::size_t a = 0; a < chosen.size(); ++a)
    for (std::size_t b = a + 1; b < chosen.size(); ++b)
      if (intersects(inst, chosen[a], chosen[b])) return false;
  return true;
}

struct Options {
  std::string input, mode = "exact", family = "k1", construction, out, markdown;
  std::optional<std::string> eps, c;
  std::optional<int> r, ell;
  int d = 2;
  std::uint64_t seed = 1;
  int exact_cap = 40;
  int threads = 1;
  bool no_verify = false;
};

// ---------------------------------------------------------------------------
// solve

struct SolveOutcome {
  Json payload;
  bool verified = false;
  Json verdicts;
};

SolveOutcome run_solve(const Input& in, const Options& o) {
  auto t0 = Clock::now();
  SolveOutcome out;
  auto [fam, fw] = build_family(o.family, in.g, in.w);
  PackingInstance inst{in.g, fam, fw};
  std::vector<int> chosen;
  int distance = 1;
  if (o.mode == "exact") {
    auto sol = solve_packing(inst, exact_decomposition(in));
    chosen = sol.chosen;
    out.payload = io::solution_json(sol, ms_since(t0));
  } else if (o.mode == "ptas-cover") {
    int r = r_from(o.r, o.eps, fam.h_max);
    GeneralCover cover;
    if (in.geo && !in.td) {
      cover = geometric_cover(*in.geo, in.g, r);
    } else {
      auto [td, lay] = layered_input(in);
      cover = cover_from_layering(in.g, td, lay, r);
    }
    auto res = ptas_over_cover(inst, cover, r, o.threads);
    chosen = res.solution.chosen;
    out.payload = io::approx_json(res, ms_since(t0));
  } else if (o.mode == "ptas-shift") {
    if (!in.geo) throw std::invalid_argument("ptas-shift needs a geometric instance");
    if (o.family != "k1") throw std::invalid_argument("ptas-shift works on vertex weights only (--family k1)");
    if (!o.eps) throw std::invalid_argument("ptas-shift needs --eps");
    std::optional<Rational> c;
    if (o.c) c = parse_rational(*o.c);
    auto res = shifting_ptas(*in.geo, parse_rational(*o.eps), c, o.threads);
    chosen = res.solution.chosen;
    out.payload = io::approx_json(res, ms_since(t0));
  } else if (o.mode == "ptas-distance") {
    distance = o.d;
    if (o.d % 2 == 1 && o.d >= 3)  // reject before any work
      throw HardnessError("distance-" + std::to_string(o.d) +
                          " packing: odd distances admit no PTAS unless P = NP; use an even d");
    int r = r_from(o.r, o.eps, fam.h_max);
    auto [td, lay] = layered_input(in);
    auto res = ptas_distance_d(inst, td, lay, r, o.d, o.threads);
    chosen = res.solution.chosen;
    out.payload = io::approx_json(res, ms_since(t0));
  } else {
    throw std::invalid_argument("unknown mode " + o.mode + " (exact, ptas-cover, ptas-shift, ptas-distance)");
  }

  out.verdicts = Json::object();
  if (o.no_verify) {
    out.verdicts["skipped"] = "VERIFICATION SKIPPED (--no-verify): timing run only";
    out.verified = true;
    return out;
  }
  // recheck from scratch on a freshly built graph
  Graph fresh = in.geo ? intersection_graph(*in.geo) : in.g;
  bool ok = out.payload["verified"].get<bool>();
  bool packing = verify_packing(fresh, fam, chosen);
  out.verdicts["packing"] = packing;
  ok = ok && packing;
  if (distance > 1) {
    bool dist = verify_distance_packing(fresh, fam, chosen, distance);
    out.verdicts["distance"] = dist;
    ok = ok && dist;
  }
  if (in.geo && o.family == "k1") {
    bool geo = geometric_check(*in.geo, chosen);
    out.verdicts["geometric"] = geo;
    ok = ok && geo;
  }
  Rational total = packing_weight(fw, chosen);
  bool weight = io::rational_from(out.payload["weight"]) == total;
  out.verdicts["weight"] = weight;
  out.verified = ok && weight;
  return out;
}

Json solve_args(const Options& o) {
  Json a;
  a["input"] = o.input;
  a["mode"] = o.mode;
  a["family"] = o.family;
  if (o.eps) a["eps"] = *o.eps;
  if (o.r) a["r"] = *o.r;
  if (o.mode == "ptas-distance") a["d"] = o.d;
  if (o.c) a["c"] = *o.c;
  a["seed"] = o.seed;
  a["threads"] = o.threads;
  a["verify"] = !o.no_verify;
  return a;
}

int cmd_solve(const Options& o) {
  auto t0 = Clock::now();
  Input in = load_input(o.input);
  long load_ms = ms_since(t0);
  auto t1 = Clock::now();
  auto out = run_solve(in, o);
  long solve_ms = ms_since(t1);
  Json report;
  report["command"] = "solve";
  report["args"] = solve_args(o);
  report["instance_digest"] = in.digest;
  report["n"] = in.g.size();
  report["result"] = out.payload;
  report["verification"] = out.verdicts;
  report["timings_ms"] = {{"load", load_ms}, {"solve", solve_ms}};
  report["result_digest"] = io::digest(io::strip_timings(out.payload).dump());
  // the file carries no timings so reruns compare byte for byte
  if (!o.out.empty()) io::write_text(o.out, io::strip_timings(out.payload).dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return out.verified ? 0 : 1;
}

// ---------------------------------------------------------------------------
// decompose

int cmd_decompose(const Options& o) {
  Input in = load_input(o.input);
  const std::string& name = o.construction;
  Json payload, stats;
  stats["construction"] = name;
  stats["n"] = in.g.size();
  auto geo = [&]() -> const GeometricInstance& {
    if (!in.geo) throw std::invalid_argument(name + " needs a geometric instance");
    return *in.geo;
  };
  auto emit_layered = [&](const Graph& g, const TreeDecomposition& td, const Layering* lay, std::optional<long> bound) {
    payload = io::decomposition_json(td, lay);
    stats["nodes"] = td.node_count();
    stats["width"] = td.width();
    stats["independence_number"] = independence_number(g, td);
    if (lay) stats["layered_independence_number"] = layered_independence_number(g, td, *lay);
    if (bound) stats["bound"] = *bound;
  };
  bool within = true;
  if (name == "unit_disk_layered") {
    auto ld = unit_disk_layered_decomposition(geo());
    emit_layered(in.g, ld.td, &ld.lay, unit_disk_cell_bound());
    within = stats["layered_independence_number"].get<long>() <= unit_disk_cell_bound();
  } else if (name == "grid_path_layered" || name == "rectangle_layered") {
    auto ld = geometric_layered(geo());
    if (name == "grid_path_layered" && geo().kind() != Kind::kGridPaths) throw std::invalid_argument("grid_path_layered needs grid paths");
    if (name == "rectangle_layered" && geo().kind() != Kind::kRectangles) throw std::invalid_argument("rectangle_layered needs rectangles");
    std::optional<long> bound;
    if (o.ell && name == "grid_path_layered") ld = grid_path_layered_decomposition(geo(), *o.ell);
    if (name == "grid_path_layered") {
      long ell = o.ell.value_or(1);
      if (!o.ell)
        for (const auto& p : geo().as<GridPaths>().paths) ell = std::max(ell, horizontal_part(p).second - horizontal_part(p).first + 1);
      bound = grid_path_cell_bound(static_cast<int>(ell));
    }
    emit_layered(in.g, ld.td, &ld.lay, bound);
    if (bound) within = stats["layered_independence_number"].get<long>() <= *bound;
  } else if (name == "narrow_strip") {
    if (!o.ell) throw std::invalid_argument("narrow_strip needs --ell");
    auto td = narrow_strip_decomposition(geo(), *o.ell);
    long bound = narrow_strip_bound(geo(), *o.ell);
    emit_layered(in.g, td, nullptr, bound);
    within = stats["independence_number"].get<long>() <= bound;
  } else if (name == "power") {
    auto [td, lay] = layered_input(in);
    long k = layered_independence_number(in.g, td, lay);
    auto pd = power_decomposition(in.g, td, lay, o.d);
    emit_layered(pd.power, pd.td, &pd.lay, power_cell_bound(o.d, k));
    stats["power"] = 1 + 2 * o.d;
    within = stats["layered_independence_number"].get<long>() <= power_cell_bound(o.d, k);
  } else if (name == "layer_cover" || name == "fat_cover") {
    if (!o.r) throw std::invalid_argument(name + " needs --r");
    GeneralCover cover;
    std::optional<Integer> bound;
    if (name == "layer_cover") {
      auto [td, lay] = layered_input(in);
      long ell = layered_independence_number(in.g, td, lay);
      cover = cover_from_layering(in.g, td, lay, *o.r);
      bound = Integer(layering_cover_bound(ell, *o.r));
    } else {
      auto fc = fat_cover(geo(), instance_fatness(geo()), *o.r);
      cover = fc.cover;
      bound = fc.alpha_bound;
      stats["grid_ratio"] = fc.r;
      stats["max_rank"] = fc.k0;
    }
    payload = io::cover_json(cover);
    auto rep = validate_cover(in.g, cover);
    stats["elements"] = cover.size();
    stats["min_coverage"] = io::to_json(min_coverage_fraction(in.g.size(), cover));
    stats["valid"] = rep.ok();
    int a = cover_independence_number(in.g, cover);
    stats["independence_number"] = a;
    stats["bound"] = bound->get_str();
    within = rep.ok() && Integer(a) <= *bound;
  } else if (name == "trivial") {
    auto td = TreeDecomposition::trivial(in.g.size());
    emit_layered(in.g, td, nullptr, std::nullopt);
  } else {
    throw std::invalid_argument("unknown construction " + name +
                                " (unit_disk_layered, grid_path_layered, rectangle_layered, narrow_strip, power, "
                                "layer_cover, fat_cover, trivial)");
  }
  stats["within_bound"] = within;
  if (!o.out.empty()) io::write_text(o.out, payload.dump(2) + "\n");
  else stats["decomposition"] = payload;
  std::cout << stats.dump(2) << "\n";
  return within ? 0 : 1;
}

// ---------------------------------------------------------------------------
// generate / fixtures

int cmd_generate(const Options& o, GenSpec spec, const std::string& spec_file) {
  if (!spec_file.empty()) spec = io::genspec_from(io::read_json(spec_file));
  auto inst = generate(spec);
  std::string text = io::instance_json(inst).dump(2) + "\n";
  if (!o.out.empty()) io::write_text(o.out, text);
  else std::cout << text;
  return 0;
}

int cmd_fixtures(const Options& o, const std::string& name) {
  if (name.empty()) {
    for (const auto& f : fixture_names()) std::cout << f << "\n";
    return 0;
  }
  std::string text = fixture_json(fixture(name)).dump(2) + "\n";
  if (!o.out.empty()) io::write_text(o.out, text);
  else std::cout << text;
  return 0;
}

// ---------------------------------------------------------------------------
// bench

std::string decimal(const Rational& q, int places) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  Integer v = floor_of(q * scale + frac(1, 2));
  std::string s = v.get_str();
  if (static_cast<int>(s.size()) <= places) s = std::string(static_cast<std::size_t>(places) - s.size() + 1, '0') + s;
  return s.substr(0, s.size() - static_cast<std::size_t>(places)) + "." + s.substr(s.size() - static_cast<std::size_t>(places));
}

struct BenchJob {
  std::string label, mode;
  GenSpec gen;
  int d = 2;
  std::vector<std::string> params;
};

struct BenchRow {
  std::vector<std::string> fields;  // csv columns in order
  bool ok = true;
};

std::vector<BenchRow> run_bench_job(const BenchJob& job, const Options& o, int cap) {
  Input in;
  in.geo = generate(job.gen);
  in.g = intersection_graph(*in.geo);
  in.w = in.geo->weight_map();
  std::optional<Rational> exact;
  if (in.g.size() <= cap) {
    Graph host = job.d > 2 ? graph_power(in.g, job.d - 1) : in.g;
    exact = brute_force_packing(mwis_instance(host, in.w), true).weight;
  }
  std::vector<BenchRow> rows;
  for (const auto& p : job.params) {
    Options run = o;
    run.mode = job.mode;
    run.family = "k1";
    run.threads = 1;
    run.eps.reset();
    run.r.reset();
    run.d = job.d;
    if (job.mode == "ptas-shift") run.eps = p;
    else if (job.mode == "ptas-cover" || job.mode == "ptas-distance") run.r = std::stoi(p);
    auto t0 = Clock::now();
    auto outcome = run_solve(in, run);
    long ms = ms_since(t0);
    Rational weight = io::rational_from(outcome.payload["weight"]);
    std::string ratio;
    if (exact) ratio = *exact == 0 ? "1.0000" : decimal(weight / *exact, 4);
    rows.push_back({{job.label + "#" + std::to_string(job.gen.seed), std::to_string(in.g.size()), job.mode, p,
                     format_rational(weight), exact ? format_rational(*exact) : "", ratio, std::to_string(ms)},
                    outcome.verified});
  }
  return rows;
}

int cmd_bench(const Options& o) {
  Json spec = io::read_json(o.input);
  const int cap = o.exact_cap >= 0 ? o.exact_cap : spec.value("exact_cap", 40);
  std::vector<BenchJob> jobs;
  for (const auto& cell : spec.value("cells", Json::array())) {
    BenchJob base;
    base.gen = io::genspec_from(cell.at("generator"));
    base.mode = cell.at("mode").get<std::string>();
    base.label = cell.value("name", std::string(to_string(base.gen.kind)));
    base.d = cell.value("d", 2);
    for (const auto& p : cell.value("params", Json::array({"-"})))
      base.params.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    std::vector<std::uint64_t> seeds;
    if (cell.contains("seeds")) seeds = cell["seeds"].get<std::vector<std::uint64_t>>();
    else
      for (std::uint64_t s = 1; s <= cell.value("seed_count", 1UL); ++s) seeds.push_back(s);
    for (auto seed : seeds) {
      jobs.push_back(base);
      jobs.back().gen.seed = seed;
    }
  }
  std::vector<std::vector<BenchRow>> results(jobs.size());
  detail::parallel_for(static_cast<int>(jobs.size()), o.threads,
                       [&](int i) { results[static_cast<std::size_t>(i)] = run_bench_job(jobs[static_cast<std::size_t>(i)], o, cap); });

  std::string csv = "instance,n,mode,param,weight,exact,ratio,ms\n";
  std::string md = "| instance | n | mode | param | weight | exact | ratio | ms |\n|---|---|---|---|---|---|---|---|\n";
  bool all_ok = true;
  for (const auto& rows : results)
    for (const auto& row : rows) {
      all_ok = all_ok && row.ok;
      std::string line, mdline = "|";
      for (std::size_t k = 0; k < row.fields.size(); ++k) {
        line += (k ? "," : "") + row.fields[k];
        mdline += " " + row.fields[k] + " |";
      }
      csv += line + "\n";
      md += mdline + "\n";
    }
  if (o.no_verify) md += "\nVERIFICATION SKIPPED (--no-verify): timing run only\n";
  if (!o.out.empty()) io::write_text(o.out, csv);
  else std::cout << csv;
  if (!o.markdown.empty()) io::write_text(o.markdown, md);
  else if (!o.out.empty()) std::cout << md;
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree decompositions of bounded independence number, exact packing and PTASes"};
  app.require_subcommand(1);
  Options o;
  o.exact_cap = -1;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file");
    sub->add_option("--threads", o.threads, "Worker threads for cover elements / shifts")->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "Exact or approximate max weight independent packing");
  solve->add_option("--input", o.input, "Instance or graph JSON, or fixture:<name>")->required();
  solve->add_option("--mode", o.mode, "exact | ptas-cover | ptas-shift | ptas-distance")
      ->check(CLI::IsMember({"exact", "ptas-cover", "ptas-shift", "ptas-distance"}));
  solve->add_option("--eps", o.eps, "Accuracy, e.g. 1/4");
  solve->add_option("--r", o.r, "Cover parameter r")->check(CLI::PositiveNumber);
  solve->add_option("--d", o.d, "Packing distance for ptas-distance");
  solve->add_option("--c", o.c, "Size constant for ptas-shift");
  solve->add_option("--family", o.family, "k1 | k2 | k1k2 | explicit:<file>");
  solve->add_option("--seed", o.seed, "Unused by deterministic modes; echoed");
  solve->add_flag("--no-verify", o.no_verify, "Skip the independent re-verification (timing runs only)");
  common(solve);

  auto* decompose = app.add_subcommand("decompose", "Build a decomposition or cover and report its stats");
  decompose->add_option("--input", o.input, "Instance or graph JSON, or fixture:<name>")->required();
  decompose->add_option("--construction", o.construction, "Construction name")->required();
  decompose->add_option("--ell", o.ell, "Width parameter (narrow_strip, grid_path_layered)");
  decompose->add_option("--r", o.r, "Cover parameter (layer_cover r, fat_cover r0)");
  decompose->add_option("--d", o.d, "Power parameter: builds G^{1+2d}");
  common(decompose);

  GenSpec gs;
  std::string spec_file, kind = "unit_disks", mode = "v", density, radius, min_size, max_size, width, height;
  auto* gen = app.add_subcommand("generate", "Seeded random instance");
  gen->add_option("--spec", spec_file, "GenSpec JSON (overrides the flags below)");
  gen->add_option("--kind", kind, "unit_disks | disks | rectangles | boxes_d | grid_paths");
  gen->add_option("--n", gs.n, "Number of objects");
  gen->add_option("--seed", gs.seed, "Seed for mt19937_64");
  gen->add_option("--dim", gs.dim, "Dimension (disks, boxes_d)");
  gen->add_option("--density", density, "Objects per unit area");
  gen->add_option("--width", width, "Region width");
  gen->add_option("--height", height, "Region height");
  gen->add_option("--radius", radius, "Unit disk radius");
  gen->add_option("--min-size", min_size, "Smallest radius / side");
  gen->add_option("--max-size", max_size, "Largest radius / side");
  gen->add_option("--max-horizontal", gs.max_horizontal, "Grid paths: horizontal budget");
  gen->add_option("--max-bends", gs.max_bends, "Grid paths: bend budget");
  gen->add_option("--mode", mode, "Grid paths: v (shared point) or e (shared edge)")->check(CLI::IsMember({"v", "e"}));
  gen->add_flag("--weights", gs.random_weights, "Random weights in {1/8, ..., 2}");
  common(gen);

  std::string fixture_name;
  auto* fix = app.add_subcommand("fixtures", "List fixtures, or write one with --name");
  fix->add_option("--name", fixture_name, "Fixture name (c5, k33, p<n>, tangent_chain_10, k44_vpg)");
  common(fix);

  auto* bench = app.add_subcommand("bench", "Benchmark matrix: CSV + markdown");
  bench->add_option("--input", o.input, "Bench spec JSON")->required();
  bench->add_option("--exact-cap", o.exact_cap, "Brute-force reference up to this n (default 40)");
  bench->add_option("--markdown", o.markdown, "Markdown table file");
  bench->add_flag("--no-verify", o.no_verify, "Skip the independent re-verification (timing runs only)");
  common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // --help is not an error
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*decompose) return cmd_decompose(o);
    if (*gen) {
      gs.kind = parse_kind(kind);
      gs.contact = mode == "e" ? Contact::kEdge : Contact::kVertex;
      if (!density.empty()) gs.density = parse_rational(density);
      if (!width.empty()) gs.width = parse_rational(width);
      if (!height.empty()) gs.height = parse_rational(height);
      if (!radius.empty()) gs.radius = parse_rational(radius);
      if (!min_size.empty()) gs.min_size = parse_rational(min_size);
      if (!max_size.empty()) gs.max_size = parse_rational(max_size);
      return cmd_generate(o, gs, spec_file);
    }
    if (*fix) return cmd_fixtures(o, fixture_name);
    if (*bench) return cmd_bench(o);
  } catch (const HardnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
