// secluded: command-line front end. Every command prints one JSON document
// on stdout. Exit status: 0 when all requested checks pass, 1 when a check
// fails, 2 on bad input.

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "secluded/exposure.hpp"
#include "secluded/geometry.hpp"
#include "secluded/io.hpp"
#include "secluded/reduction.hpp"
#include "secluded/sat.hpp"
#include "secluded/solvers.hpp"
#include "secluded/subdivision.hpp"
#include "secluded/visibility.hpp"

using nlohmann::json;
using namespace secluded;
using namespace secluded::cli;

namespace {

struct Options {
  double eps = 0.1;
  int refinement = 4;
  int max_crossings = 1;
  unsigned seed = 1;
  std::string out_svg;

  std::string input;
  std::string s_arg, t_arg, path_arg;
  double samples_per_unit = 8.0;
  bool check = false;
  bool dump_weights = false;
  std::string method = "auto";
  std::string out;

  // sampling / corpora
  int samples = 100;
  int random = 0;
  int alternatives = 50;
  int vertices = 12;

  // split gadget
  std::size_t var = 1;
  std::size_t copies = 0;
  std::vector<std::string> moves;

  // christmas tree
  ReductionParams tree;
  bool no_truncate = false, no_equalizers = false;
};

Options opt;
int exit_status = 0;

json provenance(const std::string& command) {
  return {{"command", command}, {"eps", opt.eps}, {"refinement", opt.refinement}, {"seed", opt.seed}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void fail_unless(bool ok) {
  if (!ok) exit_status = 1;
}

struct Instance {
  DomainFile file;
  Point s, t;
};

// Domain file plus s and t, the flags overriding the file.
Instance load_instance(bool need_st = true) {
  Instance in{parse_domain(read_text(opt.input)), {}, {}};
  std::optional<Point> s = in.file.s, t = in.file.t;
  if (!opt.s_arg.empty()) s = parse_point_arg(opt.s_arg);
  if (!opt.t_arg.empty()) t = parse_point_arg(opt.t_arg);
  if (need_st) {
    if (!s || !t) throw FormatError("s and t are required (in the file or via --s/--t)");
    for (const Point* p : {&*s, &*t})
      if (locate_point(in.file.domain, *p) == Location::Exterior) throw GeometryError("s/t outside the domain");
    in.s = *s;
    in.t = *t;
  }
  return in;
}

void require_simple(const PolygonalDomain& d) {
  if (!d.holes().empty()) throw GeometryError("this command needs a domain without holes");
}

json point_json(const Point& p) { return json::array({p.ax(), p.ay()}); }

void maybe_svg(const PolygonalDomain& d, const SvgOverlay& ov, json& out) {
  if (opt.out_svg.empty()) return;
  write_text(opt.out_svg, render_svg(d, ov));
  out["svg"] = opt.out_svg;
}

json assignment_json(const Assignment& a) {
  json j = json::array();
  for (bool b : a) j.push_back(b ? 1 : 0);
  return j;
}

EmbeddedCnf load_cnf() { return parse_cnf(read_text(opt.input)); }

// ---------------------------------------------------------------- secluded

void cmd_simple() {
  Instance in = load_instance();
  require_simple(in.file.domain);
  const PathPolyline path = shortest_path_simple(in.file.domain, in.s, in.t);
  json out = provenance("secluded simple");
  out["path"] = path_json(path);
  out["length"] = path.length();
  out["seen_area"] = weak_visibility_area(in.file.domain, path, opt.refinement);
  out["domain_area"] = in.file.domain.area().get_d();
  maybe_svg(in.file.domain, {{}, {}, {{path, "#1f4e9c", "shortest"}}, {in.s, in.t}}, out);
  emit(out);
}

void cmd_holes() {
  Instance in = load_instance();
  const SecludedResult r = secluded_path_holes(in.file.domain, in.s, in.t, opt.max_crossings, opt.refinement);
  json out = provenance("secluded holes");
  out["max_crossings"] = opt.max_crossings;
  out["path"] = path_json(r.path);
  out["length"] = r.length;
  out["seen_area"] = r.area;
  out["signature"] = r.signature;
  out["classes"] = r.classes;
  maybe_svg(in.file.domain, {{}, {}, {{r.path, "#1f4e9c", "secluded"}}, {in.s, in.t}}, out);
  emit(out);
}

// ---------------------------------------------------------------- exposure

void cmd_ptas() {
  Instance in = load_instance();
  const PtasResult r = integral_secluded_ptas(in.file.domain, in.s, in.t, opt.eps, opt.samples_per_unit);
  json out = provenance("exposure ptas");
  out["path"] = path_json(r.path);
  out["length"] = r.path.length();
  out["weighted_cost"] = r.weighted_cost;
  out["exposure"] = r.exposure;
  out["regions"] = r.regions;
  out["nodes"] = r.nodes;
  out["arcs"] = r.arcs;
  if (opt.dump_weights || !opt.out_svg.empty()) {
    const WeightedSubdivision ws = build_weighted_subdivision(in.file.domain, opt.eps);
    if (opt.dump_weights) out["weights"] = weighted_subdivision_json(ws);
    maybe_svg(in.file.domain, {ws.regions(), {}, {{r.path, "#1f4e9c", "ptas"}}, {in.s, in.t}}, out);
  }
  emit(out);
}

void cmd_eval() {
  Instance in = load_instance(opt.path_arg.empty());
  const PolygonalDomain& d = in.file.domain;
  PathPolyline path;
  if (!opt.path_arg.empty()) {
    path = parse_path_arg(opt.path_arg);
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
      if (!segment_in_domain(d, path.vertices[i], path.vertices[i + 1]))
        throw GeometryError("path segment " + std::to_string(i) + " leaves the domain");
  } else {
    require_simple(d);
    path = shortest_path_simple(d, in.s, in.t);
  }
  json out = provenance("exposure eval");
  out["path"] = path_json(path);
  out["length"] = path.length();
  out["exposure"] = integral_exposure(d, path, opt.samples_per_unit);
  out["seen_area"] = weak_visibility_area(d, path, opt.refinement);
  maybe_svg(d, {{}, {}, {{path, "#1f4e9c", "path"}}, {path.vertices.front(), path.vertices.back()}}, out);
  emit(out);
}

// ---------------------------------------------------------------- sat

json optimum_json(const SatOptimum& r) { return {{"value", r.value}, {"assignment", assignment_json(r.assignment)}}; }

void cmd_solve_min() {
  const EmbeddedCnf e = load_cnf();
  std::string method = opt.method;
  if (method == "auto") {
    if (!e.v_cycle.empty()) {
      method = "separable";
    } else {
      const bool monotone = std::all_of(e.cnf.clauses.begin(), e.cnf.clauses.end(), [](const Clause& c) {
        return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return l.positive == c[0].positive; });
      });
      method = monotone ? "monotone" : "brute-force";
    }
  }
  SatOptimum r;
  if (method == "separable") r = min2sat_separable(e);
  else if (method == "monotone") r = min2sat_monotone(e.cnf);
  else if (method == "brute-force") r = brute_force_opt(e.cnf, Objective::Min);
  else throw FormatError("unknown method \"" + method + "\"");
  json out = provenance("sat solve-min");
  out["method"] = method;
  out.update(optimum_json(r));
  if (opt.check) {
    const auto bf = brute_force_opt(e.cnf, Objective::Min).value;
    const bool ok = bf == r.value && satisfied_count(e.cnf, r.assignment) == r.value;
    out["check"] = {{"brute_force", bf}, {"ok", ok}};
    fail_unless(ok);
  }
  emit(out);
}

void cmd_solve_max_sepvc() {
  const EmbeddedCnf e = load_cnf();
  const SatOptimum r = max2sat_separable_vc(e);
  json out = provenance("sat solve-max-sepvc");
  out.update(optimum_json(r));
  if (opt.check) {
    const auto bf = brute_force_opt(e.cnf, Objective::Max).value;
    const bool ok = bf == r.value && satisfied_count(e.cnf, r.assignment) == r.value;
    out["check"] = {{"brute_force", bf}, {"ok", ok}};
    fail_unless(ok);
  }
  emit(out);
}

void emit_reduced(json out, const std::string& text) {
  if (!opt.out.empty()) {
    write_text(opt.out, text);
    out["out"] = opt.out;
  } else {
    out["cnf"] = text;
  }
  emit(out);
}

void cmd_reduce_kohli() {
  const EmbeddedCnf e = load_cnf();
  json out = provenance("sat reduce kohli");
  std::string text;
  Cnf reduced;
  if (!e.v_cycle.empty()) {
    const EmbeddedCnf r = reduce_embedded_max2sat(e);
    reduced = r.cnf;
    text = serialize_cnf(r);
  } else {
    reduced = reduce_max2sat_to_min2sat(e.cnf);
    text = serialize_cnf(reduced);
  }
  out["vars"] = reduced.num_vars;
  out["clauses"] = reduced.clauses.size();
  if (opt.check) {
    const auto mx = brute_force_opt(e.cnf, Objective::Max).value;
    const auto mn = brute_force_opt(reduced, Objective::Min).value;
    const bool ok = mn == 2 * e.cnf.clauses.size() - mx;
    out["check"] = {{"max_input", mx}, {"min_reduced", mn}, {"ok", ok}};
    fail_unless(ok);
  }
  emit_reduced(out, text);
}

bool one_in_three_satisfiable(const Cnf& c3) {
  if (c3.num_vars > 25) throw SatError("too many variables for exhaustive search");
  for (std::uint32_t a = 0; a < (1u << c3.num_vars); ++a) {
    bool all = true;
    for (const Clause& cl : c3.clauses) {
      int t = 0;
      for (const Literal& l : cl) t += (((a >> l.var) & 1) != 0) == l.positive;
      all = all && t == 1;
    }
    if (all) return true;
  }
  return false;
}

void cmd_reduce_1in3() {
  const EmbeddedCnf e = load_cnf();
  const Cnf reduced = reduce_1in3_to_max2sat(e.cnf);
  json out = provenance("sat reduce one-in-three");
  out["vars"] = reduced.num_vars;
  out["clauses"] = reduced.clauses.size();
  if (opt.check) {
    // per-pattern profile on a single positive clause, best over any helper variables
    const Cnf gadget = reduce_1in3_to_max2sat(Cnf{3, {{{0, true}, {1, true}, {2, true}}}});
    json profile = json::array();
    bool ok = true;
    for (int m = 0; m < 8; ++m) {
      std::size_t best = 0;
      const std::size_t extra = gadget.num_vars - 3;
      for (std::uint32_t x = 0; x < (1u << extra); ++x) {
        Assignment a(gadget.num_vars);
        for (std::size_t v = 0; v < gadget.num_vars; ++v) a[v] = v < 3 ? ((m >> v) & 1) : ((x >> (v - 3)) & 1);
        best = std::max(best, satisfied_count(gadget, a));
      }
      const int trues = __builtin_popcount(m);
      ok = ok && best == std::size_t(trues == 1 ? 7 : trues == 3 ? 3 : 6);
      profile.push_back(best);
    }
    const bool sat = one_in_three_satisfiable(e.cnf);
    const auto mx = brute_force_opt(reduced, Objective::Max).value;
    const bool rel = sat == (mx == 7 * e.cnf.clauses.size());
    out["check"] = {{"profile", profile}, {"one_in_three_satisfiable", sat}, {"max_reduced", mx}, {"ok", ok && rel}};
    fail_unless(ok && rel);
  }
  emit_reduced(out, serialize_cnf(reduced));
}

void cmd_reduce_split() {
  const EmbeddedCnf e = load_cnf();
  if (opt.var < 1 || opt.var > e.cnf.num_vars) throw SatError("--var out of range");
  std::map<std::size_t, SplitTarget> moves;
  for (const std::string& m : opt.moves) {
    const auto colon = m.find(':');
    if (colon == std::string::npos) throw FormatError("move must be CLAUSE:z or CLAUSE:t");
    const std::size_t c = std::stoul(m.substr(0, colon));
    const std::string target = m.substr(colon + 1);
    if (c < 1 || c > e.cnf.clauses.size()) throw SatError("move clause out of range");
    if (target != "z" && target != "t") throw FormatError("move target must be z or t");
    moves[c - 1] = target == "z" ? SplitTarget::Z : SplitTarget::T;
  }
  const std::size_t copies = opt.copies ? opt.copies : 2 * e.cnf.clauses.size() + 1;
  const Cnf reduced = split_variable_gadget(e.cnf, opt.var - 1, copies, moves);
  json out = provenance("sat reduce split");
  out["copies"] = copies;
  out["vars"] = reduced.num_vars;
  out["clauses"] = reduced.clauses.size();
  if (opt.check) {
    const auto before = brute_force_opt(e.cnf, Objective::Max).value;
    const auto after = brute_force_opt(reduced, Objective::Max).value;
    const bool ok = after == before + 4 * copies;
    out["check"] = {{"max_input", before}, {"max_reduced", after}, {"ok", ok}};
    fail_unless(ok);
  }
  emit_reduced(out, serialize_cnf(reduced));
}

// ---------------------------------------------------------------- gen

ReductionParams tree_params() {
  ReductionParams p = opt.tree;
  p.truncate = !opt.no_truncate;
  p.equalizers = !opt.no_equalizers;
  return p;
}

SvgOverlay tree_overlay(const ReductionLayout& L) {
  SvgOverlay ov;
  for (const auto& [key, rings] : L.literal_corridor)
    for (const DRing& r : rings) ov.outlines.push_back(r);
  for (const DRing& r : L.clause_gadget) ov.outlines.push_back(r);
  ov.markers = {L.s, L.t};
  return ov;
}

void cmd_christmas_tree() {
  const EmbeddedCnf e = load_cnf();
  const ReductionLayout L = build_christmas_tree(e.cnf, tree_params());
  const std::string text = serialize_domain(layout_file(L, e.cnf));
  json out = provenance("gen christmas-tree");
  out["H"] = L.H;
  out["a"] = L.a;
  out["A"] = L.A;
  out["max_midway"] = L.max_midway;
  out["tree_corridors"] = L.tree_corridors;
  out["literal_corridors"] = L.literal_corridors;
  out["vertices"] = L.domain.vertex_count();
  if (!opt.out.empty()) {
    write_text(opt.out, text);
    out["out"] = opt.out;
  } else {
    out["layout"] = json::parse(text);
  }
  maybe_svg(L.domain, tree_overlay(L), out);
  emit(out);
}

// ---------------------------------------------------------------- verify

json reduction_report_json(const Cnf& cnf, const ReductionLayout& L, const ReductionReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.assignments.size(); ++i)
    rows.push_back({{"assignment", assignment_json(r.assignments[i])}, {"satisfied", r.satisfied[i]},
                    {"seen", r.seen[i]}});
  json clauses = json::array();
  for (const Clause& c : cnf.clauses) clauses.push_back(clause_name(c));
  return {{"vars", cnf.num_vars}, {"clauses", clauses}, {"H", L.H}, {"a", r.a}, {"spearman", r.spearman},
          {"monotone", r.monotone}, {"gaps_ok", r.gaps_ok}, {"violations", r.violations}, {"rows", rows}};
}

void cmd_verify_reduction() {
  std::vector<Cnf> corpus;
  if (!opt.input.empty()) corpus.push_back(load_cnf().cnf);
  std::mt19937 rng(opt.seed);
  for (int i = 0; i < opt.random; ++i) corpus.push_back(random_2cnf(rng, 3, 4));
  if (corpus.empty()) throw FormatError("give a CNF file or --random N");
  json out = provenance("verify reduction");
  json instances = json::array();
  bool all = true;
  for (const Cnf& cnf : corpus) {
    const ReductionLayout L = build_christmas_tree(cnf, tree_params());
    const ReductionReport r = verify_reduction(L, cnf, opt.refinement);
    instances.push_back(reduction_report_json(cnf, L, r));
    all = all && r.monotone;
  }
  out["instances"] = instances;
  out["ok"] = all;
  fail_unless(all);
  emit(out);
}

void cmd_verify_weights() {
  Instance in = load_instance(false);
  const PolygonalDomain& d = in.file.domain;
  const WeightedSubdivision ws = build_weighted_subdivision(d, opt.eps);
  std::mt19937 rng(opt.seed);
  int identity_bad = 0, sandwich_bad = 0, pick_bad = 0, tested = 0;
  double worst_identity = 0.0, lo_ratio = 1e300, hi_ratio = 0.0, min_area = 1e300;
  while (tested < opt.samples) {
    const Point p = random_interior_point(d, rng);
    const std::size_t cell = locate(ws.refined, p);
    if (cell == kNoFace) continue;  // on a chord; the weight is a tie there
    ++tested;
    const double v = visible_area(d, p);
    const CellData& cd = ws.cells[cell];
    double approx = cd.C;
    for (const AnchorTerm& t : cd.terms) approx += t.sign * delta_eq7(t.frame, p);
    const double rel = std::abs(approx - v) / v;
    worst_identity = std::max(worst_identity, rel);
    identity_bad += rel > 1e-9;
    const double w = ws.weight_in_cell(cell, p.ax(), p.ay());
    lo_ratio = std::min(lo_ratio, w / v);
    hi_ratio = std::max(hi_ratio, w / v);
    sandwich_bad += w < (1 - 2 * opt.eps) * v || w > (1 + 2 * opt.eps) * v;
    min_area = std::min(min_area, v);
    pick_bad += v < 0.5 - 1e-12;
  }
  const bool ok = identity_bad == 0 && sandwich_bad == 0 && pick_bad == 0;
  json out = provenance("verify weights");
  out["samples"] = tested;
  out["identity"] = {{"violations", identity_bad}, {"worst_relative_error", worst_identity}};
  out["sandwich"] = {{"violations", sandwich_bad}, {"min_ratio", lo_ratio}, {"max_ratio", hi_ratio},
                     {"lower", 1 - 2 * opt.eps}, {"upper", 1 + 2 * opt.eps}};
  out["pick"] = {{"violations", pick_bad}, {"min_visible_area", min_area}};
  out["ok"] = ok;
  fail_unless(ok);
  emit(out);
}

PathPolyline join(const PolygonalDomain& d, const std::vector<Point>& stops) {
  PathPolyline path;
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    const PathPolyline leg = shortest_path_simple(d, stops[i], stops[i + 1]);
    auto first = leg.vertices.begin();
    if (!path.vertices.empty()) ++first;
    path.vertices.insert(path.vertices.end(), first, leg.vertices.end());
  }
  return path;
}

// Shortest path against detours through one or two random waypoints.
json detour_check(const PolygonalDomain& d, const Point& s, const Point& t, std::mt19937& rng, int& bad) {
  const PathPolyline sp = shortest_path_simple(d, s, t);
  std::vector<Segment> cuts;
  for (const Chord& c : extend_visibility_edges(d, visibility_graph(d))) cuts.push_back({c.a, c.b});
  const double base = weak_visibility_area(d, sp, opt.refinement, cuts);
  double worst = -1e300;
  int violations = 0;
  for (int k = 0; k < opt.alternatives; ++k) {
    std::vector<Point> stops{s, random_interior_point(d, rng)};
    if (rng() % 2) stops.push_back(random_interior_point(d, rng));
    stops.push_back(t);
    const double alt = weak_visibility_area(d, join(d, stops), opt.refinement, cuts);
    worst = std::max(worst, (base - alt) / alt);
    violations += base > 1.01 * alt;
  }
  bad += violations;
  return {{"s", point_json(s)}, {"t", point_json(t)}, {"shortest_seen", base}, {"violations", violations},
          {"worst_excess", worst}};
}

void cmd_verify_shortest() {
  std::mt19937 rng(opt.seed);
  json instances = json::array();
  int bad = 0;
  if (!opt.input.empty()) {
    Instance in = load_instance(false);
    require_simple(in.file.domain);
    const Point s = in.file.s ? *in.file.s : random_interior_point(in.file.domain, rng);
    const Point t = in.file.t ? *in.file.t : random_interior_point(in.file.domain, rng);
    instances.push_back(detour_check(in.file.domain, s, t, rng, bad));
  }
  for (int i = 0; i < opt.random; ++i) {
    const PolygonalDomain d = PolygonalDomain::create(random_simple_polygon(rng, opt.vertices, 20));
    const Point s = random_interior_point(d, rng);
    const Point t = random_interior_point(d, rng);
    json j = detour_check(d, s, t, rng, bad);
    j["domain"] = json::parse(serialize_domain(d));
    instances.push_back(j);
  }
  if (instances.empty()) throw FormatError("give a domain file or --random N");
  json out = provenance("verify theorem2");
  out["alternatives"] = opt.alternatives;
  out["instances"] = instances;
  out["violations"] = bad;
  out["ok"] = bad == 0;
  fail_unless(bad == 0);
  emit(out);
}

// ---------------------------------------------------------------- plot

void cmd_plot() {
  if (opt.out_svg.empty()) throw FormatError("plot needs --out-svg");
  Instance in = load_instance(false);
  SvgOverlay ov;
  if (opt.dump_weights) ov.regions = build_weighted_subdivision(in.file.domain, opt.eps).regions();
  if (!opt.path_arg.empty()) ov.paths.push_back({parse_path_arg(opt.path_arg), "#1f4e9c", "path"});
  if (in.file.s) ov.markers.push_back(*in.file.s);
  if (in.file.t) ov.markers.push_back(*in.file.t);
  json out = provenance("plot");
  out["regions"] = ov.regions.size();
  maybe_svg(in.file.domain, ov, out);
  emit(out);
}

// ---------------------------------------------------------------- wiring

CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> run,
               bool takes_input = true) {
  CLI::App* sub = parent->add_subcommand(name, help);
  sub->fallthrough();
  if (takes_input) sub->add_option("input", opt.input, "input file, - for stdin")->required();
  sub->callback([run] { run(); });
  return sub;
}

void add_st(CLI::App* sub) {
  sub->add_option("--s", opt.s_arg, "start point x,y (overrides the file)");
  sub->add_option("--t", opt.t_arg, "target point x,y (overrides the file)");
}

void add_tree_flags(CLI::App* sub) {
  sub->add_option("--H", opt.tree.H, "clause line height; 0 chooses it");
  sub->add_option("--spread", opt.tree.spread, "fraction of the width used by clauses");
  sub->add_option("--grid", opt.tree.grid, "integer units per corridor width");
  sub->add_option("--scale", opt.tree.scale, "corner spacing in corridor widths");
  sub->add_flag("--no-truncate", opt.no_truncate, "keep clause gadgets at full size");
  sub->add_flag("--no-equalizers", opt.no_equalizers, "skip the literal-area equalizers");
  sub->add_flag("--chambers", opt.tree.chambers, "hang a chamber off each literal corridor");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secluded paths, exposure PTAS and planar optimal 2SAT"};
  app.require_subcommand(1);
  app.add_option("--eps", opt.eps, "approximation parameter")->check(CLI::Range(0.0, 1.0));
  app.add_option("--refinement", opt.refinement, "weak-visibility samples per path piece")->check(CLI::PositiveNumber);
  app.add_option("--max-crossings", opt.max_crossings, "fence crossings per hole")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "seed for random corpora and samples");
  app.add_option("--out-svg", opt.out_svg, "write an SVG picture");

  auto* sec = app.add_subcommand("secluded", "minimum 0/1-exposure paths")->require_subcommand(1);
  sec->fallthrough();
  add_st(leaf(sec, "simple", "shortest path of a simple polygon", cmd_simple));
  add_st(leaf(sec, "holes", "best locally shortest path over homotopy classes", cmd_holes));

  auto* exp = app.add_subcommand("exposure", "integral exposure")->require_subcommand(1);
  exp->fallthrough();
  auto* ptas = leaf(exp, "ptas", "approximate minimum integral exposure path", cmd_ptas);
  add_st(ptas);
  ptas->add_option("--samples-per-unit", opt.samples_per_unit, "quadrature start grid");
  ptas->add_flag("--dump-weights", opt.dump_weights, "include the weighted subdivision");
  auto* eval = leaf(exp, "eval", "integral exposure of a given path", cmd_eval);
  add_st(eval);
  eval->add_option("--path", opt.path_arg, "\"x,y x,y ...\"; default: shortest s-t path");
  eval->add_option("--samples-per-unit", opt.samples_per_unit, "quadrature start grid");

  auto* sat = app.add_subcommand("sat", "optimal 2SAT and reductions")->require_subcommand(1);
  sat->fallthrough();
  auto* smin = leaf(sat, "solve-min", "min-2SAT", cmd_solve_min);
  smin->add_option("--method", opt.method, "auto|separable|monotone|brute-force");
  smin->add_flag("--check", opt.check, "compare with exhaustive search");
  leaf(sat, "solve-max-sepvc", "max-2SAT with separated variables and split clauses", cmd_solve_max_sepvc)
      ->add_flag("--check", opt.check, "compare with exhaustive search");
  auto* red = sat->add_subcommand("reduce", "clause-level reductions")->require_subcommand(1);
  red->fallthrough();
  for (auto* r : {leaf(red, "kohli", "max-2SAT to min-2SAT", cmd_reduce_kohli),
                  leaf(red, "one-in-three", "1-in-3 SAT to max-2SAT", cmd_reduce_1in3),
                  leaf(red, "split", "variable splitting gadget", cmd_reduce_split)}) {
    r->add_flag("--check", opt.check, "verify the reduction relation exhaustively");
    r->add_option("--out", opt.out, "write the reduced CNF here instead of into the JSON");
  }
  auto* split = red->get_subcommand("split");
  split->add_option("--var", opt.var, "variable to split (1-based)");
  split->add_option("--copies", opt.copies, "copies of each enforcing clause; default 2|C|+1");
  split->add_option("--move", opt.moves, "CLAUSE:z or CLAUSE:t (1-based clause)");

  auto* gen = app.add_subcommand("gen", "instance generators")->require_subcommand(1);
  gen->fallthrough();
  auto* tree = leaf(gen, "christmas-tree", "secluded path instance from a 2-CNF", cmd_christmas_tree);
  add_tree_flags(tree);
  tree->add_option("--out", opt.out, "write the layout domain file here");

  auto* ver = app.add_subcommand("verify", "numeric checks")->require_subcommand(1);
  ver->fallthrough();
  auto* vr = leaf(ver, "reduction", "seen area grows with satisfied clauses", cmd_verify_reduction, false);
  vr->add_option("input", opt.input, "2-CNF file");
  vr->add_option("--random", opt.random, "also check N seeded random instances");
  add_tree_flags(vr);
  auto* vw = leaf(ver, "weights", "cell identity, weight sandwich and area lower bound", cmd_verify_weights);
  vw->add_option("--samples", opt.samples, "interior sample points");
  auto* vt = leaf(ver, "theorem2", "shortest path sees least in a simple polygon", cmd_verify_shortest, false);
  vt->add_option("input", opt.input, "simple-polygon domain file");
  vt->add_option("--random", opt.random, "also check N seeded random polygons");
  vt->add_option("--alternatives", opt.alternatives, "random alternative paths per polygon");
  vt->add_option("--vertices", opt.vertices, "vertices of the random polygons");

  auto* plot = leaf(&app, "plot", "render a domain", cmd_plot);
  plot->add_option("--path", opt.path_arg, "\"x,y x,y ...\" to draw");
  plot->add_flag("--weights", opt.dump_weights, "color the weighted subdivision at --eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_status;
}
