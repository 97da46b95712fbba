#include "secluded/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace secluded {

namespace {

using nlohmann::json;

constexpr long kCoordLimit = 1L << 30;

Point parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("point must be [x, y]");
  long c[2];
  for (int k = 0; k < 2; ++k) {
    const json& v = j[k];
    if (v.is_number_integer()) {
      const long x = v.get<long>();
      if (x >= kCoordLimit || x <= -kCoordLimit) throw FormatError("coordinate out of range");
      c[k] = x;
    } else if (v.is_number()) {
      throw FormatError("coordinate is not an integer");
    } else {
      throw FormatError("point must be [x, y]");
    }
  }
  return Point(c[0], c[1]);
}

Ring parse_ring(const json& j) {
  if (!j.is_array()) throw FormatError("ring must be an array of points");
  Ring r;
  for (const json& p : j) r.push_back(parse_point(p));
  return r;
}

std::string int_str(const Rational& v) { return v.get_num().get_str(); }

std::string point_str(const Point& p) { return "[" + int_str(p.x()) + "," + int_str(p.y()) + "]"; }

// Rotate to start at the lexicographically smallest vertex.
Ring rotated(const Ring& r) {
  Ring out = r;
  const auto it = std::min_element(out.begin(), out.end());
  std::rotate(out.begin(), it, out.end());
  return out;
}

std::string ring_str(const Ring& r) {
  std::string s = "[";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + point_str(r[i]);
  return s + "]";
}

json dring_json(const DRing& r) {
  json a = json::array();
  for (const DPoint& p : r) a.push_back({p[0], p[1]});
  return a;
}

std::string literal_name(std::size_t var, bool positive) {
  return (positive ? "x" : "!x") + std::to_string(var + 1);
}

}  // namespace

DomainFile parse_domain(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("domain file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "outer" && key != "holes" && key != "s" && key != "t" && key != "annotations")
      throw FormatError("unknown key \"" + key + "\"");
  }
  if (!j.contains("outer")) throw FormatError("missing \"outer\"");
  Ring outer = parse_ring(j["outer"]);
  std::vector<Ring> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw FormatError("\"holes\" must be an array of rings");
    for (const json& h : j["holes"]) holes.push_back(parse_ring(h));
  }
  DomainFile f;
  f.domain = PolygonalDomain::create(std::move(outer), std::move(holes));
  if (j.contains("s")) f.s = parse_point(j["s"]);
  if (j.contains("t")) f.t = parse_point(j["t"]);
  if (f.s && locate_point(f.domain, *f.s) == Location::Exterior) throw GeometryError("s outside the domain");
  if (f.t && locate_point(f.domain, *f.t) == Location::Exterior) throw GeometryError("t outside the domain");
  if (j.contains("annotations")) f.annotations = j["annotations"];
  return f;
}

std::string serialize_domain(const DomainFile& f) {
  std::vector<Ring> holes;
  for (const Ring& h : f.domain.holes()) holes.push_back(rotated(h));
  std::sort(holes.begin(), holes.end(), [](const Ring& a, const Ring& b) { return a.front() < b.front(); });
  std::string s = "{\n  \"outer\": " + ring_str(rotated(f.domain.outer())) + ",\n  \"holes\": [";
  for (std::size_t i = 0; i < holes.size(); ++i) s += (i ? "," : "") + ring_str(holes[i]);
  s += "]";
  if (f.s) s += ",\n  \"s\": " + point_str(*f.s);
  if (f.t) s += ",\n  \"t\": " + point_str(*f.t);
  if (!f.annotations.is_null()) s += ",\n  \"annotations\": " + f.annotations.dump();
  return s + "\n}\n";
}

std::string serialize_domain(const PolygonalDomain& domain) { return serialize_domain(DomainFile{domain, {}, {}, {}}); }

EmbeddedCnf parse_cnf(const std::string& text) {
  EmbeddedCnf e;
  bool have_header = false;
  std::size_t declared = 0;
  Clause open;
  bool have_v_cycle = false;
  std::vector<long> v_cycle_raw;
  std::vector<std::string> vc_raw;
  bool have_vc = false;
  struct RawSide {
    long var, clause;
    Side side;
    std::size_t line;
  };
  std::vector<RawSide> sides;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> FormatError {
    return FormatError("line " + std::to_string(lineno) + ": " + msg);
  };
  auto to_long = [&](const std::string& tok, const char* what) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::logic_error&) {
      throw fail(std::string("bad ") + what + " \"" + tok + "\"");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() >= 2 && tok[1] == "v-cycle") {
        if (have_v_cycle) throw fail("duplicate v-cycle");
        have_v_cycle = true;
        for (std::size_t i = 2; i < tok.size(); ++i) v_cycle_raw.push_back(to_long(tok[i], "v-cycle entry"));
      } else if (tok.size() >= 2 && tok[1] == "vc-cycle") {
        if (have_vc) throw fail("duplicate vc-cycle");
        have_vc = true;
        vc_raw.assign(tok.begin() + 2, tok.end());
      } else if (tok.size() >= 2 && tok[1] == "side") {
        if (tok.size() != 5) throw fail("side line needs <var> <clause> <L|R>");
        if (tok[4] != "L" && tok[4] != "R") throw fail("side must be L or R");
        sides.push_back({to_long(tok[2], "side variable"), to_long(tok[3], "side clause"),
                         tok[4] == "L" ? Side::Left : Side::Right, lineno});
      }
      continue;
    }
    if (tok[0] == "%") break;
    if (tok[0] == "p") {
      if (have_header) throw fail("duplicate p line");
      if (tok.size() != 4 || tok[1] != "cnf") throw fail("malformed p line");
      const long n = to_long(tok[2], "variable count"), m = to_long(tok[3], "clause count");
      if (n < 0 || m < 0) throw fail("malformed p line");
      e.cnf.num_vars = static_cast<std::size_t>(n);
      declared = static_cast<std::size_t>(m);
      have_header = true;
      continue;
    }
    if (!have_header) throw fail("clause before p line");
    for (const std::string& t : tok) {
      const long v = to_long(t, "literal");
      if (v == 0) {
        if (open.empty()) throw fail("empty clause");
        e.cnf.clauses.push_back(open);
        open.clear();
        continue;
      }
      const std::size_t var = static_cast<std::size_t>(std::labs(v));
      if (var > e.cnf.num_vars) throw fail("variable " + std::to_string(var) + " out of range");
      open.push_back({var - 1, v > 0});
    }
  }
  if (!have_header) throw FormatError("missing p line");
  if (!open.empty()) throw FormatError("unterminated clause at end of input");
  if (e.cnf.clauses.size() != declared)
    throw FormatError("clause count mismatch: header says " + std::to_string(declared) + ", found " +
                      std::to_string(e.cnf.clauses.size()));

  const std::size_t n = e.cnf.num_vars, m = e.cnf.clauses.size();
  if (have_v_cycle) {
    std::set<long> seen(v_cycle_raw.begin(), v_cycle_raw.end());
    if (v_cycle_raw.size() != n || seen.size() != n || (n && (*seen.begin() != 1 || *seen.rbegin() != long(n))))
      throw FormatError("v-cycle is not a permutation of the variables");
    for (long v : v_cycle_raw) e.v_cycle.push_back(static_cast<std::size_t>(v - 1));
  }
  for (const RawSide& s : sides) {
    if (s.var < 1 || s.var > long(n))
      throw FormatError("line " + std::to_string(s.line) + ": side refers to unknown variable");
    if (s.clause < 1 || s.clause > long(m))
      throw FormatError("line " + std::to_string(s.line) + ": side refers to unknown clause");
    const auto key = std::make_pair(std::size_t(s.var - 1), std::size_t(s.clause - 1));
    if (!e.side.emplace(key, s.side).second)
      throw FormatError("line " + std::to_string(s.line) + ": duplicate side entry");
  }
  if (have_vc) {
    std::vector<std::size_t> cyc;
    for (const std::string& t : vc_raw) {
      if (t.size() < 2 || (t[0] != 'v' && t[0] != 'c')) throw FormatError("bad vc-cycle token \"" + t + "\"");
      long k = 0;
      try {
        std::size_t used = 0;
        k = std::stol(t.substr(1), &used);
        if (used != t.size() - 1) throw std::invalid_argument(t);
      } catch (const std::logic_error&) {
        throw FormatError("bad vc-cycle token \"" + t + "\"");
      }
      const long limit = t[0] == 'v' ? long(n) : long(m);
      if (k < 1 || k > limit) throw FormatError("vc-cycle token \"" + t + "\" out of range");
      cyc.push_back(t[0] == 'v' ? std::size_t(k - 1) : n + std::size_t(k - 1));
    }
    std::vector<std::size_t> sorted = cyc;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) throw FormatError("vc-cycle is not a permutation of variables and clauses");
    if (sorted.size() != n + m) throw FormatError("vc-cycle is not a permutation of variables and clauses");
    e.vc_cycle = cyc;
  }
  return e;
}

std::string serialize_cnf(const EmbeddedCnf& e) {
  std::string s;
  const std::size_t n = e.cnf.num_vars;
  if (!e.v_cycle.empty()) {
    s += "c v-cycle";
    for (std::size_t v : e.v_cycle) s += " " + std::to_string(v + 1);
    s += "\n";
  }
  if (e.vc_cycle) {
    s += "c vc-cycle";
    for (std::size_t k : *e.vc_cycle) s += k < n ? " v" + std::to_string(k + 1) : " c" + std::to_string(k - n + 1);
    s += "\n";
  }
  for (const auto& [key, side] : e.side)
    s += "c side " + std::to_string(key.first + 1) + " " + std::to_string(key.second + 1) + " " +
         (side == Side::Left ? "L" : "R") + "\n";
  s += "p cnf " + std::to_string(n) + " " + std::to_string(e.cnf.clauses.size()) + "\n";
  for (const Clause& c : e.cnf.clauses) {
    for (const Literal& l : c) s += (l.positive ? "" : "-") + std::to_string(l.var + 1) + " ";
    s += "0\n";
  }
  return s;
}

std::string serialize_cnf(const Cnf& cnf) { return serialize_cnf(EmbeddedCnf{cnf, {}, {}, {}}); }

DomainFile layout_file(const ReductionLayout& L, const Cnf& cnf) {
  json ann;
  ann["H"] = L.H;
  ann["h"] = L.params.h;
  ann["corridor_width"] = L.params.grid;
  ann["unit"] = L.params.grid * L.params.scale;
  ann["a"] = L.a;
  ann["A"] = L.A;
  ann["equalizers"] = L.params.equalizers;
  ann["chambers"] = L.params.chambers;
  json lit = json::object();
  for (const auto& [key, rings] : L.literal_corridor) {
    json arr = json::array();
    for (const DRing& r : rings) arr.push_back(dring_json(r));
    lit[literal_name(key.first, key.second)] = arr;
  }
  ann["literal_corridors"] = lit;
  json gad = json::array();
  for (std::size_t j = 0; j < L.clause_gadget.size(); ++j) {
    std::string name;
    for (const Literal& l : cnf.clauses[j]) name += (name.empty() ? "" : "|") + literal_name(l.var, l.positive);
    gad.push_back({{"clause", name}, {"ring", dring_json(L.clause_gadget[j])}});
  }
  ann["clause_gadgets"] = gad;
  json eq = json::array();
  for (const DRing& r : L.equalizer) eq.push_back(dring_json(r));
  ann["equalizer_rings"] = eq;
  json ch = json::array();
  for (const DRing& r : L.chamber) ch.push_back(dring_json(r));
  ann["chamber_rings"] = ch;
  return DomainFile{L.domain, L.s, L.t, ann};
}

nlohmann::json weighted_subdivision_json(const WeightedSubdivision& ws) {
  json regions = json::array();
  for (const WeightedRegion& r : ws.regions()) {
    json ring = json::array();
    for (const auto& p : r.ring) ring.push_back({p[0], p[1]});
    regions.push_back({{"ring", ring}, {"weight", r.weight}});
  }
  return {{"eps", ws.eps}, {"levels", ws.levels.values.size()}, {"min_weight", ws.min_weight()}, {"regions", regions}};
}

nlohmann::json path_json(const PathPolyline& path) {
  json a = json::array();
  for (const Point& p : path.vertices) a.push_back({p.ax(), p.ay()});
  return a;
}

std::string weight_color(double weight, double lo, double hi) {
  double t = 0.0;
  if (hi > lo && lo > 0 && weight > 0) t = std::clamp(std::log(weight / lo) / std::log(hi / lo), 0.0, 1.0);
  const double a[3] = {255, 247, 188}, b[3] = {153, 0, 13};
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a[0] + t * (b[0] - a[0]))),
                static_cast<int>(std::lround(a[1] + t * (b[1] - a[1]))),
                static_cast<int>(std::lround(a[2] + t * (b[2] - a[2]))));
  return buf;
}

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

std::string xy(double x, double y) { return num(x) + "," + num(-y); }

std::string polygon(const std::vector<std::array<double, 2>>& r, const std::string& style) {
  std::string s = "<polygon points=\"";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + xy(r[i][0], r[i][1]);
  return s + "\" " + style + "/>\n";
}

std::vector<std::array<double, 2>> as_doubles(const Ring& r) {
  std::vector<std::array<double, 2>> out;
  for (const Point& p : r) out.push_back({p.ax(), p.ay()});
  return out;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const PolygonalDomain& domain, const SvgOverlay& ov) {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const Point& p : domain.outer()) {
    x0 = std::min(x0, p.ax());
    y0 = std::min(y0, p.ay());
    x1 = std::max(x1, p.ax());
    y1 = std::max(y1, p.ay());
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double m = 0.03 * span, sw = 0.003 * span;
  const double w = x1 - x0 + 2 * m, h = y1 - y0 + 2 * m;
  const int px_w = 800, px_h = std::max(1, static_cast<int>(std::lround(800.0 * h / w)));
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(px_w) + "\" height=\"" +
                  std::to_string(px_h) + "\" viewBox=\"" + num(x0 - m) + " " + num(-(y1 + m)) + " " + num(w) + " " +
                  num(h) + "\">\n";
  s += "<g id=\"domain\">\n";
  s += polygon(as_doubles(domain.outer()), "fill=\"#f2f2f2\" stroke=\"none\"");
  s += "</g>\n";
  if (!ov.regions.empty()) {
    double lo = INFINITY, hi = 0;
    for (const WeightedRegion& r : ov.regions) {
      lo = std::min(lo, r.weight);
      hi = std::max(hi, r.weight);
    }
    s += "<g id=\"regions\">\n";
    for (const WeightedRegion& r : ov.regions)
      s += polygon(r.ring, "fill=\"" + weight_color(r.weight, lo, hi) + "\" stroke=\"#ffffff\" stroke-width=\"" +
                               num(sw / 4) + "\"");
    s += "</g>\n";
  }
  s += "<g id=\"boundary\">\n";
  s += polygon(as_doubles(domain.outer()), "fill=\"none\" stroke=\"#222222\" stroke-width=\"" + num(sw) + "\"");
  for (const Ring& hr : domain.holes())
    s += polygon(as_doubles(hr), "fill=\"#ffffff\" stroke=\"#222222\" stroke-width=\"" + num(sw) + "\"");
  s += "</g>\n";
  if (!ov.outlines.empty()) {
    s += "<g id=\"outlines\">\n";
    for (const DRing& r : ov.outlines)
      s += polygon(r, "fill=\"none\" stroke=\"#8a8a8a\" stroke-width=\"" + num(sw / 2) + "\"");
    s += "</g>\n";
  }
  if (!ov.paths.empty()) {
    s += "<g id=\"paths\">\n";
    for (const SvgPath& p : ov.paths) {
      s += "<path d=\"";
      for (std::size_t i = 0; i < p.path.vertices.size(); ++i)
        s += (i ? " L" : "M") + xy(p.path.vertices[i].ax(), p.path.vertices[i].ay());
      s += "\" fill=\"none\" stroke=\"" + escape(p.color) + "\" stroke-width=\"" + num(2 * sw) + "\"";
      s += p.label.empty() ? "/>\n" : "><title>" + escape(p.label) + "</title></path>\n";
    }
    s += "</g>\n";
  }
  if (!ov.markers.empty()) {
    s += "<g id=\"markers\">\n";
    for (const Point& p : ov.markers)
      s += "<circle cx=\"" + num(p.ax()) + "\" cy=\"" + num(-p.ay()) + "\" r=\"" + num(3 * sw) +
           "\" fill=\"#c0392b\"/>\n";
    s += "</g>\n";
  }
  return s + "</svg>\n";
}

}  // namespace secluded
