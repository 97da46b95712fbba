#include "secluded/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "secluded/triangulation.hpp"
#include "secluded/visibility.hpp"

namespace secluded {

namespace {

using Vec2 = std::array<double, 2>;

// Frame with base.a at the origin and the base along +x.
struct BaseFrame {
  Vec2 o, u, n;
  explicit BaseFrame(const Segment& base) {
    o = {base.a.ax(), base.a.ay()};
    const double dx = base.b.ax() - base.a.ax();
    const double dy = base.b.ay() - base.a.ay();
    const double len = std::hypot(dx, dy);
    if (len == 0.0) throw GeometryError("degenerate base line");
    u = {dx / len, dy / len};
    n = {-u[1], u[0]};
  }
  Vec2 to_local(const Point& p) const {
    const double x = p.ax() - o[0], y = p.ay() - o[1];
    return {x * u[0] + y * u[1], x * n[0] + y * n[1]};
  }
};

// Hit of the line through (px,py) and (ax,ay) with y = 0.
double hit_on_axis(const Vec2& p, const Vec2& a) {
  if (p[1] == a[1]) throw GeometryError("ray parallel to base line");
  return p[0] + (a[0] - p[0]) * p[1] / (p[1] - a[1]);
}

struct Chord2 {
  std::size_t term;
  Vec2 a, b;
};

// Clips the line through `o` with direction `d` against a convex CCW polygon.
bool clip_line(const std::vector<Vec2>& poly, const Vec2& o, const Vec2& d, Vec2& a, Vec2& b) {
  double t0 = -1e300, t1 = 1e300;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % m];
    const double ex = q[0] - p[0], ey = q[1] - p[1];
    // inside: cross(e, x - p) >= 0
    const double num = ex * (o[1] - p[1]) - ey * (o[0] - p[0]);
    const double den = ex * d[1] - ey * d[0];
    if (std::fabs(den) < 1e-300) {
      if (num < 0) return false;
      continue;
    }
    const double t = -num / den;
    if (den > 0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  if (t1 - t0 <= 1e-12 * (1.0 + std::fabs(t0) + std::fabs(t1))) return false;
  a = {o[0] + t0 * d[0], o[1] + t0 * d[1]};
  b = {o[0] + t1 * d[0], o[1] + t1 * d[1]};
  return true;
}

bool cross_properly(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient2 = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
  };
  const double o1 = orient2(a, b, c), o2 = orient2(a, b, d);
  const double o3 = orient2(c, d, a), o4 = orient2(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

// Splits a convex polygon by a line; returns the nonempty sides.
std::vector<std::vector<Vec2>> split_convex(const std::vector<Vec2>& poly, const Vec2& o, const Vec2& d) {
  std::vector<Vec2> left, right;
  const std::size_t m = poly.size();
  auto side = [&](const Vec2& p) { return d[0] * (p[1] - o[1]) - d[1] * (p[0] - o[0]); };
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % m];
    const double sp = side(p), sq = side(q);
    if (sp >= 0) left.push_back(p);
    if (sp <= 0) right.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      const double t = sp / (sp - sq);
      const Vec2 x{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
      left.push_back(x);
      right.push_back(x);
    }
  }
  auto area = [](const std::vector<Vec2>& r) {
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Vec2& p = r[i];
      const Vec2& q = r[(i + 1) % r.size()];
      s += p[0] * q[1] - p[1] * q[0];
    }
    return s / 2;
  };
  std::vector<std::vector<Vec2>> out;
  const double whole = area(poly);
  for (auto* part : {&left, &right})
    if (part->size() >= 3 && area(*part) > 1e-12 * whole) out.push_back(std::move(*part));
  return out;
}

std::vector<Vec2> to_vec2(const Ring& r) {
  std::vector<Vec2> out;
  out.reserve(r.size());
  for (const Point& p : r) out.push_back({p.ax(), p.ay()});
  return out;
}

}  // namespace

double triangle_area_eq1(const Point& p, const Point& r_anchor, const Point& q_anchor, const Segment& base) {
  const BaseFrame f(base);
  const Vec2 lp = f.to_local(p);
  if (lp[1] == 0.0) return 0.0;
  const double r = hit_on_axis(lp, f.to_local(r_anchor));
  const double q = hit_on_axis(lp, f.to_local(q_anchor));
  return std::fabs(lp[1]) * std::fabs(r - q) / 2;
}

double level_curve_eq2(double A, const Point& r_anchor, const Point& q_anchor, const Segment& base, double y) {
  const BaseFrame f(base);
  const Vec2 r = f.to_local(r_anchor);
  const Vec2 q = f.to_local(q_anchor);
  const double a = r[0], b = r[1], c = q[0], d = q[1];
  if (y == b || y == d) throw GeometryError("level curve undefined at anchor height");
  return (2 * A / (y * y) + a / (y - b) - c / (y - d)) / (1 / (y - b) - 1 / (y - d));
}

AnchorFrame AnchorFrame::make(const PolygonalDomain& domain, std::size_t anchor, std::size_t base_edge) {
  AnchorFrame f;
  f.anchor = anchor;
  f.base_edge = base_edge;
  f.origin = domain.vertices()[anchor];
  const auto& e = domain.edges()[base_edge];
  f.base = {domain.vertices()[e.from], domain.vertices()[e.to]};
  const Point s = f.base.b - f.base.a;
  const Rational c = cross(s, f.origin - f.base.a);
  f.h2 = c * c / dot(s, s);
  f.h = std::sqrt(f.h2.get_d());
  if (f.h == 0.0) throw GeometryError("anchor on its base line");
  const double len = std::hypot(s.ax(), s.ay());
  f.u = {s.ax() / len, s.ay() / len};
  f.n = {-f.u[1], f.u[0]};
  if (sgn(c) < 0) f.n = {-f.n[0], -f.n[1]};
  return f;
}

std::array<double, 2> AnchorFrame::local(double x, double y) const {
  const double dx = x - origin.ax(), dy = y - origin.ay();
  return {dx * u[0] + dy * u[1], dx * n[0] + dy * n[1]};
}

Point AnchorFrame::foot() const {
  const Point s = base.b - base.a;
  return base.a + Rational(dot(origin - base.a, s) / dot(s, s)) * s;
}

double delta_eq7(const AnchorFrame& frame, double x, double y) {
  const auto l = frame.local(x, y);
  if (l[1] <= 0.0) throw GeometryError("point not above the anchor");
  return frame.h * frame.h / 2 * std::fabs(l[0]) / l[1];
}

double delta_eq7(const AnchorFrame& frame, const Point& p) { return delta_eq7(frame, p.ax(), p.ay()); }

LevelSequence LevelSequence::make(double eps, std::size_t n, double upper) {
  if (!(eps > 0.0)) throw GeometryError("eps must be positive");
  if (n == 0) throw GeometryError("empty domain");
  LevelSequence seq;
  seq.eps = eps;
  seq.ratio = 1.0 + eps;
  seq.values.push_back(eps / (2.0 * static_cast<double>(n)));
  while (seq.values.back() < upper) seq.values.push_back(seq.values.back() * seq.ratio);
  return seq;
}

std::size_t LevelSequence::index_of(double delta) const {
  auto it = std::lower_bound(values.begin(), values.end(), delta);
  if (it == values.end()) return values.size();
  return static_cast<std::size_t>(it - values.begin()) + 1;
}

double level_upper_bound(const PolygonalDomain& domain) {
  double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
  for (const Point& p : domain.vertices()) {
    xmin = std::min(xmin, p.ax());
    ymin = std::min(ymin, p.ay());
    xmax = std::max(xmax, p.ax());
    ymax = std::max(ymax, p.ay());
  }
  const double diam2 = (xmax - xmin) * (xmax - xmin) + (ymax - ymin) * (ymax - ymin);
  const double L = static_cast<double>(std::max(1L, domain.max_abs_coordinate()));
  return std::max(L * L, diam2 / 2);
}

std::vector<std::pair<std::size_t, std::size_t>> rotating_pairs(const PolygonalDomain& domain,
                                                                const Subdivision& vd) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t f = 0; f < vd.face_count(); ++f) {
    const VisibilityPolygon vp = visibility_polygon(domain, interior_point(vd, f));
    for (const FanTriangle& t : vp.fan)
      for (const FanSide* s : {&t.start, &t.end})
        if (s->kind == SideKind::Rotating) pairs.emplace(s->anchor, t.base_edge);
  }
  return {pairs.begin(), pairs.end()};
}

Subdivision refine_decomposition(const PolygonalDomain& domain, const Subdivision& vd) {
  std::vector<Segment> segs = vd.segments;
  std::set<std::pair<Point, Point>> seen;
  for (const auto& [anchor, edge] : rotating_pairs(domain, vd)) {
    const Point& r = domain.vertices()[anchor];
    const auto& e = domain.edges()[edge];
    const Point s = domain.vertices()[e.to] - domain.vertices()[e.from];
    const Point perp(-s.y(), s.x());
    const Point a = ray_exit(domain, r, Point(s.y(), -s.x()));
    const Point b = ray_exit(domain, r, perp);
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (seen.insert({key.first, key.second}).second) segs.push_back({key.first, key.second});
  }
  return build_arrangement(domain, segs);
}

CellData cell_constant_and_signs(const PolygonalDomain& domain, const Subdivision& refined, std::size_t cell) {
  CellData cd;
  cd.sample = interior_point(refined, cell);
  const VisibilityPolygon vp = visibility_polygon(domain, cd.sample);
  Rational c = vp.exact_area;
  auto add = [&](std::size_t anchor, std::size_t edge, const Rational& signed2) {
    const int sign = sgn(signed2);
    if (sign == 0) throw GeometryError("sample on an anchor perpendicular");
    c -= signed2 / 2;
    cd.terms.push_back({AnchorFrame::make(domain, anchor, edge), sign});
    (sign > 0 ? cd.plus : cd.minus).push_back(anchor);
  };
  for (const FanTriangle& t : vp.fan) {
    if (t.start.kind == SideKind::Rotating) {
      const AnchorFrame f = AnchorFrame::make(domain, t.start.anchor, t.base_edge);
      add(t.start.anchor, t.base_edge, orient_value(f.origin, t.start.point, f.foot()));
    }
    if (t.end.kind == SideKind::Rotating) {
      const AnchorFrame f = AnchorFrame::make(domain, t.end.anchor, t.base_edge);
      add(t.end.anchor, t.base_edge, orient_value(f.origin, f.foot(), t.end.point));
    }
  }
  cd.C = c.get_d();
  return cd;
}

WeightedSubdivision build_weighted_subdivision(const PolygonalDomain& domain, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw GeometryError("eps must lie in (0, 1]");
  WeightedSubdivision ws;
  ws.eps = eps;
  ws.n = domain.vertex_count();
  ws.L = std::max(1L, domain.max_abs_coordinate());
  ws.levels = LevelSequence::make(eps, ws.n, level_upper_bound(domain));
  ws.refined = refine_decomposition(domain, visibility_decomposition(domain));
  for (std::size_t f = 0; f < ws.refined.face_count(); ++f) {
    ws.cells.push_back(cell_constant_and_signs(domain, ws.refined, f));
    const auto& face = ws.refined.faces[f];
    const Ring outer = ws.refined.outer_ring(f);
    bool convex = face.inner.empty();
    for (std::size_t i = 0; convex && i < outer.size(); ++i)
      if (orient(outer[(i + outer.size() - 1) % outer.size()], outer[i], outer[(i + 1) % outer.size()]) < 0)
        convex = false;
    if (convex) {
      ws.pieces.push_back({f, outer});
      continue;
    }
    std::vector<Ring> holes;
    for (const auto& cyc : face.inner) {
      Ring r;
      for (std::size_t v : cyc) r.push_back(ws.refined.vertices[v]);
      if (sgn(ring_signed_area2(r)) != 0) holes.push_back(std::move(r));
    }
    const Triangulation tri = triangulate_polygon(outer, holes);
    for (const auto& t : tri.triangles)
      ws.pieces.push_back({f, Ring{tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]}});
  }
  return ws;
}

double WeightedSubdivision::weight_in_cell(std::size_t cell, double x, double y) const {
  const CellData& cd = cells[cell];
  double w = cd.C;
  for (const AnchorTerm& t : cd.terms) {
    const auto l = t.frame.local(x, y);
    const double ly = std::max(l[1], 1e-300);
    const double delta = t.frame.h * t.frame.h / 2 * std::fabs(l[0]) / ly;
    w += t.sign * levels.weight_of(delta);
  }
  return w;
}

double WeightedSubdivision::weight_at(const Point& p) const {
  return weight_in_cell(refined.locate(p), p.ax(), p.ay());
}

double weight_at(const WeightedSubdivision& ws, const Point& p) { return ws.weight_at(p); }

double WeightedSubdivision::segment_cost(std::size_t cell, const Point& a, const Point& b) const {
  const double len = distance(a, b);
  if (len == 0.0) return 0.0;
  const CellData& cd = cells[cell];
  std::vector<double> ts{0.0, 1.0};
  for (const AnchorTerm& t : cd.terms) {
    const auto la = t.frame.local(a.ax(), a.ay());
    const auto lb = t.frame.local(b.ax(), b.ay());
    const double h2 = t.frame.h * t.frame.h;
    const double s = (la[0] + lb[0]) >= 0 ? 1.0 : -1.0;
    auto delta = [&](const std::array<double, 2>& l) { return h2 / 2 * std::max(0.0, s * l[0]) / std::max(l[1], 1e-300); };
    std::size_t i0 = levels.index_of(delta(la));
    std::size_t i1 = levels.index_of(delta(lb));
    if (i0 > i1) std::swap(i0, i1);
    const double dx = lb[0] - la[0], dy = lb[1] - la[1];
    for (std::size_t i = i0; i < i1; ++i) {
      const double c = 2 * levels.values[i - 1] / h2;
      const double den = s * dx - c * dy;
      if (den == 0.0) continue;
      const double tt = (c * la[1] - s * la[0]) / den;
      if (tt > 0.0 && tt < 1.0) ts.push_back(tt);
    }
  }
  std::sort(ts.begin(), ts.end());
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double dt = ts[k + 1] - ts[k];
    if (dt <= 0.0) continue;
    const double tm = (ts[k] + ts[k + 1]) / 2;
    const double x = a.ax() + tm * (b.ax() - a.ax());
    const double y = a.ay() + tm * (b.ay() - a.ay());
    cost += weight_in_cell(cell, x, y) * dt;
  }
  return cost * len;
}

namespace {

// Level rays of every anchor term that cross the convex piece.
std::vector<Chord2> piece_chords(const WeightedSubdivision& ws, const ConvexPiece& piece,
                                 const std::vector<Vec2>& poly) {
  std::vector<Chord2> chords;
  const CellData& cd = ws.cells[piece.cell];
  for (std::size_t j = 0; j < cd.terms.size(); ++j) {
    const AnchorFrame& f = cd.terms[j].frame;
    const auto ls = f.local(cd.sample.ax(), cd.sample.ay());
    const double s = ls[0] >= 0 ? 1.0 : -1.0;
    double dmin = 1e300, dmax = -1e300;
    for (const Vec2& v : poly) {
      const auto l = f.local(v[0], v[1]);
      const double d = f.h * f.h / 2 * std::max(0.0, s * l[0]) / std::max(l[1], 1e-300);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    const auto& vals = ws.levels.values;
    for (auto it = std::upper_bound(vals.begin(), vals.end(), dmin); it != vals.end() && *it < dmax; ++it) {
      const double c = 2 * *it / (f.h * f.h);
      const Vec2 dir{s * c * f.u[0] + f.n[0], s * c * f.u[1] + f.n[1]};
      Vec2 a, b;
      if (clip_line(poly, {f.origin.ax(), f.origin.ay()}, dir, a, b)) chords.push_back({j, a, b});
    }
  }
  return chords;
}

}  // namespace

std::size_t WeightedSubdivision::region_count() const {
  std::size_t total = 0;
  for (const ConvexPiece& piece : pieces) {
    const auto poly = to_vec2(piece.ring);
    const auto chords = piece_chords(*this, piece, poly);
    std::size_t crossings = 0;
    for (std::size_t i = 0; i < chords.size(); ++i)
      for (std::size_t k = i + 1; k < chords.size(); ++k)
        if (chords[i].term != chords[k].term && cross_properly(chords[i].a, chords[i].b, chords[k].a, chords[k].b))
          ++crossings;
    total += 1 + chords.size() + crossings;
  }
  return total;
}

double WeightedSubdivision::min_weight() const {
  double best = 1e300;
  for (const ConvexPiece& piece : pieces) {
    const CellData& cd = cells[piece.cell];
    double w = cd.C;
    for (const AnchorTerm& t : cd.terms) {
      const auto ls = t.frame.local(cd.sample.ax(), cd.sample.ay());
      const double s = ls[0] >= 0 ? 1.0 : -1.0;
      double dmin = 1e300, dmax = -1e300;
      for (const Point& v : piece.ring) {
        const auto l = t.frame.local(v.ax(), v.ay());
        const double d = t.frame.h * t.frame.h / 2 * std::max(0.0, s * l[0]) / std::max(l[1], 1e-300);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
      w += t.sign > 0 ? levels.weight_of(dmin) : -levels.weight_of(dmax);
    }
    best = std::min(best, w);
  }
  return std::max(best, 0.0);
}

std::vector<WeightedRegion> WeightedSubdivision::regions() const {
  std::vector<WeightedRegion> out;
  for (const ConvexPiece& piece : pieces) {
    const auto poly = to_vec2(piece.ring);
    std::vector<std::vector<Vec2>> parts{poly};
    const CellData& cd = cells[piece.cell];
    for (const Chord2& c : piece_chords(*this, piece, poly)) {
      const Vec2 o{cd.terms[c.term].frame.origin.ax(), cd.terms[c.term].frame.origin.ay()};
      const Vec2 d{c.b[0] - c.a[0], c.b[1] - c.a[1]};
      std::vector<std::vector<Vec2>> next;
      for (const auto& part : parts)
        for (auto& sub : split_convex(part, o, d)) next.push_back(std::move(sub));
      parts = std::move(next);
    }
    for (auto& part : parts) {
      double cx = 0, cy = 0;
      for (const Vec2& v : part) {
        cx += v[0];
        cy += v[1];
      }
      cx /= static_cast<double>(part.size());
      cy /= static_cast<double>(part.size());
      out.push_back({std::move(part), weight_in_cell(piece.cell, cx, cy)});
    }
  }
  return out;
}

double curved_sector_weight(const PolygonalDomain& domain, const LevelSequence& levels, const Point& p) {
  const VisibilityPolygon vp = visibility_polygon(domain, p);
  double w = 0.0;
  for (const FanTriangle& t : vp.fan) {
    const double area = orient_value(p, t.start.point, t.end.point).get_d() / 2;
    w += levels.weight_of(area);
  }
  return w;
}

}  // namespace secluded
