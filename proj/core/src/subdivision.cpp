#include "secluded/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "secluded/triangulation.hpp"

namespace secluded {

namespace {

struct InputSegment {
  Point a;
  Point b;
  bool boundary = false;  // domain edge, interior on the left of a->b
};

bool boxes_apart(const InputSegment& s, const InputSegment& t) {
  const double slack = 1e-9 * (1.0 + std::fabs(s.a.ax()) + std::fabs(s.a.ay()));
  auto lo = [](double u, double v) { return std::min(u, v); };
  auto hi = [](double u, double v) { return std::max(u, v); };
  return hi(s.a.ax(), s.b.ax()) + slack < lo(t.a.ax(), t.b.ax()) ||
         hi(t.a.ax(), t.b.ax()) + slack < lo(s.a.ax(), s.b.ax()) ||
         hi(s.a.ay(), s.b.ay()) + slack < lo(t.a.ay(), t.b.ay()) ||
         hi(t.a.ay(), t.b.ay()) + slack < lo(s.a.ay(), s.b.ay());
}

Ring cycle_ring(const Subdivision& sub, const std::vector<std::size_t>& cyc) {
  Ring r;
  r.reserve(cyc.size());
  for (std::size_t v : cyc) r.push_back(sub.vertices[v]);
  return r;
}

}  // namespace

Ring Subdivision::outer_ring(std::size_t f) const { return cycle_ring(*this, faces[f].outer); }

bool Subdivision::face_contains(std::size_t f, const Point& p) const {
  const Face& face = faces[f];
  const double slack = 1e-9 * (1.0 + std::fabs(face.bbox[2]) + std::fabs(face.bbox[3]));
  if (p.ax() < face.bbox[0] - slack || p.ay() < face.bbox[1] - slack || p.ax() > face.bbox[2] + slack ||
      p.ay() > face.bbox[3] + slack)
    return false;
  if (locate_in_ring(outer_ring(f), p) == Location::Exterior) return false;
  for (const auto& cyc : face.inner) {
    const Ring r = cycle_ring(*this, cyc);
    if (sgn(ring_signed_area2(r)) == 0) continue;
    if (locate_in_ring(r, p) == Location::Interior) return false;
  }
  return true;
}

std::size_t Subdivision::locate(const Point& p) const {
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (face_contains(f, p)) return f;
  throw GeometryError("point outside subdivision");
}

Rational Subdivision::total_area() const {
  Rational s = 0;
  for (const Face& f : faces) s += f.area;
  return s;
}

std::size_t locate(const Subdivision& sub, const Point& p) { return sub.locate(p); }

std::vector<Chord> extend_visibility_edges(const PolygonalDomain& domain, const VisibilityGraph& vg) {
  const auto& verts = domain.vertices();
  std::set<std::pair<Point, Point>> seen;
  std::vector<Chord> out;
  for (const auto& [u, v] : vg.edges) {
    const Point d = verts[v] - verts[u];
    const Point fwd = ray_exit(domain, verts[u], d);
    const Point back = ray_exit(domain, verts[v], Point(-d.x(), -d.y()));
    auto key = std::minmax(back, fwd);
    if (!seen.insert({key.first, key.second}).second) continue;
    Chord c{key.first, key.second, {}};
    std::vector<std::pair<Rational, std::size_t>> on;
    const Point dir = c.b - c.a;
    for (std::size_t w = 0; w < verts.size(); ++w)
      if (on_segment(c.a, c.b, verts[w])) on.emplace_back(dot(verts[w] - c.a, dir), w);
    std::sort(on.begin(), on.end());
    for (const auto& [t, w] : on) c.through.push_back(w);
    out.push_back(std::move(c));
  }
  return out;
}

Subdivision build_arrangement(const PolygonalDomain& domain, const std::vector<Chord>& chords) {
  std::vector<Segment> segs;
  segs.reserve(chords.size());
  for (const Chord& c : chords) segs.push_back({c.a, c.b});
  return build_arrangement(domain, segs);
}

Subdivision build_arrangement(const PolygonalDomain& domain, const std::vector<Segment>& segments) {
  std::vector<InputSegment> segs;
  for (const DomainEdge& e : domain.edges())
    segs.push_back({domain.vertices()[e.from], domain.vertices()[e.to], true});
  for (const Segment& s : segments)
    if (s.a != s.b) segs.push_back({s.a, s.b, false});

  // Split every segment at all points where another one touches it.
  struct Piece {
    bool exterior_on_right = false;  // boundary piece stored min->max, exterior right
    bool exterior_on_left = false;
  };
  std::map<std::pair<Point, Point>, Piece> pieces;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const InputSegment& s = segs[i];
    std::vector<Point> pts{s.a, s.b};
    for (std::size_t j = 0; j < segs.size(); ++j) {
      if (j == i || boxes_apart(s, segs[j])) continue;
      const InputSegment& t = segs[j];
      const int oc = orient(s.a, s.b, t.a);
      const int od = orient(s.a, s.b, t.b);
      if (oc == 0 && od == 0) {
        if (on_segment(s.a, s.b, t.a)) pts.push_back(t.a);
        if (on_segment(s.a, s.b, t.b)) pts.push_back(t.b);
        continue;
      }
      if (oc * od > 0) continue;
      const int oa = orient(t.a, t.b, s.a);
      const int ob = orient(t.a, t.b, s.b);
      if (oa * ob > 0) continue;
      if (oc == 0) {
        pts.push_back(t.a);
      } else if (od == 0) {
        pts.push_back(t.b);
      } else if (oa == 0) {
        pts.push_back(s.a);
      } else if (ob == 0) {
        pts.push_back(s.b);
      } else if (auto x = line_intersection(s.a, s.b, t.a, t.b)) {
        pts.push_back(*x);
      }
    }
    const Point dir = s.b - s.a;
    std::sort(pts.begin(), pts.end(),
              [&](const Point& p, const Point& q) { return dot(p - s.a, dir) < dot(q - s.a, dir); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const bool forward = pts[k] < pts[k + 1];
      auto key = forward ? std::make_pair(pts[k], pts[k + 1]) : std::make_pair(pts[k + 1], pts[k]);
      Piece& pc = pieces[key];
      if (s.boundary) (forward ? pc.exterior_on_right : pc.exterior_on_left) = true;
    }
  }

  Subdivision sub;
  for (const Segment& s : segments)
    if (s.a != s.b) sub.segments.push_back(s);
  std::map<Point, std::size_t> vid;
  for (const auto& [key, pc] : pieces) {
    vid.emplace(key.first, 0);
    vid.emplace(key.second, 0);
  }
  for (auto& [p, id] : vid) {
    id = sub.vertices.size();
    sub.vertices.push_back(p);
  }
  const std::size_t nv = sub.vertices.size();

  // Half-edge 2e runs u->v, 2e+1 runs v->u.
  std::vector<char> exterior;
  std::vector<std::vector<std::size_t>> out(nv);
  for (const auto& [key, pc] : pieces) {
    const std::size_t e = sub.edges.size();
    sub.edges.push_back({vid[key.first], vid[key.second], kNoFace, kNoFace});
    exterior.push_back(pc.exterior_on_left);
    exterior.push_back(pc.exterior_on_right);
    out[sub.edges[e].u].push_back(2 * e);
    out[sub.edges[e].v].push_back(2 * e + 1);
  }
  auto origin = [&](std::size_t h) { return h % 2 == 0 ? sub.edges[h / 2].u : sub.edges[h / 2].v; };
  auto target = [&](std::size_t h) { return h % 2 == 0 ? sub.edges[h / 2].v : sub.edges[h / 2].u; };
  std::vector<std::size_t> pos(2 * sub.edges.size());
  for (std::size_t v = 0; v < nv; ++v) {
    auto& row = out[v];
    const Point& pv = sub.vertices[v];
    std::sort(row.begin(), row.end(), [&](std::size_t a, std::size_t b) {
      return angle_less(sub.vertices[target(a)] - pv, sub.vertices[target(b)] - pv);
    });
    for (std::size_t i = 0; i < row.size(); ++i) pos[row[i]] = i;
  }
  auto next = [&](std::size_t h) {
    const std::size_t t = h ^ 1;
    const auto& row = out[target(h)];
    return row[(pos[t] + row.size() - 1) % row.size()];
  };

  struct Cycle {
    std::vector<std::size_t> halfedges;
    std::vector<std::size_t> verts;
    Rational area2;
    bool outside = false;
  };
  std::vector<Cycle> cycles;
  std::vector<std::size_t> cycle_of(2 * sub.edges.size(), kNoFace);
  for (std::size_t h0 = 0; h0 < cycle_of.size(); ++h0) {
    if (cycle_of[h0] != kNoFace) continue;
    Cycle c;
    std::size_t h = h0;
    do {
      cycle_of[h] = cycles.size();
      c.halfedges.push_back(h);
      c.verts.push_back(origin(h));
      if (exterior[h]) c.outside = true;
      h = next(h);
    } while (h != h0);
    c.area2 = ring_signed_area2(cycle_ring(sub, c.verts));
    cycles.push_back(std::move(c));
  }

  std::vector<std::size_t> face_of_cycle(cycles.size(), kNoFace);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].outside || sgn(cycles[c].area2) <= 0) continue;
    face_of_cycle[c] = sub.faces.size();
    Subdivision::Face f;
    f.outer = cycles[c].verts;
    f.area = cycles[c].area2 / 2;
    f.bbox = {INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (std::size_t v : f.outer) {
      const Point& p = sub.vertices[v];
      f.bbox = {std::min(f.bbox[0], p.ax()), std::min(f.bbox[1], p.ay()), std::max(f.bbox[2], p.ax()),
                std::max(f.bbox[3], p.ay())};
    }
    sub.faces.push_back(std::move(f));
  }
  // Islands: attach each remaining inner cycle to the smallest face around it.
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].outside || sgn(cycles[c].area2) > 0) continue;
    const Point& probe = sub.vertices[cycles[c].verts.front()];
    std::size_t best = kNoFace;
    for (std::size_t f = 0; f < sub.faces.size(); ++f) {
      if (locate_in_ring(sub.outer_ring(f), probe) != Location::Interior) continue;
      if (best == kNoFace || sub.faces[f].area < sub.faces[best].area) best = f;
    }
    if (best == kNoFace) continue;
    face_of_cycle[c] = best;
    sub.faces[best].inner.push_back(cycles[c].verts);
    sub.faces[best].area += cycles[c].area2 / 2;
  }

  for (std::size_t h = 0; h < cycle_of.size(); ++h) {
    const std::size_t f = face_of_cycle[cycle_of[h]];
    if (h % 2 == 0) {
      sub.edges[h / 2].left = f;
    } else {
      sub.edges[h / 2].right = f;
    }
    if (f != kNoFace) sub.faces[f].edges.push_back(h / 2);
  }
  for (auto& f : sub.faces) {
    std::sort(f.edges.begin(), f.edges.end());
    f.edges.erase(std::unique(f.edges.begin(), f.edges.end()), f.edges.end());
  }
  return sub;
}

Subdivision visibility_decomposition(const PolygonalDomain& domain) {
  return build_arrangement(domain, extend_visibility_edges(domain, visibility_graph(domain)));
}

Point interior_point(const Subdivision& sub, std::size_t f) {
  const auto& face = sub.faces[f];
  std::vector<Ring> holes;
  for (const auto& cyc : face.inner) {
    Ring r = cycle_ring(sub, cyc);
    if (sgn(ring_signed_area2(r)) != 0) holes.push_back(std::move(r));
  }
  const Triangulation tri = triangulate_polygon(sub.outer_ring(f), holes);
  if (tri.triangles.empty()) throw GeometryError("degenerate face");
  std::size_t best = 0;
  for (std::size_t t = 1; t < tri.triangles.size(); ++t)
    if (tri.triangle_area(t) > tri.triangle_area(best)) best = t;
  const auto& tr = tri.triangles[best];
  const Point sum = tri.points[tr[0]] + tri.points[tr[1]] + tri.points[tr[2]];
  return Rational(1, 3) * sum;
}

}  // namespace secluded
