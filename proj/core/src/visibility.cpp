#include "secluded/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secluded/subdivision.hpp"
#include "polygon_exact.hpp"

namespace secluded {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct DirectionGroup {
  Point vec;                        // direction from the center to the first vertex
  std::vector<std::size_t> verts;   // vertices on this ray, nearest first
};

struct Interval {
  std::size_t first = 0;  // first interval index covered
  std::size_t last = 0;   // last interval index covered
  std::size_t edge = 0;
  Point start_point;
  Point end_point;
};

bool same_direction(const Point& u, const Point& v) { return !angle_less(u, v) && !angle_less(v, u); }

Rational manhattan(const Point& u) { return abs(u.x()) + abs(u.y()); }

// Exact ray parameter of the hit of p + t*probe with the line through a, b.
Rational hit_parameter(const Point& p, const Point& probe, const Point& a, const Point& b) {
  const Point s = b - a;
  return cross(a - p, s) / cross(probe, s);
}

}  // namespace

std::vector<FanSignatureEntry> VisibilityPolygon::signature() const {
  std::vector<FanSignatureEntry> seq;
  seq.reserve(fan.size());
  for (const FanTriangle& t : fan) {
    seq.emplace_back(t.base_edge, static_cast<int>(t.start.kind), t.start.anchor,
                     static_cast<int>(t.end.kind), t.end.anchor);
  }
  if (seq.empty()) return seq;
  std::vector<FanSignatureEntry> best = seq;
  for (std::size_t r = 1; r < seq.size(); ++r) {
    std::vector<FanSignatureEntry> rot(seq.begin() + static_cast<long>(r), seq.end());
    rot.insert(rot.end(), seq.begin(), seq.begin() + static_cast<long>(r));
    if (rot < best) best = std::move(rot);
  }
  return best;
}

VisibilityPolygon visibility_polygon(const PolygonalDomain& domain, const Point& p) {
  const Location loc = locate_point(domain, p);
  if (loc == Location::Exterior) throw GeometryError("point outside domain");
  const auto& verts = domain.vertices();
  const std::size_t n = verts.size();

  std::vector<std::pair<Point, std::size_t>> dirs;
  dirs.reserve(n);
  for (std::size_t v = 0; v < n; ++v)
    if (verts[v] != p) dirs.emplace_back(verts[v] - p, v);
  std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
    if (angle_less(a.first, b.first)) return true;
    if (angle_less(b.first, a.first)) return false;
    return manhattan(a.first) < manhattan(b.first);
  });
  std::vector<DirectionGroup> groups;
  for (const auto& [vec, v] : dirs) {
    if (groups.empty() || !same_direction(groups.back().vec, vec)) groups.push_back({vec, {}});
    groups.back().verts.push_back(v);
  }
  if (groups.size() >= 2 && same_direction(groups.front().vec, groups.back().vec)) {
    // Cannot happen after sorting, kept as a guard against wrap-around ties.
    throw GeometryError("visibility: inconsistent angular order");
  }

  std::vector<char> skip(n, 0);
  for (std::size_t e = 0; e < n; ++e) {
    const auto& de = domain.edges()[e];
    if (on_segment(verts[de.from], verts[de.to], p)) skip[e] = 1;
  }

  const std::size_t k_count = groups.size();
  std::vector<std::optional<Interval>> intervals(k_count);
  for (std::size_t k = 0; k < k_count && k_count >= 2; ++k) {
    const Point& d1 = groups[k].vec;
    const Point& d2 = groups[(k + 1) % k_count].vec;
    const int turn = orient(Point(0, 0), d1, d2);
    Point probe;
    if (turn > 0) {
      probe = d1 + d2;
    } else if (turn == 0) {
      probe = Point(-d1.y(), d1.x());
    } else {
      probe = Point(-(d1.x() + d2.x()), -(d1.y() + d2.y()));
    }
    const Point q = p + probe;

    std::size_t best = kNone;
    double best_t = 0.0;
    bool best_exact = false;  // best_t unreliable, compare exactly
    const double plen = std::hypot(probe.ax(), probe.ay());
    for (std::size_t e = 0; e < n; ++e) {
      if (skip[e]) continue;
      const Point& a = verts[domain.edges()[e].from];
      const Point& b = verts[domain.edges()[e].to];
      const int oa = orient(p, q, a);
      const int ob = orient(p, q, b);
      if (oa * ob >= 0) continue;
      if (orient(p, a, b) != ob) continue;
      const double sx = b.ax() - a.ax();
      const double sy = b.ay() - a.ay();
      const double den = probe.ax() * sy - probe.ay() * sx;
      const double num = (a.ax() - p.ax()) * sy - (a.ay() - p.ay()) * sx;
      const double t = num / den;
      const double slen = std::hypot(sx, sy);
      // Near-parallel hits or p almost on the edge line: doubles can't rank.
      const bool shaky = std::fabs(den) < 1e-7 * plen * slen ||
                         std::fabs(num) < 1e-7 * slen * std::hypot(a.ax() - p.ax(), a.ay() - p.ay());
      bool take;
      if (best == kNone) {
        take = true;
      } else if (shaky || best_exact || std::fabs(t - best_t) <= 1e-9 * std::max(std::fabs(t), std::fabs(best_t))) {
        const Point& ba = verts[domain.edges()[best].from];
        const Point& bb = verts[domain.edges()[best].to];
        take = hit_parameter(p, probe, a, b) < hit_parameter(p, probe, ba, bb);
      } else {
        take = t < best_t;
      }
      if (take) {
        best = e;
        best_t = t;
        best_exact = shaky;
      }
    }
    if (best == kNone) continue;
    const Point& a = verts[domain.edges()[best].from];
    const Point& b = verts[domain.edges()[best].to];
    if (loc == Location::Boundary) {
      const Rational t = hit_parameter(p, probe, a, b);
      if (locate_point(domain, p + Rational(t / 2) * probe) == Location::Exterior) continue;
    }
    Interval iv;
    iv.first = iv.last = k;
    iv.edge = best;
    iv.start_point = *line_intersection(p, verts[groups[k].verts.front()], a, b);
    iv.end_point = *line_intersection(p, verts[groups[(k + 1) % k_count].verts.front()], a, b);
    intervals[k] = std::move(iv);
  }

  // Merge neighbouring intervals that continue the same base without a jump.
  std::vector<Interval> merged;
  for (std::size_t k = 0; k < k_count; ++k) {
    if (!intervals[k]) continue;
    Interval& cur = *intervals[k];
    if (!merged.empty()) {
      Interval& prev = merged.back();
      if (prev.last + 1 == k && prev.edge == cur.edge && prev.end_point == cur.start_point) {
        prev.last = k;
        prev.end_point = cur.end_point;
        continue;
      }
    }
    merged.push_back(cur);
  }
  if (merged.size() >= 2) {
    Interval& first = merged.front();
    Interval& last = merged.back();
    if ((last.last + 1) % k_count == first.first && last.edge == first.edge &&
        last.end_point == first.start_point) {
      first.first = last.first;
      first.start_point = last.start_point;
      merged.pop_back();
    }
  }

  auto classify = [&](std::size_t g, const Point& hit) {
    FanSide side;
    side.point = hit;
    const DirectionGroup& grp = groups[g];
    for (std::size_t v : grp.verts) {
      if (verts[v] == hit) {
        side.kind = SideKind::FixedEndpoint;
        side.anchor = v;
        return side;
      }
    }
    const Rational reach = dot(hit - p, grp.vec);
    std::size_t anchor = kNone;
    for (std::size_t v : grp.verts)
      if (dot(verts[v] - p, grp.vec) < reach) anchor = v;
    if (anchor == kNone) throw GeometryError("visibility: rotating side without anchor");
    side.kind = SideKind::Rotating;
    side.anchor = anchor;
    return side;
  };

  VisibilityPolygon vp;
  vp.center = p;
  vp.exact_area = 0;
  for (const Interval& iv : merged) {
    FanTriangle t;
    t.base_edge = iv.edge;
    t.start = classify(iv.first, iv.start_point);
    t.end = classify((iv.last + 1) % k_count, iv.end_point);
    vp.exact_area += orient_value(p, iv.start_point, iv.end_point);
    vp.fan.push_back(std::move(t));
  }
  vp.exact_area /= 2;
  vp.area = vp.exact_area.get_d();

  for (std::size_t i = 0; i < merged.size(); ++i) {
    const Interval& iv = merged[i];
    if (vp.boundary.empty() || vp.boundary.back() != iv.start_point) vp.boundary.push_back(iv.start_point);
    if (vp.boundary.back() != iv.end_point) vp.boundary.push_back(iv.end_point);
    const Interval& nx = merged[(i + 1) % merged.size()];
    const bool contiguous = (iv.last + 1) % k_count == nx.first;
    if (!contiguous && vp.boundary.back() != p) vp.boundary.push_back(p);
  }
  while (vp.boundary.size() > 1 && vp.boundary.front() == vp.boundary.back()) vp.boundary.pop_back();
  return vp;
}

double visible_area(const PolygonalDomain& domain, const Point& p) {
  return visibility_polygon(domain, p).area;
}

bool sees(const PolygonalDomain& domain, const Point& p, const Point& q) {
  return segment_in_domain(domain, p, q);
}

bool VisibilityGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto& row = adjacency[u];
  return std::find(row.begin(), row.end(), v) != row.end();
}

VisibilityGraph visibility_graph(const PolygonalDomain& domain) {
  const auto& verts = domain.vertices();
  const std::size_t n = verts.size();
  VisibilityGraph g;
  g.vertex_count = n;
  g.adjacency.assign(n, {});
  const Point o(0, 0);
  auto leaves_into_domain = [&](std::size_t u, const Point& d) {
    if (domain.direction_enters_interior(u, d)) return true;
    for (std::size_t w : {domain.next(u), domain.prev(u)}) {
      const Point e = verts[w] - verts[u];
      if (orient(o, e, d) == 0 && sgn(dot(e, d)) > 0) return true;
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const Point d = verts[v] - verts[u];
      if (!leaves_into_domain(u, d)) continue;
      if (!leaves_into_domain(v, verts[u] - verts[v])) continue;
      const Point exit = ray_exit(domain, verts[u], d);
      if (dot(exit - verts[u], d) < dot(d, d)) continue;
      g.edges.emplace_back(u, v);
      g.adjacency[u].push_back(v);
      g.adjacency[v].push_back(u);
    }
  }
  return g;
}

std::vector<Point> weak_visibility_samples(const PathPolyline& path, const std::vector<Segment>& cuts,
                                           int refinement) {
  if (refinement < 1) throw GeometryError("refinement must be positive");
  std::vector<Point> out;
  const auto& pv = path.vertices;
  if (pv.size() == 1) return {pv.front()};
  for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
    const Point& a = pv[i];
    const Point& b = pv[i + 1];
    const Point ab = b - a;
    const Rational len2 = dot(ab, ab);
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (const Segment& c : cuts) {
      if (!segments_intersect(a, b, c.a, c.b)) continue;
      const int oc = orient(a, b, c.a);
      const int od = orient(a, b, c.b);
      if (oc == 0 && od == 0) {
        for (const Point* q : {&c.a, &c.b}) {
          Rational t = dot(*q - a, ab) / len2;
          if (sgn(t) >= 0 && t <= 1) ts.push_back(t);
        }
        continue;
      }
      if (auto x = line_intersection(a, b, c.a, c.b)) ts.push_back(dot(*x - a, ab) / len2);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      for (int m = 0; m < refinement; ++m) {
        const Rational t = ts[j] + (ts[j + 1] - ts[j]) * Rational(m, refinement);
        const Point q = a + t * ab;
        if (out.empty() || out.back() != q) out.push_back(q);
      }
    }
  }
  if (out.empty() || out.back() != pv.back()) out.push_back(pv.back());
  return out;
}

double weak_visibility_area(const PolygonalDomain& domain, const PathPolyline& path, int refinement,
                            const std::vector<Segment>& cuts) {
  std::vector<Ring> rings;
  for (const Point& q : weak_visibility_samples(path, cuts, refinement))
    rings.push_back(visibility_polygon(domain, q).boundary);
  return union_area(rings);
}

double weak_visibility_area(const PolygonalDomain& domain, const PathPolyline& path, int refinement) {
  std::vector<Segment> cuts;
  for (const Chord& c : extend_visibility_edges(domain, visibility_graph(domain)))
    cuts.push_back({c.a, c.b});
  return weak_visibility_area(domain, path, refinement, cuts);
}

double union_area(const std::vector<Ring>& rings) {
  namespace bp = boost::polygon;
  double max_abs = 1.0;
  for (const Ring& r : rings)
    for (const Point& q : r) max_abs = std::max({max_abs, std::fabs(q.ax()), std::fabs(q.ay())});
  const int shift = 29 - static_cast<int>(std::ceil(std::log2(max_abs + 1.0)));
  const double scale = std::ldexp(1.0, shift);

  bp::polygon_set_data<int> set;
  for (const Ring& r : rings) {
    std::vector<bp::point_data<int>> pts;
    pts.reserve(r.size());
    for (const Point& q : r) {
      bp::point_data<int> ip(static_cast<int>(std::lround(q.ax() * scale)),
                             static_cast<int>(std::lround(q.ay() * scale)));
      if (pts.empty() || pts.back() != ip) pts.push_back(ip);
    }
    while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    if (pts.size() < 3) continue;
    bp::polygon_data<int> poly;
    poly.set(pts.begin(), pts.end());
    set.insert(poly);
  }
  std::vector<bp::polygon_with_holes_data<int>> out;
  set.get(out);
  auto ring_area2 = [](auto begin, auto end) {
    long double s = 0;
    if (begin == end) return s;
    auto prev = begin;
    auto first = begin;
    for (auto it = std::next(begin); it != end; ++it) {
      s += static_cast<long double>(bp::x(*prev)) * bp::y(*it) -
           static_cast<long double>(bp::y(*prev)) * bp::x(*it);
      prev = it;
    }
    s += static_cast<long double>(bp::x(*prev)) * bp::y(*first) -
         static_cast<long double>(bp::y(*prev)) * bp::x(*first);
    return s;
  };
  long double total = 0;
  for (const auto& pwh : out) {
    total += std::fabs(ring_area2(pwh.begin(), pwh.end()));
    for (auto h = pwh.begin_holes(); h != pwh.end_holes(); ++h)
      total -= std::fabs(ring_area2(h->begin(), h->end()));
  }
  return static_cast<double>(total / 2 / (static_cast<long double>(scale) * scale));
}

}  // namespace secluded
