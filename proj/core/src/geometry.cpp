#include "secluded/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace secluded {

Point::Point(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
  ax_ = x_.get_d();
  ay_ = y_.get_d();
}

Point Point::from_double(double x, double y) { return Point(Rational(x), Rational(y)); }

Point operator+(const Point& a, const Point& b) { return Point(a.x() + b.x(), a.y() + b.y()); }
Point operator-(const Point& a, const Point& b) { return Point(a.x() - b.x(), a.y() - b.y()); }
Point operator*(const Rational& s, const Point& a) { return Point(s * a.x(), s * a.y()); }

Rational cross(const Point& u, const Point& v) { return u.x() * v.y() - u.y() * v.x(); }
Rational dot(const Point& u, const Point& v) { return u.x() * v.x() + u.y() * v.y(); }

Rational orient_value(const Point& a, const Point& b, const Point& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

int orient(const Point& a, const Point& b, const Point& c) {
  const double bax = b.ax() - a.ax();
  const double bay = b.ay() - a.ay();
  const double cax = c.ax() - a.ax();
  const double cay = c.ay() - a.ay();
  const double det = bax * cay - bay * cax;
  const double bound =
      1e-14 * ((std::fabs(a.ax()) + std::fabs(b.ax())) * (std::fabs(a.ay()) + std::fabs(c.ay())) +
               (std::fabs(a.ay()) + std::fabs(b.ay())) * (std::fabs(a.ax()) + std::fabs(c.ax())));
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return sgn(orient_value(a, b, c));
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.ax() - b.ax(), a.ay() - b.ay());
}

bool on_segment(const Point& a, const Point& b, const Point& c) {
  if (orient(a, b, c) != 0) return false;
  const Rational& lox = a.x() < b.x() ? a.x() : b.x();
  const Rational& hix = a.x() < b.x() ? b.x() : a.x();
  const Rational& loy = a.y() < b.y() ? a.y() : b.y();
  const Rational& hiy = a.y() < b.y() ? b.y() : a.y();
  return lox <= c.x() && c.x() <= hix && loy <= c.y() && c.y() <= hiy;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d) {
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c,
                                       const Point& d) {
  const Point r = b - a;
  const Point s = d - c;
  const Rational denom = cross(r, s);
  if (sgn(denom) == 0) return std::nullopt;
  const Rational t = cross(c - a, s) / denom;
  return a + t * r;
}

namespace {
int half_plane(const Point& u) {
  const int sy = sgn(u.y());
  return (sy < 0 || (sy == 0 && sgn(u.x()) < 0)) ? 1 : 0;
}
}  // namespace

bool angle_less(const Point& u, const Point& v) {
  const int hu = half_plane(u);
  const int hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return orient(Point(0, 0), u, v) > 0;
}

Rational ring_signed_area2(const Ring& ring) {
  Rational sum = 0;
  const std::size_t m = ring.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % m];
    sum += a.x() * b.y() - a.y() * b.x();
  }
  return sum;
}

bool ring_is_simple(const Ring& ring) {
  const std::size_t m = ring.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i)
    if (ring[i] == ring[(i + 1) % m]) return false;
  if (sgn(ring_signed_area2(ring)) == 0) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % m];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Point& c = ring[j];
      const Point& d = ring[(j + 1) % m];
      const bool adjacent_next = (j == i + 1);
      const bool adjacent_prev = (i == 0 && j == m - 1);
      if (!adjacent_next && !adjacent_prev) {
        if (segments_intersect(a, b, c, d)) return false;
        continue;
      }
      // Consecutive edges share one endpoint; they must not fold back.
      const Point& shared = adjacent_next ? b : a;
      const Point& other1 = adjacent_next ? a : b;
      const Point& other2 = adjacent_next ? d : c;
      if (orient(other1, shared, other2) == 0) {
        const Point u = other1 - shared;
        const Point v = other2 - shared;
        if (sgn(dot(u, v)) > 0) return false;
      }
      (void)c;
    }
  }
  return true;
}

Rational polygon_area(const Ring& ring) {
  if (!ring_is_simple(ring)) throw GeometryError("ring not simple");
  Rational a2 = ring_signed_area2(ring);
  if (a2 < 0) a2 = -a2;
  return a2 / 2;
}

Location locate_in_ring(const Ring& ring, const Point& p) {
  const std::size_t m = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % m];
    if (on_segment(a, b, p)) return Location::Boundary;
    const bool a_above = a.y() > p.y();
    const bool b_above = b.y() > p.y();
    if (a_above != b_above) {
      const int o = orient(a, b, p);
      // Upward edge with p on its left, or downward edge with p on its right.
      if ((b_above && o > 0) || (!b_above && o < 0)) inside = !inside;
    }
  }
  return inside ? Location::Interior : Location::Exterior;
}

PolygonalDomain PolygonalDomain::create(Ring outer, std::vector<Ring> holes) {
  auto check_ring = [](const Ring& r, const char* what) {
    for (const Point& p : r) {
      if (p.x().get_den() != 1 || p.y().get_den() != 1)
        throw GeometryError(std::string(what) + " has non-integer coordinates");
    }
    if (r.size() < 3) throw GeometryError(std::string(what) + " has fewer than 3 vertices");
    if (!ring_is_simple(r)) throw GeometryError(std::string(what) + " ring not simple");
  };
  check_ring(outer, "outer");
  for (const Ring& h : holes) check_ring(h, "hole");

  if (ring_signed_area2(outer) < 0) std::reverse(outer.begin(), outer.end());
  for (Ring& h : holes)
    if (ring_signed_area2(h) > 0) std::reverse(h.begin(), h.end());

  for (const Ring& h : holes) {
    for (const Point& p : h)
      if (locate_in_ring(outer, p) != Location::Interior) throw GeometryError("hole not interior");
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < outer.size(); ++j)
        if (segments_intersect(h[i], h[(i + 1) % h.size()], outer[j], outer[(j + 1) % outer.size()]))
          throw GeometryError("hole not interior");
  }
  for (std::size_t a = 0; a < holes.size(); ++a) {
    for (std::size_t b = a + 1; b < holes.size(); ++b) {
      const Ring& ha = holes[a];
      const Ring& hb = holes[b];
      for (std::size_t i = 0; i < ha.size(); ++i)
        for (std::size_t j = 0; j < hb.size(); ++j)
          if (segments_intersect(ha[i], ha[(i + 1) % ha.size()], hb[j], hb[(j + 1) % hb.size()]))
            throw GeometryError("holes overlap");
      if (locate_in_ring(hb, ha[0]) != Location::Exterior ||
          locate_in_ring(ha, hb[0]) != Location::Exterior)
        throw GeometryError("holes overlap");
    }
  }

  PolygonalDomain d;
  d.outer_ = std::move(outer);
  d.holes_ = std::move(holes);
  auto add_ring = [&d](const Ring& r, std::size_t ring_id) {
    const std::size_t base = d.vertices_.size();
    for (std::size_t i = 0; i < r.size(); ++i) {
      d.vertices_.push_back(r[i]);
      d.edges_.push_back({base + i, base + (i + 1) % r.size()});
      d.prev_.push_back(base + (i + r.size() - 1) % r.size());
      d.ring_of_.push_back(ring_id);
    }
  };
  add_ring(d.outer_, 0);
  for (std::size_t h = 0; h < d.holes_.size(); ++h) add_ring(d.holes_[h], h + 1);
  for (const Point& p : d.vertices_) {
    d.max_abs_ = std::max(d.max_abs_, std::abs(p.x().get_num().get_si()));
    d.max_abs_ = std::max(d.max_abs_, std::abs(p.y().get_num().get_si()));
  }
  return d;
}

Rational PolygonalDomain::area() const {
  Rational a = ring_signed_area2(outer_);
  for (const Ring& h : holes_) a += ring_signed_area2(h);  // holes are clockwise
  return a / 2;
}

std::optional<std::size_t> PolygonalDomain::vertex_index(const Point& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].ax() == p.ax() && vertices_[i].ay() == p.ay() && vertices_[i] == p) return i;
  }
  return std::nullopt;
}

bool PolygonalDomain::direction_enters_interior(std::size_t v, const Point& d) const {
  const Point o(0, 0);
  const Point e_out = vertices_[next(v)] - vertices_[v];
  const Point e_in = vertices_[prev(v)] - vertices_[v];
  const int turn = orient(o, e_out, e_in);
  if (turn > 0) return orient(o, e_out, d) > 0 && orient(o, d, e_in) > 0;
  if (turn < 0) return !(orient(o, e_in, d) >= 0 && orient(o, d, e_out) >= 0);
  return orient(o, e_out, d) > 0;
}

Rational polygon_area(const PolygonalDomain& domain) { return domain.area(); }

Location locate_point(const PolygonalDomain& domain, const Point& p) {
  const Location outer = locate_in_ring(domain.outer(), p);
  if (outer != Location::Interior) return outer;
  for (const Ring& h : domain.holes()) {
    const Location l = locate_in_ring(h, p);
    if (l == Location::Boundary) return Location::Boundary;
    if (l == Location::Interior) return Location::Exterior;
  }
  return Location::Interior;
}

bool segment_in_domain(const PolygonalDomain& domain, const Point& a, const Point& b) {
  if (locate_point(domain, a) == Location::Exterior) return false;
  if (a == b) return true;
  const Point dir = b - a;
  const Point exit = ray_exit(domain, a, dir);
  // b must be no farther than the exit point along dir.
  return dot(exit - a, dir) >= dot(dir, dir);
}

Point ray_exit(const PolygonalDomain& domain, const Point& origin, const Point& dir) {
  const Point far = origin + dir;
  std::vector<Rational> ts;
  ts.emplace_back(0);
  const Rational dd = dot(dir, dir);
  for (const DomainEdge& e : domain.edges()) {
    const Point& a = domain.vertices()[e.from];
    const Point& b = domain.vertices()[e.to];
    const int oa = orient(origin, far, a);
    const int ob = orient(origin, far, b);
    if (oa == 0 && ob == 0) {
      for (const Point* q : {&a, &b}) {
        Rational t = dot(*q - origin, dir) / dd;
        if (sgn(t) > 0) ts.push_back(t);
      }
      continue;
    }
    if (oa * ob > 0) continue;
    const Point s = b - a;
    const Rational denom = cross(dir, s);
    if (sgn(denom) == 0) continue;
    Rational t = cross(a - origin, s) / denom;
    if (sgn(t) > 0) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const Rational mid = (ts[i] + ts[i + 1]) / 2;
    if (locate_point(domain, origin + mid * dir) == Location::Exterior) return origin + ts[i] * dir;
  }
  return origin + ts.back() * dir;
}

double PathPolyline::length() const {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) len += distance(vertices[i], vertices[i + 1]);
  return len;
}

PathPolyline simplify(PathPolyline path) {
  std::vector<Point> out;
  for (const Point& p : path.vertices) {
    if (!out.empty() && out.back() == p) continue;
    while (out.size() >= 2) {
      const Point& a = out[out.size() - 2];
      const Point& b = out.back();
      if (orient(a, b, p) == 0 && on_segment(a, p, b)) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(p);
  }
  path.vertices = std::move(out);
  return path;
}

}  // namespace secluded
