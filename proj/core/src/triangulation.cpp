#include "secluded/triangulation.hpp"

#include <algorithm>
#include <map>

namespace secluded {

namespace {

bool in_closed_triangle(const Point& a, const Point& b, const Point& c, const Point& p) {
  return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

std::size_t max_x_vertex(const Ring& r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const int c = cmp(r[i].x(), r[best].x());
    if (c > 0 || (c == 0 && r[i].y() > r[best].y())) best = i;
  }
  return best;
}

// Splices a clockwise hole into the counterclockwise polygon `poly` through a
// bridge from the hole's rightmost vertex to a visible polygon vertex.
void bridge_hole(std::vector<Point>& poly, const Ring& hole) {
  const std::size_t mi = max_x_vertex(hole);
  const Point& m = hole[mi];
  const std::size_t n = poly.size();

  // Nearest intersection of the ray m + t(1,0), t >= 0, with the polygon.
  std::optional<Rational> best_x;
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    // Only edges with the interior above the ray (a below-to-above crossing
    // in a CCW polygon means the edge goes upward on the right side).
    if (a.y() > m.y() || b.y() < m.y()) continue;
    if (a.y() == b.y()) continue;
    const Rational x = a.x() + (m.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
    if (x < m.x()) continue;
    if (!best_x || x < *best_x) {
      best_x = x;
      best_edge = i;
    }
  }
  if (!best_x) throw GeometryError("triangulation: hole bridge not found");
  const Point ipt(*best_x, m.y());
  const Point& ea = poly[best_edge];
  const Point& eb = poly[(best_edge + 1) % n];
  std::size_t target;
  if (ipt == ea) {
    target = best_edge;
  } else if (ipt == eb) {
    target = (best_edge + 1) % n;
  } else {
    target = ea.x() > eb.x() ? best_edge : (best_edge + 1) % n;
    const Point& p = poly[target];
    // Reflex vertices inside triangle (m, ipt, p) may block the bridge.
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == target) continue;
      const Point& v = poly[i];
      if (v == p) continue;
      const Point& pv = poly[(i + n - 1) % n];
      const Point& nv = poly[(i + 1) % n];
      if (orient(pv, v, nv) >= 0) continue;  // not reflex
      const bool inside = orient(m, ipt, p) > 0 ? in_closed_triangle(m, ipt, p, v)
                                               : in_closed_triangle(m, p, ipt, v);
      if (!inside) continue;
      if (!chosen) {
        chosen = i;
        continue;
      }
      // Prefer the smallest angle to the +x axis, then the nearest.
      const Point dv = v - m;
      const Point dc = poly[*chosen] - m;
      const Rational lhs = abs(dv.y()) * dc.x();
      const Rational rhs = abs(dc.y()) * dv.x();
      if (lhs < rhs || (lhs == rhs && dot(dv, dv) < dot(dc, dc))) chosen = i;
    }
    if (chosen) target = *chosen;
  }

  std::vector<Point> out;
  out.reserve(n + hole.size() + 2);
  for (std::size_t i = 0; i <= target; ++i) out.push_back(poly[i]);
  for (std::size_t k = 0; k <= hole.size(); ++k) out.push_back(hole[(mi + k) % hole.size()]);
  for (std::size_t i = target; i < n; ++i) out.push_back(poly[i]);
  poly = std::move(out);
}

}  // namespace

Rational Triangulation::triangle_area(std::size_t t) const {
  const auto& tr = triangles[t];
  return orient_value(points[tr[0]], points[tr[1]], points[tr[2]]) / 2;
}

Rational Triangulation::area() const {
  Rational sum = 0;
  for (std::size_t t = 0; t < triangles.size(); ++t) sum += triangle_area(t);
  return sum;
}

std::optional<std::size_t> Triangulation::locate(const Point& p) const {
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tr = triangles[t];
    if (in_closed_triangle(points[tr[0]], points[tr[1]], points[tr[2]], p)) return t;
  }
  return std::nullopt;
}

Triangulation triangulate_polygon(Ring outer, std::vector<Ring> holes) {
  if (ring_signed_area2(outer) < 0) std::reverse(outer.begin(), outer.end());
  for (Ring& h : holes)
    if (ring_signed_area2(h) > 0) std::reverse(h.begin(), h.end());
  std::sort(holes.begin(), holes.end(), [](const Ring& a, const Ring& b) {
    return a[max_x_vertex(a)].x() > b[max_x_vertex(b)].x();
  });

  std::vector<Point> poly = std::move(outer);
  for (const Ring& h : holes) bridge_hole(poly, h);

  Triangulation tri;
  std::map<Point, std::size_t> ids;
  std::vector<std::size_t> vid(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    auto [it, inserted] = ids.emplace(poly[i], tri.points.size());
    if (inserted) tri.points.push_back(poly[i]);
    vid[i] = it->second;
  }

  const std::size_t n = poly.size();
  std::vector<std::size_t> next(n), prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = (i + 1) % n;
    prev[i] = (i + n - 1) % n;
  }
  std::size_t remaining = n;
  std::size_t cur = 0;
  std::size_t stall = 0;
  while (remaining > 3) {
    const std::size_t a = prev[cur], b = cur, c = next[cur];
    const int o = orient(poly[a], poly[b], poly[c]);
    bool ear = false;
    bool drop = false;
    if (o > 0) {
      ear = true;
      for (std::size_t k = next[c]; k != a; k = next[k]) {
        const Point& q = poly[k];
        if (q == poly[a] || q == poly[b] || q == poly[c]) continue;
        if (in_closed_triangle(poly[a], poly[b], poly[c], q)) {
          ear = false;
          break;
        }
      }
    } else if (o == 0 && on_segment(poly[a], poly[c], poly[b])) {
      // Straight vertex: clipping it silently would leave a T-junction, so
      // only as a last resort (all that is left is degenerate).
      drop = stall > remaining;
    } else if (o == 0 && poly[a] == poly[c]) {
      drop = true;  // zero-width spike
    }
    if (ear || drop) {
      if (ear) tri.triangles.push_back({vid[a], vid[b], vid[c]});
      next[a] = c;
      prev[c] = a;
      --remaining;
      cur = a;
      stall = 0;
      continue;
    }
    cur = next[cur];
    if (++stall > 2 * remaining) throw GeometryError("triangulation failed");
  }
  if (remaining == 3) {
    const std::size_t a = prev[cur], b = cur, c = next[cur];
    if (orient(poly[a], poly[b], poly[c]) > 0) tri.triangles.push_back({vid[a], vid[b], vid[c]});
  }

  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> edge_owner;
  tri.neighbors.assign(tri.triangles.size(), {-1, -1, -1});
  for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      std::size_t u = tri.triangles[t][i];
      std::size_t v = tri.triangles[t][(i + 1) % 3];
      auto key = std::minmax(u, v);
      auto it = edge_owner.find(key);
      if (it == edge_owner.end()) {
        edge_owner.emplace(key, std::make_pair(t, i));
      } else {
        tri.neighbors[t][i] = static_cast<long>(it->second.first);
        tri.neighbors[it->second.first][it->second.second] = static_cast<long>(t);
      }
    }
  }
  return tri;
}

Triangulation triangulate(const PolygonalDomain& domain) {
  return triangulate_polygon(domain.outer(), domain.holes());
}

}  // namespace secluded
