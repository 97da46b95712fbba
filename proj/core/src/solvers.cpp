#include "secluded/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "secluded/exposure.hpp"
#include "secluded/subdivision.hpp"
#include "secluded/triangulation.hpp"
#include "secluded/visibility.hpp"

namespace secluded {

namespace {

void require_inside(const PolygonalDomain& domain, const Point& p, const char* what) {
  if (locate_point(domain, p) == Location::Exterior) throw GeometryError(std::string(what) + " outside the domain");
}

std::vector<Segment> decomposition_cuts(const PolygonalDomain& domain) {
  std::vector<Segment> cuts;
  for (const Chord& c : extend_visibility_edges(domain, visibility_graph(domain))) cuts.push_back({c.a, c.b});
  return cuts;
}

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 18);
}

}  // namespace

PathPolyline shortest_path_simple(const PolygonalDomain& domain, const Point& s, const Point& t) {
  if (!domain.holes().empty()) throw GeometryError("shortest_path_simple needs a simple polygon");
  require_inside(domain, s, "s");
  require_inside(domain, t, "t");
  if (s == t) return PathPolyline{{s}};
  const Triangulation tri = triangulate(domain);
  const auto ts = tri.locate(s);
  const auto tt = tri.locate(t);
  if (!ts || !tt) throw GeometryError("point outside the triangulation");

  // The dual of a simple polygon triangulation is a tree: BFS gives the sleeve.
  const std::size_t nt = tri.triangles.size();
  std::vector<std::size_t> parent(nt, nt);
  std::vector<std::size_t> queue{*ts};
  parent[*ts] = *ts;
  for (std::size_t qi = 0; qi < queue.size() && parent[*tt] == nt; ++qi) {
    const std::size_t u = queue[qi];
    for (long nb : tri.neighbors[u]) {
      if (nb < 0 || parent[nb] != nt) continue;
      parent[nb] = u;
      queue.push_back(static_cast<std::size_t>(nb));
    }
  }
  if (parent[*tt] == nt) throw GeometryError("triangulation dual is disconnected");
  std::vector<std::size_t> sleeve;
  for (std::size_t u = *tt;; u = parent[u]) {
    sleeve.push_back(u);
    if (u == *ts) break;
  }
  std::reverse(sleeve.begin(), sleeve.end());

  std::vector<std::pair<Point, Point>> portals{{s, s}};  // (left, right)
  for (std::size_t k = 0; k + 1 < sleeve.size(); ++k) {
    const auto& tr = tri.triangles[sleeve[k]];
    for (int i = 0; i < 3; ++i) {
      if (tri.neighbors[sleeve[k]][i] != static_cast<long>(sleeve[k + 1])) continue;
      portals.push_back({tri.points[tr[(i + 1) % 3]], tri.points[tr[i]]});
      break;
    }
  }
  portals.push_back({t, t});

  std::vector<Point> out{s};
  Point apex = s, left = s, right = s;
  std::size_t apex_i = 0, left_i = 0, right_i = 0;
  for (std::size_t i = 1; i < portals.size(); ++i) {
    const Point& l = portals[i].first;
    const Point& r = portals[i].second;
    if (orient(apex, right, r) >= 0) {
      if (apex == right || orient(apex, left, r) < 0) {
        right = r;
        right_i = i;
      } else {
        out.push_back(left);
        apex = left;
        apex_i = left_i;
        right = left = apex;
        right_i = left_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    if (orient(apex, left, l) <= 0) {
      if (apex == left || orient(apex, right, l) > 0) {
        left = l;
        left_i = i;
      } else {
        out.push_back(right);
        apex = right;
        apex_i = right_i;
        right = left = apex;
        right_i = left_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  out.push_back(t);
  return simplify(PathPolyline{out});
}

std::optional<EssentialCut> essential_cut(const PolygonalDomain& domain, const Point& p, const Point& s) {
  if (sees(domain, s, p)) return std::nullopt;
  const PathPolyline sp = shortest_path_simple(domain, s, p);
  // Not visible, so the geodesic bends; its first bend is the reflex vertex
  // whose window hides p.
  const Point& v = sp.vertices.at(1);
  const auto vi = domain.vertex_index(v);
  if (!vi) throw GeometryError("geodesic bend is not a domain vertex");
  EssentialCut cut;
  cut.chord = {v, ray_exit(domain, v, v - s)};
  cut.vertex = *vi;
  cut.s_side = -orient(s, v, sp.vertices.at(2));
  return cut;
}

std::vector<Segment> hole_fences(const PolygonalDomain& domain) {
  if (domain.holes().empty()) return {};
  // Fences start at each hole's extreme vertex along d, so every fence ends
  // strictly further along d than it starts: no cycles among fences.
  static const std::vector<Point> dirs{{1000003, 7919}, {7919, 1000003}, {-1000003, 7727}, {6101, -1000033}};
  for (const Point& d : dirs) {
    std::vector<Segment> fences;
    bool ok = true;
    for (const Ring& h : domain.holes()) {
      std::size_t best = 0;
      int ties = 0;
      for (std::size_t i = 1; i < h.size(); ++i) {
        const int c = cmp(dot(h[i], d), dot(h[best], d));
        if (c > 0) {
          best = i;
          ties = 0;
        } else if (c == 0) {
          ++ties;
        }
      }
      if (ties) {
        ok = false;
        break;
      }
      const Point end = ray_exit(domain, h[best], d);
      for (const Point& w : domain.vertices())
        if (w != h[best] && w != end && on_segment(h[best], end, w)) ok = false;
      fences.push_back({h[best], end});
    }
    if (ok) return fences;
  }
  throw GeometryError("no generic fence direction found");
}

std::vector<int> fence_crossings(const std::vector<Segment>& fences, const Point& a, const Point& b) {
  // A fence is treated as pushed infinitesimally to its right: points on its
  // line count as left. A touch at the fence base (on the hole) then counts as
  // passing round the hole's tip.
  std::vector<std::pair<Rational, int>> hits;
  const Point d = b - a;
  for (std::size_t i = 0; i < fences.size(); ++i) {
    const Segment& f = fences[i];
    const int sa = orient(f.a, f.b, a) >= 0 ? 1 : -1;
    const int sb = orient(f.a, f.b, b) >= 0 ? 1 : -1;
    if (sa == sb) continue;
    const auto x = line_intersection(a, b, f.a, f.b);
    if (!x || !on_segment(f.a, f.b, *x)) continue;
    hits.emplace_back(dot(*x - a, d), sb > 0 ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1);
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
    return x.first < y.first || (x.first == y.first && std::abs(x.second) < std::abs(y.second));
  });
  std::vector<int> out;
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

void reduce_append(std::vector<int>& word, const std::vector<int>& letters) {
  for (int l : letters) {
    if (!word.empty() && word.back() == -l) {
      word.pop_back();
    } else {
      word.push_back(l);
    }
  }
}

std::vector<HomotopyPath> locally_shortest_paths(const PolygonalDomain& domain, const Point& s, const Point& t,
                                                 int max_crossings) {
  require_inside(domain, s, "s");
  require_inside(domain, t, "t");
  if (max_crossings < 0) throw GeometryError("max_crossings must be non-negative");
  const std::vector<Segment> fences = hole_fences(domain);
  const std::size_t n = domain.vertex_count();

  std::vector<Point> pts = domain.vertices();
  auto node_of = [&](const Point& p) {
    if (auto v = domain.vertex_index(p)) return *v;
    for (std::size_t i = n; i < pts.size(); ++i)
      if (pts[i] == p) return i;
    pts.push_back(p);
    return pts.size() - 1;
  };
  const std::size_t si = node_of(s);
  const std::size_t ti = node_of(t);

  // Adjacency with the fence letters of each directed edge.
  std::vector<std::vector<std::pair<std::size_t, std::vector<int>>>> adj(pts.size());
  auto add = [&](std::size_t u, std::size_t v) {
    std::vector<int> w = fence_crossings(fences, pts[u], pts[v]);
    std::vector<int> back(w.rbegin(), w.rend());
    for (int& l : back) l = -l;
    adj[u].push_back({v, std::move(w)});
    adj[v].push_back({u, std::move(back)});
  };
  const VisibilityGraph vg = visibility_graph(domain);
  for (const auto& [u, v] : vg.edges) add(u, v);
  for (std::size_t extra = n; extra < pts.size(); ++extra)
    for (std::size_t u = 0; u < extra; ++u)
      if (sees(domain, pts[extra], pts[u])) add(u, extra);

  auto within_cap = [&](const std::vector<int>& w) {
    std::vector<int> count(fences.size(), 0);
    for (int l : w)
      if (++count[std::abs(l) - 1] > max_crossings) return false;
    return true;
  };

  struct State {
    std::size_t node;
    std::vector<int> word;
    double dist;
    std::size_t parent;
  };
  std::vector<State> states;
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> index;
  std::vector<char> settled;
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  states.push_back({si, {}, 0.0, static_cast<std::size_t>(-1)});
  settled.push_back(0);
  index[{si, {}}] = 0;
  pq.emplace(0.0, 0);
  std::vector<std::size_t> arrivals;  // settled states at t, one per class
  while (!pq.empty()) {
    const auto [d, id] = pq.top();
    pq.pop();
    if (settled[id]) continue;
    settled[id] = 1;
    const std::size_t u = states[id].node;
    if (u == ti) {
      arrivals.push_back(id);
      if (s != t) continue;  // locally shortest paths do not pass through t
    }
    for (const auto& [v, letters] : adj[u]) {
      if (v == si) continue;
      std::vector<int> w = states[id].word;
      reduce_append(w, letters);
      if (!within_cap(w)) continue;
      const double nd = d + distance(pts[u], pts[v]);
      auto [it, inserted] = index.try_emplace({v, w}, states.size());
      if (inserted) {
        states.push_back({v, std::move(w), nd, id});
        settled.push_back(0);
        pq.emplace(nd, it->second);
      } else if (!settled[it->second] && nd < states[it->second].dist) {
        states[it->second].dist = nd;
        states[it->second].parent = id;
        pq.emplace(nd, it->second);
      }
    }
  }
  if (arrivals.empty()) throw GeometryError("t unreachable from s");

  std::vector<HomotopyPath> out;
  for (std::size_t id : arrivals) {
    std::vector<Point> rev;
    for (std::size_t x = id; x != static_cast<std::size_t>(-1); x = states[x].parent) rev.push_back(pts[states[x].node]);
    HomotopyPath h;
    h.word = states[id].word;
    h.path = simplify(PathPolyline{std::vector<Point>(rev.rbegin(), rev.rend())});
    h.length = h.path.length();
    out.push_back(std::move(h));
  }
  return out;
}

SecludedResult secluded_path_holes(const PolygonalDomain& domain, const Point& s, const Point& t, int max_crossings,
                                   int refinement) {
  const std::vector<HomotopyPath> classes = locally_shortest_paths(domain, s, t, max_crossings);
  const std::vector<Segment> cuts = decomposition_cuts(domain);
  SecludedResult best;
  best.area = INFINITY;
  for (const HomotopyPath& h : classes) {
    const double area = weak_visibility_area(domain, h.path, refinement, cuts);
    ++best.classes;
    const double tol = 1e-9 * std::max(1.0, std::fabs(best.area));
    if (best.classes == 1 || area < best.area - tol || (std::fabs(area - best.area) <= tol && h.length < best.length)) {
      best.area = area;
      best.length = h.length;
      best.path = h.path;
      best.signature = h.word;
    }
  }
  return best;
}

double integral_exposure(const PolygonalDomain& domain, const PathPolyline& path, double samples_per_unit) {
  return integral_exposure(domain, path, samples_per_unit, decomposition_cuts(domain));
}

double integral_exposure(const PolygonalDomain& domain, const PathPolyline& path, double samples_per_unit,
                         const std::vector<Segment>& cuts) {
  if (!(samples_per_unit > 0.0)) throw GeometryError("samples_per_unit must be positive");
  double total = 0.0;
  const auto& pv = path.vertices;
  for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
    const Point& a = pv[i];
    const Point& b = pv[i + 1];
    if (a == b) continue;
    const Point d = b - a;
    const Rational dd = dot(d, d);
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (const Segment& c : cuts) {
      if (!segments_intersect(a, b, c.a, c.b)) continue;
      if (orient(c.a, c.b, a) == 0 && orient(c.a, c.b, b) == 0) continue;  // running along a cut
      if (auto x = line_intersection(a, b, c.a, c.b)) ts.push_back(dot(*x - a, d) / dd);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const double len = distance(a, b);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double t0 = ts[k].get_d(), t1 = ts[k + 1].get_d();
      const double piece = (t1 - t0) * len;
      if (piece <= 0.0) continue;
      // Adaptive Simpson on a uniform start grid; the integrand steepens
      // near reflex vertices.
      auto f = [&](double u) { return visible_area(domain, a + Rational(u) * d); };
      const int m = std::max(1, static_cast<int>(std::ceil(piece * samples_per_unit)));
      const double area_scale = polygon_area(domain).get_d();
      for (int j = 0; j < m; ++j) {
        const double u0 = t0 + (t1 - t0) * j / m, u1 = t0 + (t1 - t0) * (j + 1) / m;
        total += len * adaptive_simpson(f, u0, u1, 1e-10 * area_scale * (u1 - u0));
      }
    }
  }
  return total;
}

PtasResult integral_secluded_ptas(const PolygonalDomain& domain, const Point& s, const Point& t, double eps,
                                  double samples_per_unit) {
  require_inside(domain, s, "s");
  require_inside(domain, t, "t");
  const WeightedSubdivision ws = build_weighted_subdivision(domain, eps);
  const WrpInstance inst = WrpInstance::from_weights(ws);
  const SteinerGraph g = discretize(inst, s, t, eps);
  const WeightedPathResult wp = shortest_weighted_path(inst, g);
  PtasResult r;
  r.path = wp.path;
  r.weighted_cost = wp.cost;
  r.exposure = integral_exposure(domain, wp.path, samples_per_unit);
  r.regions = ws.region_count();
  r.nodes = wp.nodes;
  r.arcs = wp.arcs;
  return r;
}

}  // namespace secluded
