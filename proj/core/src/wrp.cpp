#include "secluded/wrp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace secluded {

WrpInstance WrpInstance::from_weights(const WeightedSubdivision& ws) {
  WrpInstance inst;
  std::vector<std::size_t> cell_of;
  for (const ConvexPiece& p : ws.pieces) {
    inst.pieces.push_back(p.ring);
    cell_of.push_back(p.cell);
  }
  const WeightedSubdivision* w = &ws;
  inst.cost = [w, cell_of](std::size_t piece, const Point& a, const Point& b) {
    return w->segment_cost(cell_of[piece], a, b);
  };
  inst.min_weight = ws.min_weight();
  return inst;
}

WrpInstance WrpInstance::constant(std::vector<Ring> pieces, std::vector<double> weights) {
  if (pieces.size() != weights.size()) throw GeometryError("one weight per piece required");
  WrpInstance inst;
  inst.pieces = std::move(pieces);
  inst.min_weight = weights.empty() ? 0.0 : *std::min_element(weights.begin(), weights.end());
  inst.cost = [weights](std::size_t piece, const Point& a, const Point& b) {
    return weights[piece] * distance(a, b);
  };
  return inst;
}

std::vector<double> steiner_parameters(double eps) {
  if (!(eps > 0.0)) throw GeometryError("eps must be positive");
  // Level k uses exponents x that are multiples of 2^-k in [0, k + 2]; a point
  // at distance (len/2) 2^-x from either endpoint. Coarser levels come first,
  // so truncating to the cap keeps the schedule nested.
  const int k = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / eps) - 1e-12)));
  const std::size_t cap = static_cast<std::size_t>(std::ceil(4.0 / eps - 1e-12));
  struct Cand {
    int level;
    double x;
    int side;
  };
  std::vector<Cand> cands;
  for (int m = 1; m <= k; ++m) {
    const int steps = (m + 2) << m;
    for (int j = 0; j <= steps; ++j) {
      if (m > 1 && j % 2 == 0 && j / 2 <= ((m + 1) << (m - 1))) continue;  // already on level m-1
      const double x = std::ldexp(static_cast<double>(j), -m);
      for (int side = 0; side < (j == 0 ? 1 : 2); ++side) cands.push_back({m, x, side});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.x != b.x) return a.x < b.x;
    return a.side < b.side;
  });
  std::vector<double> ts;
  for (const Cand& c : cands) {
    if (ts.size() >= cap) break;
    const double d = std::ldexp(std::exp2(-c.x), -1);
    ts.push_back(c.side == 0 ? d : 1.0 - d);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::size_t SteinerGraph::arc_count() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for_each_arc([&](std::size_t, std::size_t u, std::size_t v) { seen.emplace(u, v); });
  return seen.size();
}

void SteinerGraph::for_each_arc(const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) const {
  for (std::size_t p = 0; p < piece_nodes.size(); ++p) {
    const auto& ns = piece_nodes[p];
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j) fn(p, std::min(ns[i], ns[j]), std::max(ns[i], ns[j]));
  }
}

SteinerGraph discretize(const WrpInstance& inst, const Point& s, const Point& t, double eps) {
  const std::vector<double> params = steiner_parameters(eps);
  SteinerGraph g;
  std::map<Point, std::size_t> id;
  auto node = [&](const Point& p) {
    auto [it, inserted] = id.emplace(p, g.nodes.size());
    if (inserted) {
      g.nodes.push_back(p);
      g.node_pieces.emplace_back();
    }
    return it->second;
  };
  std::map<std::pair<Point, Point>, std::vector<std::size_t>> edge_nodes;
  g.piece_nodes.resize(inst.pieces.size());
  for (std::size_t p = 0; p < inst.pieces.size(); ++p) {
    const Ring& r = inst.pieces[p];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Point& a = r[i];
      const Point& b = r[(i + 1) % r.size()];
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      auto it = edge_nodes.find({key.first, key.second});
      if (it == edge_nodes.end()) {
        std::vector<std::size_t> ids{node(key.first)};
        const Point d = key.second - key.first;
        for (double tp : params) ids.push_back(node(key.first + Rational(tp) * d));
        it = edge_nodes.emplace(std::make_pair(key.first, key.second), std::move(ids)).first;
      }
      for (std::size_t v : it->second) g.piece_nodes[p].push_back(v);
    }
    auto& ns = g.piece_nodes[p];
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  g.s = node(s);
  g.t = node(t);
  for (std::size_t p = 0; p < inst.pieces.size(); ++p) {
    for (std::size_t v : {g.s, g.t}) {
      auto& ns = g.piece_nodes[p];
      if (std::binary_search(ns.begin(), ns.end(), v)) continue;
      if (locate_in_ring(inst.pieces[p], g.nodes[v]) == Location::Exterior) continue;
      ns.insert(std::lower_bound(ns.begin(), ns.end(), v), v);
    }
  }
  for (std::size_t p = 0; p < g.piece_nodes.size(); ++p)
    for (std::size_t v : g.piece_nodes[p]) g.node_pieces[v].push_back(p);
  if (g.node_pieces[g.s].empty() || g.node_pieces[g.t].empty()) throw GeometryError("s or t outside the domain");
  return g;
}

WeightedPathResult shortest_weighted_path(const WrpInstance& inst, const SteinerGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<double> dist(n, INFINITY);
  std::vector<std::size_t> parent(n, n);
  std::vector<char> done(n, 0);
  const Point& target = g.nodes[g.t];
  auto h = [&](std::size_t v) { return inst.min_weight * distance(g.nodes[v], target); };
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[g.s] = 0.0;
  pq.emplace(h(g.s), g.s);
  WeightedPathResult res;
  while (!pq.empty()) {
    const auto [f, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    ++res.settled;
    if (u == g.t) break;
    for (std::size_t p : g.node_pieces[u]) {
      for (std::size_t v : g.piece_nodes[p]) {
        if (v == u || done[v]) continue;
        const double nd = dist[u] + inst.cost(p, g.nodes[u], g.nodes[v]);
        if (nd < dist[v] || (nd == dist[v] && u < parent[v])) {
          dist[v] = nd;
          parent[v] = u;
          pq.emplace(nd + h(v), v);
        }
      }
    }
  }
  if (!done[g.t]) throw GeometryError("t unreachable from s");
  std::vector<Point> rev;
  for (std::size_t v = g.t; v != n; v = parent[v]) {
    rev.push_back(g.nodes[v]);
    if (v == g.s) break;
  }
  res.path.vertices.assign(rev.rbegin(), rev.rend());
  res.path = simplify(res.path);
  res.cost = path_cost(inst, res.path);
  res.nodes = n;
  res.arcs = 0;
  for (const auto& ns : g.piece_nodes) res.arcs += ns.size() * (ns.size() - 1) / 2;
  return res;
}

namespace {

// Parameter interval of segment ab inside a convex CCW ring (doubles).
bool clip_segment(const Ring& ring, double ax, double ay, double bx, double by, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const double dx = bx - ax, dy = by - ay;
  const std::size_t m = ring.size();
  double scale = 1.0;
  for (const Point& p : ring) scale = std::max({scale, std::fabs(p.ax()), std::fabs(p.ay())});
  const double tol = 1e-12 * scale * scale;
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % m];
    const double ex = q.ax() - p.ax(), ey = q.ay() - p.ay();
    if (ex == 0.0 && ey == 0.0) continue;
    const double num = ex * (ay - p.ay()) - ey * (ax - p.ax());  // >= 0 inside
    const double den = ex * dy - ey * dx;
    if (std::fabs(den) <= 1e-12 * std::hypot(ex, ey) * std::hypot(dx, dy)) {
      if (num < -tol) return false;
      continue;
    }
    const double t = -num / den;
    if (den > 0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  return t1 > t0 - 1e-12;
}

}  // namespace

double path_cost(const WrpInstance& inst, const PathPolyline& path) {
  double total = 0.0;
  const auto& pv = path.vertices;
  for (std::size_t i = 0; i + 1 < pv.size(); ++i) {
    const Point& a = pv[i];
    const Point& b = pv[i + 1];
    if (a == b) continue;
    std::vector<double> ts{0.0, 1.0};
    std::vector<std::pair<std::size_t, std::array<double, 2>>> hits;
    for (std::size_t p = 0; p < inst.pieces.size(); ++p) {
      double t0, t1;
      if (!clip_segment(inst.pieces[p], a.ax(), a.ay(), b.ax(), b.ay(), t0, t1)) continue;
      hits.push_back({p, {t0, t1}});
      ts.push_back(std::clamp(t0, 0.0, 1.0));
      ts.push_back(std::clamp(t1, 0.0, 1.0));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(), [](double x, double y) { return y - x < 1e-13; }), ts.end());
    const Point d = b - a;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double tm = (ts[k] + ts[k + 1]) / 2;
      double best = INFINITY;
      for (const auto& [p, iv] : hits) {
        if (tm < iv[0] - 1e-12 || tm > iv[1] + 1e-12) continue;
        const Point u = a + Rational(ts[k]) * d;
        const Point v = a + Rational(ts[k + 1]) * d;
        best = std::min(best, inst.cost(p, u, v));
      }
      if (!std::isfinite(best)) throw GeometryError("path leaves the weighted pieces");
      total += best;
    }
  }
  return total;
}

double path_cost(const WeightedSubdivision& ws, const PathPolyline& path) {
  return path_cost(WrpInstance::from_weights(ws), path);
}

}  // namespace secluded
