#include "secluded/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "secluded/visibility.hpp"
#include "polygon_exact.hpp"

namespace secluded {

double alpha_max(int n, double h, double H) {
  if (n <= 0 || h <= 0 || H <= 0) throw GeometryError("alpha_max needs positive n, h, H");
  return 2.0 * std::atan(n / (H + n * h));
}

double alpha_min(int n, double h, double H, int c) {
  if (n <= 0 || h <= 0 || H <= 0) throw GeometryError("alpha_min needs positive n, h, H");
  if (c < 3) throw GeometryError("alpha_min needs at least 3 clauses");
  const double d1 = H / h - 2.0 * H / (h * (c - 1)) - n;
  const double d2 = H / h - (n - 1);
  if (d1 <= 0 || d2 <= 0) throw GeometryError("parameters outside the construction's regime");
  return std::atan((H + n * h) / d1) - std::atan((H + (n - 1) * h) / d2);
}

double angle_ratio(int n, double h, double H, int c) {
  return std::sin(alpha_min(n, h, H, c)) / std::sin(alpha_max(n, h, H));
}

double find_clause_height(int n, double h, int c, double target, double h_limit) {
  if (target <= 0) target = 4.0 * c * c;
  for (double H = h; H <= h_limit; H *= 2) {
    try {
      if (angle_ratio(n, h, H, c) > target) return H;
    } catch (const GeometryError&) {
      // not in regime yet
    }
  }
  throw GeometryError("no clause height below the limit reaches the angle ratio");
}

namespace {

double ring_area(const DRing& r) {
  double s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const DPoint& p = r[i];
    const DPoint& q = r[(i + 1) % r.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return std::fabs(s) / 2;
}

// Keep the part of a convex ring where a x + b y <= c.
DRing clip_halfplane(const DRing& r, double a, double b, double c) {
  DRing out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const DPoint& p = r[i];
    const DPoint& q = r[(i + 1) % r.size()];
    const double fp = a * p[0] + b * p[1] - c, fq = a * q[0] + b * q[1] - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

// Intersection of two convex counterclockwise rings.
DRing clip_convex(DRing r, const DRing& by) {
  for (std::size_t i = 0; i < by.size() && !r.empty(); ++i) {
    const DPoint& p = by[i];
    const DPoint& q = by[(i + 1) % by.size()];
    // inside is left of pq: (q - p) x (x - p) >= 0
    const double a = q[1] - p[1], b = -(q[0] - p[0]);
    r = clip_halfplane(r, a, b, a * p[0] + b * p[1]);
  }
  return r;
}

// Bisection for the level y where the part of `r` below it has `area`.
double level_below(const DRing& r, double area) {
  double lo = INFINITY, hi = -INFINITY;
  for (const DPoint& p : r) {
    lo = std::min(lo, p[1]);
    hi = std::max(hi, p[1]);
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = (lo + hi) / 2;
    (ring_area(clip_halfplane(r, 0, 1, mid)) < area ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

double level_above(const DRing& r, double area) {
  double lo = INFINITY, hi = -INFINITY;
  for (const DPoint& p : r) {
    lo = std::min(lo, p[1]);
    hi = std::max(hi, p[1]);
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = (lo + hi) / 2;
    (ring_area(clip_halfplane(r, 0, -1, -mid)) < area ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

// Rectangle of width w around pq, extended by w/2 past both ends.
DRing corridor(const DPoint& p, const DPoint& q, double w) {
  const double dx = q[0] - p[0], dy = q[1] - p[1];
  const double len = std::hypot(dx, dy);
  const double ux = dx / len, uy = dy / len, nx = -uy * w / 2, ny = ux * w / 2;
  const double ex = ux * w / 2, ey = uy * w / 2;
  return {{p[0] - ex - nx, p[1] - ey - ny},
          {q[0] + ex - nx, q[1] + ey - ny},
          {q[0] + ex + nx, q[1] + ey + ny},
          {p[0] - ex + nx, p[1] - ey + ny}};
}

DPoint dp(const Point& p) { return {p.ax(), p.ay()}; }

Ring snap(const DRing& r) {
  Ring out;
  for (const DPoint& p : r) {
    const Point q(static_cast<long>(std::lround(p[0])), static_cast<long>(std::lround(p[1])));
    if (out.empty() || out.back() != q) out.push_back(q);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

std::vector<Ring> snap_all(const std::vector<DRing>& rs) {
  std::vector<Ring> out;
  for (const DRing& r : rs) {
    Ring s = snap(r);
    if (s.size() >= 3) out.push_back(std::move(s));
  }
  return out;
}

Ring clean_ring(const std::vector<Point>& pts) {
  Ring r;
  for (const Point& p : pts)
    if (r.empty() || r.back() != p) r.push_back(p);
  while (r.size() > 1 && r.front() == r.back()) r.pop_back();
  bool changed = true;
  while (changed && r.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < r.size() && r.size() >= 3; ++i) {
      const Point& a = r[(i + r.size() - 1) % r.size()];
      const Point& b = r[i];
      const Point& c = r[(i + 1) % r.size()];
      if (orient(a, b, c) == 0) {
        r.erase(r.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return r;
}

PolygonalDomain union_domain(const std::vector<Ring>& rings) {
  namespace bp = boost::polygon;
  using BPoint = bp::point_data<int>;
  bp::polygon_set_data<int> ps;
  for (const Ring& r : rings) {
    std::vector<BPoint> pts;
    for (const Point& p : r) pts.emplace_back(static_cast<int>(std::lround(p.ax())), static_cast<int>(std::lround(p.ay())));
    ps.insert(bp::polygon_data<int>(pts.begin(), pts.end()));
  }
  std::vector<bp::polygon_with_holes_data<int>> out;
  ps.get(out);
  if (out.size() != 1) throw GeometryError("corridors do not form one connected domain");
  auto to_ring = [](auto begin, auto end) {
    std::vector<Point> pts;
    for (auto it = begin; it != end; ++it) pts.emplace_back(static_cast<long>(bp::x(*it)), static_cast<long>(bp::y(*it)));
    return clean_ring(pts);
  };
  Ring outer = to_ring(out[0].begin(), out[0].end());
  std::vector<Ring> holes;
  for (auto h = out[0].begin_holes(); h != out[0].end_holes(); ++h) holes.push_back(to_ring(h->begin(), h->end()));
  return PolygonalDomain::create(std::move(outer), std::move(holes));
}

}  // namespace

PathPolyline ReductionLayout::canonical_path(const Assignment& assignment) const {
  if (assignment.size() != num_vars) throw GeometryError("assignment size differs from variable count");
  PathPolyline p{{apex[0]}};
  for (std::size_t i = 0; i < num_vars; ++i) {
    p.vertices.push_back(corner[i][assignment[i] ? 0 : 1]);
    p.vertices.push_back(apex[i + 1]);
  }
  return p;
}

ReductionLayout build_christmas_tree(const Cnf& cnf, const ReductionParams& params) {
  if (!cnf.is_2cnf() && !cnf.clauses.empty()) throw SatError("the construction needs 1- or 2-literal clauses");
  if (cnf.num_vars == 0) throw GeometryError("the construction needs at least one variable");
  if (params.h <= 0 || params.grid <= 0 || params.scale <= 0 || params.spread <= 0 || params.spread >= 1)
    throw GeometryError("reduction parameters out of range");
  const int n = static_cast<int>(cnf.num_vars);
  const int c = static_cast<int>(cnf.clauses.size());
  ReductionLayout L;
  L.params = params;
  L.num_vars = cnf.num_vars;
  const double h = params.h;
  // the clauses use only part of the clause line, so ask for a margin
  const int ce = std::max(c, 4);
  L.H = params.H > 0 ? params.H : find_clause_height(n, h, ce, 4.0 * ce * ce / (params.spread * params.spread));
  const double w = params.grid;               // corridor width in domain units
  const double unit = params.grid * params.scale;
  if ((L.H + n * h) * unit > 1e9 || (n + params.spread * L.H / h) * unit > 1e9)
    throw GeometryError("coordinates overflow the integer grid; lower grid or scale");
  auto at = [&](double x, double y) {
    return Point(static_cast<long>(std::lround(x * unit)), static_cast<long>(std::lround(y * unit)));
  };

  for (int i = 0; i <= n; ++i) L.apex.push_back(at(0, -i * h));
  for (int i = 1; i <= n; ++i) L.corner.push_back({at(-i, -i * h), at(i, -i * h)});
  L.s = L.apex.front();
  L.t = L.apex.back();

  std::vector<DRing> tree;
  for (int i = 0; i < n; ++i) {
    const DPoint ap = dp(L.apex[i]), nx = dp(L.apex[i + 1]), l = dp(L.corner[i][0]), r = dp(L.corner[i][1]);
    tree.push_back(corridor(ap, l, w));
    tree.push_back(corridor(ap, r, w));
    tree.push_back(corridor(l, nx, w));
    tree.push_back(corridor(nx, r, w));
  }
  L.tree_corridors = tree.size();

  const double half = params.spread * L.H / h;
  // Two corridors from the same side meet at a small angle, and a path seeing
  // one of them sees a sliver of the other through the gadget. Those pairs go
  // to the end of the clause line where their angle is largest.
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  auto side_key = [&](int j) {
    const Clause& cl = cnf.clauses[j];
    if (cl.size() != 2 || cl[0].var == cl[1].var) return 0;
    if (cl[0].positive && cl[1].positive) return -1;
    if (!cl[0].positive && !cl[1].positive) return 1;
    return 0;
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return side_key(x) < side_key(y); });
  L.clause_point.resize(c);
  for (int slot = 0; slot < c; ++slot) {
    const double x = c == 1 ? 0.0 : -half + 2.0 * half * slot / (c - 1);
    L.clause_point[order[slot]] = {x * unit, L.H * unit};
  }

  // Literal corridors, one per distinct literal of a clause.
  struct Occ {
    std::size_t clause;
    std::pair<std::size_t, bool> lit;
    DRing ring;
  };
  std::vector<Occ> occ;
  std::vector<std::vector<std::size_t>> clause_occ(c);
  for (int j = 0; j < c; ++j) {
    std::vector<Literal> lits;
    for (const Literal& l : cnf.clauses[j])
      if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
    for (const Literal& l : lits) {
      const DPoint from = dp(L.corner[l.var][l.positive ? 0 : 1]);
      clause_occ[j].push_back(occ.size());
      occ.push_back({static_cast<std::size_t>(j), {l.var, l.positive}, corridor(from, L.clause_point[j], w)});
    }
  }
  L.literal_corridors = occ.size();

  // Clause gadgets: overlap of the two corridors; a = the smallest.
  std::vector<double> overlap(c, 0.0);
  bool any_pair = false;
  double a = INFINITY;
  for (int j = 0; j < c; ++j) {
    if (clause_occ[j].size() != 2) continue;
    overlap[j] = ring_area(clip_convex(occ[clause_occ[j][0]].ring, occ[clause_occ[j][1]].ring));
    a = std::min(a, overlap[j]);
    any_pair = true;
  }
  if (!any_pair) a = w * w / std::sin(alpha_max(n, h, L.H));
  L.a = a;
  L.clause_gadget.resize(c);
  for (int j = 0; j < c; ++j) {
    if (clause_occ[j].size() == 2) {
      DRing& ra = occ[clause_occ[j][0]].ring;
      DRing& rb = occ[clause_occ[j][1]].ring;
      DRing ov = clip_convex(ra, rb);
      if (params.truncate && overlap[j] > a * (1 + 1e-12)) {
        const double y = level_below(ov, a);
        ra = clip_halfplane(ra, 0, 1, y);
        rb = clip_halfplane(rb, 0, 1, y);
        ov = clip_halfplane(ov, 0, 1, y);
      }
      L.clause_gadget[j] = ov;
    } else {
      // single literal: the top of its corridor plays the gadget
      const DRing& r = occ[clause_occ[j][0]].ring;
      L.clause_gadget[j] = clip_halfplane(r, 0, -1, -level_above(r, a));
    }
  }
  for (const Occ& o : occ) L.literal_corridor[o.lit].push_back(o.ring);
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (std::size_t j = i + 1; j < occ.size(); ++j)
      if (occ[i].clause != occ[j].clause && occ[i].lit != occ[j].lit)
        L.max_midway = std::max(L.max_midway, ring_area(clip_convex(occ[i].ring, occ[j].ring)));

  const std::vector<Ring> tree_rings = snap_all(tree);
  const double tree_area = union_area(tree_rings);
  auto literal_area = [&](const std::pair<std::size_t, bool>& lit, const std::vector<DRing>& extra) {
    std::vector<Ring> rs = tree_rings;
    auto it = L.literal_corridor.find(lit);
    if (it != L.literal_corridor.end())
      for (const Ring& r : snap_all(it->second)) rs.push_back(r);
    for (const Ring& r : snap_all(extra)) rs.push_back(r);
    double area = union_area(rs) - tree_area;
    for (int j = 0; j < c; ++j)
      for (std::size_t k : clause_occ[j])
        if (occ[k].lit == lit) area -= ring_area(L.clause_gadget[j]);
    return area;
  };

  // Equalizers: one dead-end corridor from the lighter literal's corner,
  // heading up and outwards, clear of the tree and of every clause corridor.
  std::map<std::pair<std::size_t, bool>, std::vector<DRing>> eq;
  double total_a = 0.0;
  for (std::size_t v = 0; v < cnf.num_vars; ++v) {
    const std::pair<std::size_t, bool> pos{v, true}, neg{v, false};
    double ap = literal_area(pos, {}), an = literal_area(neg, {});
    if (params.equalizers && std::fabs(ap - an) > w * w) {
      const auto light = ap < an ? pos : neg;
      const double target = std::max(ap, an), base = std::min(ap, an);
      const DPoint from = dp(L.corner[v][light.second ? 0 : 1]);
      // steeper than any tree edge, shallower than the clause fan
      const double dx = (light.second ? -1.0 : 1.0) * (1.0 + params.spread) / (2.0 * h), norm = std::hypot(dx, 1.0);
      const double ux = dx / norm, uy = 1.0 / norm;
      auto stub = [&](double len) { return corridor(from, {from[0] + ux * len, from[1] + uy * len}, w); };
      double len = (target - base) / w;
      for (int it = 0; it < 8; ++it) {
        const double got = literal_area(light, {stub(len)}) - base;
        if (std::fabs(got - (target - base)) <= w * w || got <= 0) break;
        len *= (target - base) / got;
      }
      std::vector<DRing>& mine = eq[light];
      mine.push_back(stub(len));
      for (const DRing& r : mine) L.equalizer.push_back(r);
    }
    L.literal_area[pos] = literal_area(pos, eq[pos]);
    L.literal_area[neg] = literal_area(neg, eq[neg]);
    total_a += std::max(L.literal_area[pos], L.literal_area[neg]);
  }
  L.A = tree_area + total_a;

  std::vector<DRing> all = tree;
  for (const Occ& o : occ) all.push_back(o.ring);
  for (const DRing& r : L.equalizer) all.push_back(r);

  if (params.chambers) {
    // An axis-aligned box hung off the middle of every literal corridor by a
    // short horizontal neck. Its area, twice the whole construction so far,
    // bounds anything a path along the tree sees; only a path walking into
    // the corridor gets to look through the neck.
    const double side = std::sqrt(2.0 * union_area(snap_all(all)));
    std::vector<DRing> added;
    for (const Occ& o : occ) {
      const DPoint from = dp(L.corner[o.lit.first][o.lit.second ? 0 : 1]);
      const DPoint to = L.clause_point[o.clause];
      const DPoint mid{(from[0] + to[0]) / 2, (from[1] + to[1]) / 2};
      const double out = o.lit.second ? -1.0 : 1.0;  // away from the tree axis
      const double x0 = mid[0] + out * 2 * w, x1 = x0 + out * side;
      const DRing box{{std::min(x0, x1), mid[1] - side / 2},
                      {std::max(x0, x1), mid[1] - side / 2},
                      {std::max(x0, x1), mid[1] + side / 2},
                      {std::min(x0, x1), mid[1] + side / 2}};
      const double n0 = std::min(mid[0], x0 + out * w / 2), n1 = std::max(mid[0], x0 + out * w / 2);
      const DRing neck{{n0, mid[1] - w / 2}, {n1, mid[1] - w / 2}, {n1, mid[1] + w / 2}, {n0, mid[1] + w / 2}};
      for (const DRing& other : all)
        if (ring_area(clip_convex(box, other)) > 0)
          throw GeometryError("chamber collides with a corridor; increase scale");
      for (const DRing& other : added)
        if (ring_area(clip_convex(box, other)) > 0) throw GeometryError("chambers collide; increase scale");
      L.chamber.push_back(box);
      added.push_back(box);
      added.push_back(neck);
    }
    for (const DRing& r : added) all.push_back(r);
  }

  L.domain = union_domain(snap_all(all));
  return L;
}

ReductionReport verify_reduction(const ReductionLayout& layout, const Cnf& cnf, int refinement) {
  const std::size_t n = cnf.num_vars;
  if (n != layout.num_vars) throw GeometryError("layout built for a different instance");
  if (n > 3 || cnf.clauses.size() > 4) throw GeometryError("verify_reduction is for n <= 3, c <= 4");
  ReductionReport rep;
  rep.a = layout.a;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    Assignment asg(n);
    for (std::size_t i = 0; i < n; ++i) asg[i] = (m >> (n - 1 - i)) & 1;
    rep.assignments.push_back(asg);
    rep.satisfied.push_back(satisfied_count(cnf, asg));
    rep.seen.push_back(weak_visibility_area(layout.domain, layout.canonical_path(asg), refinement, {}));
  }

  // Spearman over (k, seen) with average ranks for ties.
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (i + j) / 2.0;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ks(rep.satisfied.begin(), rep.satisfied.end());
  const auto rk = ranks(ks), rs = ranks(rep.seen);
  const double mk = std::accumulate(rk.begin(), rk.end(), 0.0) / rk.size();
  const double ms = std::accumulate(rs.begin(), rs.end(), 0.0) / rs.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rk.size(); ++i) {
    sxy += (rk[i] - mk) * (rs[i] - ms);
    sxx += (rk[i] - mk) * (rk[i] - mk);
    syy += (rs[i] - ms) * (rs[i] - ms);
  }
  rep.spearman = sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 1.0;

  std::map<std::size_t, std::pair<double, double>> range;  // k -> (min, max)
  std::map<std::size_t, std::vector<double>> groups;
  for (std::size_t i = 0; i < rep.seen.size(); ++i) groups[rep.satisfied[i]].push_back(rep.seen[i]);
  rep.monotone = true;
  rep.gaps_ok = true;
  bool first = true;
  double prev_max = 0, prev_mean = 0;
  std::size_t prev_k = 0;
  for (const auto& [k, vals] : groups) {
    const double lo = *std::min_element(vals.begin(), vals.end());
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
    if (!first) {
      if (!(lo > prev_max)) {
        rep.monotone = false;
        rep.violations.push_back("k=" + std::to_string(k) + " sees no more than k=" + std::to_string(prev_k));
      }
      const double gap = (mean - prev_mean) / (k - prev_k);
      if (std::fabs(gap - layout.a) > 0.25 * layout.a) {
        rep.gaps_ok = false;
        rep.violations.push_back("gap " + std::to_string(gap) + " between k=" + std::to_string(prev_k) + " and k=" +
                                 std::to_string(k) + " is not within 25% of a=" + std::to_string(layout.a));
      }
    }
    first = false;
    prev_max = *std::max_element(vals.begin(), vals.end());
    prev_mean = mean;
    prev_k = k;
  }
  return rep;
}

}  // namespace secluded
