#include <gtest/gtest.h>

#include <cmath>

#include "secluded/reduction.hpp"
#include "secluded/visibility.hpp"
#include "corpus.hpp"

using namespace secluded;

namespace {

Literal P(std::size_t v) { return {v, true}; }
Literal N(std::size_t v) { return {v, false}; }

double angle_between(double ax, double ay, double bx, double by) {
  const double c = (ax * bx + ay * by) / (std::hypot(ax, ay) * std::hypot(bx, by));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Does the open segment pq pass through the interior of triangle abc?
bool segment_hits_triangle(const DPoint& p, const DPoint& q, const DPoint& a, const DPoint& b, const DPoint& c) {
  double t0 = 0, t1 = 1;
  const DPoint tri[3] = {a, b, c};
  const double sgn = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) > 0 ? 1 : -1;
  for (int i = 0; i < 3; ++i) {
    const DPoint& u = tri[i];
    const DPoint& v = tri[(i + 1) % 3];
    auto f = [&](const DPoint& x) { return sgn * ((v[0] - u[0]) * (x[1] - u[1]) - (v[1] - u[1]) * (x[0] - u[0])); };
    const double fp = f(p), fq = f(q);
    if (fp <= 0 && fq <= 0) return false;
    if (fp < 0) t0 = std::max(t0, fp / (fp - fq));
    if (fq < 0) t1 = std::min(t1, fp / (fp - fq));
  }
  return t1 - t0 > 1e-9;
}

double ring_area(const DRing& r) {
  double s = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    s += r[i][0] * r[(i + 1) % r.size()][1] - r[(i + 1) % r.size()][0] * r[i][1];
  return std::fabs(s) / 2;
}

}  // namespace

TEST(Angles, ClosedForms) {
  EXPECT_NEAR(alpha_max(1, 1, 1), 0.927295218, 1e-8);
  EXPECT_THROW(alpha_max(0, 1, 1), GeometryError);
  EXPECT_THROW(alpha_min(2, 1, 100, 3), GeometryError);  // c = 3 never in regime
  EXPECT_THROW(alpha_min(2, 1, 3, 4), GeometryError);
}

TEST(Angles, MatchExplicitCenterlines) {
  for (int n : {1, 2, 3, 5})
    for (double h : {0.5, 1.0, 2.0})
      for (double H : {64.0, 1000.0, 1e5})
        for (int c : {4, 6, 9}) {
          // outermost corners to a clause straight above the apex
          const double amax = angle_between(0 + n, H + n * h, 0 - n, H + n * h);
          EXPECT_NEAR(alpha_max(n, h, H), amax, 1e-6);
          const double x1 = H / h - 2 * H / (h * (c - 1)), x2 = H / h;
          const double amin = angle_between(x1 - n, H + n * h, x2 - (n - 1), H + (n - 1) * h);
          if (x1 - n <= 0) continue;
          EXPECT_NEAR(alpha_min(n, h, H, c), amin, 1e-6) << n << " " << h << " " << H << " " << c;
        }
}

TEST(Angles, RatioGrowsWithHeight) {
  double prev = 0;
  for (double H = 1e3; H <= 1e6; H *= 2) {
    const double r = angle_ratio(3, 1, H, 4);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Angles, DoublingSearch) {
  const double H = find_clause_height(3, 1, 4);
  EXPECT_GT(angle_ratio(3, 1, H, 4), 64);
  bool below = false;
  try {
    below = angle_ratio(3, 1, H / 2, 4) <= 64;
  } catch (const GeometryError&) {
    below = true;
  }
  EXPECT_TRUE(below);
  EXPECT_NEAR(H, 1024, 1e-9);
  EXPECT_THROW(find_clause_height(3, 1, 4, 64, 100), GeometryError);
}

TEST(Layout, SmallestInstanceIsValid) {
  const Cnf f{1, {{P(0), N(0)}}};
  const ReductionLayout L = build_christmas_tree(f);
  EXPECT_TRUE(ring_is_simple(L.domain.outer()));
  for (const Ring& h : L.domain.holes()) EXPECT_TRUE(ring_is_simple(h));
  EXPECT_EQ(L.s, L.apex.front());
  EXPECT_EQ(L.t, L.apex.back());
  EXPECT_GT(L.s.ay(), L.t.ay());
  EXPECT_NE(locate_point(L.domain, L.s), Location::Exterior);
  EXPECT_NE(locate_point(L.domain, L.t), Location::Exterior);
}

TEST(Layout, CorridorCountAndTreeAvoidance) {
  for (const Cnf& f : secluded::testing::reduction_corpus()) {
    const ReductionLayout L = build_christmas_tree(f);
    std::size_t occurrences = 0;
    for (const Clause& c : f.clauses) occurrences += (c.size() == 2 && c[0] == c[1]) ? 1 : c.size();
    EXPECT_EQ(L.tree_corridors, 4 * f.num_vars);
    EXPECT_EQ(L.literal_corridors, occurrences);
    // bases 2, 4, ..., 2n in units
    const double unit = L.params.grid * L.params.scale;
    for (std::size_t i = 0; i < f.num_vars; ++i)
      EXPECT_NEAR(L.corner[i][1].ax() - L.corner[i][0].ax(), 2.0 * (i + 1) * unit, 1e-9);
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
      EXPECT_NEAR(L.clause_point[j][1], L.H * unit, 1e-6);
      for (const Literal& l : f.clauses[j]) {
        const Point& c = L.corner[l.var][l.positive ? 0 : 1];
        const DPoint from{c.ax(), c.ay()};
        for (std::size_t i = 0; i < f.num_vars; ++i) {
          const DPoint ap{L.apex[i].ax(), L.apex[i].ay()};
          const DPoint lc{L.corner[i][0].ax(), L.corner[i][0].ay()}, rc{L.corner[i][1].ax(), L.corner[i][1].ay()};
          EXPECT_FALSE(segment_hits_triangle(from, L.clause_point[j], ap, lc, rc));
        }
      }
    }
  }
}

TEST(Layout, GadgetAreasAndRhombus) {
  const Cnf f{2, {{P(0), P(1)}, {N(0), P(1)}, {P(0), N(1)}, {N(0), N(1)}}};
  ReductionParams p;
  p.truncate = false;
  const ReductionLayout raw = build_christmas_tree(f, p);
  const double w = p.grid, unit = p.grid * p.scale;
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const Point& u = raw.corner[f.clauses[j][0].var][f.clauses[j][0].positive ? 0 : 1];
    const Point& v = raw.corner[f.clauses[j][1].var][f.clauses[j][1].positive ? 0 : 1];
    const DPoint& x = raw.clause_point[j];
    const double alpha = angle_between(x[0] - u.ax(), x[1] - u.ay(), x[0] - v.ax(), x[1] - v.ay());
    // two strips of width w crossing at alpha form a rhombus of area w^2 / sin(alpha);
    // the corridors stop at the clause point, leaving a bit over half of it
    const double rhombus = w * w / std::sin(alpha);
    const double got = ring_area(raw.clause_gadget[j]);
    EXPECT_GT(got, 0.5 * rhombus);
    EXPECT_LT(got, 0.6 * rhombus);
  }
  (void)unit;
  const ReductionLayout cut = build_christmas_tree(f);
  for (const DRing& g : cut.clause_gadget) EXPECT_NEAR(ring_area(g), cut.a, 1e-6 * cut.a);
}

TEST(Layout, MidwayOverlapsAreSmall) {
  for (const Cnf& f : secluded::testing::reduction_corpus()) {
    const ReductionLayout L = build_christmas_tree(f);
    const double c = std::max<double>(f.clauses.size(), 4);
    EXPECT_LE(L.max_midway, L.a / (4 * c * c));
  }
}

TEST(Layout, EqualizersBalanceSingleVariablePaths) {
  // x occurs three times, !x once: x's corner carries far more corridor
  const Cnf f{1, {{P(0)}, {P(0)}, {P(0)}, {N(0)}}};
  const ReductionLayout L = build_christmas_tree(f);
  EXPECT_NEAR(L.literal_area.at({0, true}), L.literal_area.at({0, false}), 0.01 * L.literal_area.at({0, true}));
  const double via_x = weak_visibility_area(L.domain, L.canonical_path({true}), 4, {}) - 3 * L.a;
  const double via_not_x = weak_visibility_area(L.domain, L.canonical_path({false}), 4, {}) - 1 * L.a;
  EXPECT_NEAR(via_x, via_not_x, 0.01 * via_x);

  ReductionParams off;
  off.equalizers = false;
  const ReductionLayout U = build_christmas_tree(f, off);
  EXPECT_GT(U.literal_area.at({0, true}), 2 * U.literal_area.at({0, false}));
}

TEST(Layout, Chambers) {
  const Cnf f{1, {{P(0), N(0)}}};
  ReductionParams p;
  p.chambers = true;
  const ReductionLayout L = build_christmas_tree(f, p);
  const ReductionLayout plain = build_christmas_tree(f);
  ASSERT_EQ(L.chamber.size(), L.literal_corridors);
  const double before = plain.domain.area().get_d();
  for (const DRing& c : L.chamber) EXPECT_GE(ring_area(c), 2 * before * (1 - 1e-4));
  // the tree path cannot look into a chamber through its neck
  for (bool x : {true, false}) {
    const double with = weak_visibility_area(L.domain, L.canonical_path({x}), 4, {});
    const double without = weak_visibility_area(plain.domain, plain.canonical_path({x}), 4, {});
    EXPECT_LT(with, without + 0.01 * plain.a);
  }
  // neighbouring corridors leave no room at the default scale
  EXPECT_THROW(build_christmas_tree(Cnf{2, {{P(0), P(1)}}}, p), GeometryError);
}

TEST(Layout, RejectsBadInput) {
  EXPECT_THROW(build_christmas_tree(Cnf{0, {}}), GeometryError);
  EXPECT_THROW(build_christmas_tree(Cnf{2, {{P(0), P(1), N(0)}}}), SatError);
  ReductionParams p;
  p.spread = 1.5;
  EXPECT_THROW(build_christmas_tree(Cnf{1, {{P(0)}}}, p), GeometryError);
  EXPECT_THROW(build_christmas_tree(Cnf{1, {{P(0)}}}, [] {
                 ReductionParams q;
                 q.grid = 1 << 20;
                 return q;
               }()),
               GeometryError);
}

TEST(Verify, SeenAreaGrowsWithSatisfiedClauses) {
  for (const Cnf& f : secluded::testing::reduction_corpus()) {
    const ReductionLayout L = build_christmas_tree(f);
    const ReductionReport r = verify_reduction(L, f);
    ASSERT_EQ(r.seen.size(), std::size_t{1} << f.num_vars);
    EXPECT_TRUE(r.monotone) << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_TRUE(r.gaps_ok) << (r.violations.empty() ? "" : r.violations.back());
    for (std::size_t i = 0; i < r.seen.size(); ++i) EXPECT_EQ(r.satisfied[i], satisfied_count(f, r.assignments[i]));
  }
}

TEST(Verify, RejectsLargeInstances) {
  Cnf f{4, {{P(0), P(1)}}};
  const ReductionLayout L = build_christmas_tree(f);
  EXPECT_THROW(verify_reduction(L, f), GeometryError);
}
