#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "secluded/solvers.hpp"
#include "secluded/visibility.hpp"

using namespace secluded;
namespace st = secluded::testing;

namespace {

Point random_interior(std::mt19937& rng, const PolygonalDomain& d) {
  const auto box = st::bbox(d);
  std::uniform_int_distribution<long> ux(static_cast<long>(box[0]) * 16, static_cast<long>(box[2]) * 16);
  std::uniform_int_distribution<long> uy(static_cast<long>(box[1]) * 16, static_cast<long>(box[3]) * 16);
  for (;;) {
    Point p(Rational(ux(rng), 16), Rational(uy(rng), 16));
    if (locate_point(d, p) == Location::Interior) return p;
  }
}

bool path_in_domain(const PolygonalDomain& d, const PathPolyline& path) {
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
    if (!st::brute_sees(d, path.vertices[i], path.vertices[i + 1])) return false;
  return true;
}

// The part of a simple polygon on one side of chord (v, x): boundary from v
// forward to x.
Ring chord_piece(const PolygonalDomain& d, std::size_t v, const Point& x) {
  Ring r{d.vertices()[v]};
  for (std::size_t i = v;; i = d.next(i)) {
    const Point& a = d.vertices()[i];
    const Point& b = d.vertices()[d.next(i)];
    if (x != a && on_segment(a, b, x)) {
      r.push_back(x);
      return r;
    }
    r.push_back(b);
  }
}

}  // namespace

TEST(Funnel, LShapeBendsAtReflexCorner) {
  const auto d = st::l_shape();
  const Point s(Rational(7, 4), Rational(3, 4)), t(Rational(3, 4), Rational(7, 4));
  const auto path = shortest_path_simple(d, s, t);
  ASSERT_EQ(path.vertices.size(), 3u);
  EXPECT_EQ(path.vertices[1], Point(1, 1));
  EXPECT_NEAR(path.length(), 2 * std::hypot(0.75, 0.25), 1e-12);
  EXPECT_NEAR(path.length(), st::brute_shortest_length(d, s, t), 1e-12);
}

TEST(Funnel, VisiblePairIsStraight) {
  const auto d = st::comb();
  const Point s(Rational(1, 2), Rational(1, 2)), t(Rational(13, 2), Rational(1, 2));
  const auto path = shortest_path_simple(d, s, t);
  ASSERT_EQ(path.vertices.size(), 2u);
  EXPECT_DOUBLE_EQ(path.length(), 6.0);
}

TEST(Funnel, MatchesVisibilityGraphOracleOnRandomPolygons) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int iter = 0; iter < 40; ++iter) {
    const auto d = PolygonalDomain::create(st::random_simple_polygon(rng, 12, 30));
    for (int k = 0; k < 5; ++k) {
      const Point s = random_interior(rng, d);
      const Point t = random_interior(rng, d);
      const auto path = shortest_path_simple(d, s, t);
      ASSERT_EQ(path.vertices.front(), s);
      ASSERT_EQ(path.vertices.back(), t);
      ASSERT_TRUE(path_in_domain(d, path));
      EXPECT_NEAR(path.length(), st::brute_shortest_length(d, s, t), 1e-7 * (1 + path.length()));
      ++checked;
    }
  }
  EXPECT_EQ(checked, 200);
}

TEST(Funnel, RejectsHolesAndOutsidePoints) {
  EXPECT_THROW(shortest_path_simple(st::square_with_hole(), Point(0, 0), Point(4, 4)), GeometryError);
  EXPECT_THROW(shortest_path_simple(st::unit_square(), Point(0, 0), Point(2, 2)), GeometryError);
}

TEST(EssentialCut, NoneWhenVisible) {
  const auto d = st::l_shape();
  EXPECT_FALSE(essential_cut(d, Point(Rational(1, 2), Rational(1, 2)), Point(Rational(1, 2), Rational(1, 2))));
  EXPECT_FALSE(essential_cut(st::unit_square(), Point(1, 1), Point(0, 0)));
}

TEST(EssentialCut, SeparatesOnRandomPolygons) {
  std::mt19937 rng(99);
  int cuts = 0;
  for (int iter = 0; iter < 30; ++iter) {
    const auto d = PolygonalDomain::create(st::random_simple_polygon(rng, 10, 24));
    for (int k = 0; k < 6; ++k) {
      const Point s = random_interior(rng, d);
      const Point p = random_interior(rng, d);
      const auto cut = essential_cut(d, p, s);
      ASSERT_EQ(cut.has_value(), !st::brute_sees(d, s, p));
      if (!cut) continue;
      ++cuts;
      EXPECT_EQ(cut->chord.a, d.vertices()[cut->vertex]);
      EXPECT_EQ(orient(s, cut->chord.a, cut->chord.b), 0);  // a window of V(s)
      EXPECT_TRUE(st::brute_sees(d, cut->chord.a, cut->chord.b));
      // the chord splits the polygon; s and p end up in different parts
      const Ring piece = chord_piece(d, cut->vertex, cut->chord.b);
      const bool s_in = locate_in_ring(piece, s) == Location::Interior;
      const bool p_in = locate_in_ring(piece, p) == Location::Interior;
      EXPECT_NE(s_in, p_in);
      EXPECT_NE(cut->s_side, 0);
    }
  }
  EXPECT_GT(cuts, 30);
}

TEST(Fences, CrossingWordsAroundAHole) {
  const auto d = st::square_with_hole();  // 4x4, hole [1,3]^2
  const auto fences = hole_fences(d);
  ASSERT_EQ(fences.size(), 1u);
  EXPECT_EQ(fences[0].a, Point(3, 3));
  EXPECT_EQ(fences[0].b.x(), 4);
  // circling the hole once counterclockwise gives one letter per lap
  std::vector<int> w;
  const std::vector<Point> lap{Point(2, Rational(1, 2)), Point(Rational(7, 2), Rational(1, 2)),
                               Point(Rational(7, 2), Rational(7, 2)), Point(Rational(1, 2), Rational(7, 2)),
                               Point(Rational(1, 2), Rational(1, 2)), Point(2, Rational(1, 2))};
  for (int rep = 0; rep < 2; ++rep)
    for (std::size_t i = 0; i + 1 < lap.size(); ++i) reduce_append(w, fence_crossings(fences, lap[i], lap[i + 1]));
  EXPECT_EQ(w, (std::vector<int>{1, 1}));
  // going back and forth cancels
  std::vector<int> z;
  reduce_append(z, fence_crossings(fences, Point(Rational(7, 2), 2), Point(Rational(7, 2), 4)));
  reduce_append(z, fence_crossings(fences, Point(Rational(7, 2), 4), Point(Rational(7, 2), 2)));
  EXPECT_TRUE(z.empty());
}

TEST(Fences, TouchingTheBaseCountsAsGoingRound) {
  const auto d = st::square_with_hole();
  const auto fences = hole_fences(d);
  const Point below(4, 2), above(Rational(7, 2), 4), base(3, 3);
  std::vector<int> w;
  reduce_append(w, fence_crossings(fences, below, base));
  reduce_append(w, fence_crossings(fences, base, above));
  std::vector<int> direct = fence_crossings(fences, below, Point(Rational(7, 2), 4));
  EXPECT_EQ(w, direct);
  EXPECT_EQ(w.size(), 1u);
}

TEST(Homotopy, ClassesAroundOneHole) {
  const auto d = st::square_with_hole();
  const Point s(0, 2), t(4, 2);
  const auto c0 = locally_shortest_paths(d, s, t, 0);
  const auto c1 = locally_shortest_paths(d, s, t, 1);
  EXPECT_EQ(c0.size(), 1u);
  EXPECT_EQ(c1.size(), 3u);  // below, above, below plus a lap
  for (const auto& h : c1) EXPECT_TRUE(path_in_domain(d, h.path));
  EXPECT_NEAR(c1[0].length, 2 + 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(c1[1].length, 2 + 2 * std::sqrt(2.0), 1e-12);
  EXPECT_GT(c1[2].length, 8.0);
  EXPECT_NE(c1[0].word, c1[1].word);
}

TEST(Homotopy, ShortestClassIsGlobalShortestPath) {
  std::mt19937 rng(5);
  for (const auto& d : {st::two_holes(), st::tilted_hole(), st::square_with_hole()}) {
    for (int k = 0; k < 6; ++k) {
      const Point s = random_interior(rng, d), t = random_interior(rng, d);
      const auto cls = locally_shortest_paths(d, s, t, 1);
      ASSERT_FALSE(cls.empty());
      EXPECT_NEAR(cls.front().length, st::brute_shortest_length(d, s, t), 1e-9);
      for (std::size_t i = 1; i < cls.size(); ++i) EXPECT_GE(cls[i].length, cls[i - 1].length);
    }
  }
}

TEST(Homotopy, SecludedPathNeverWorseThanShortestAndMonotoneInCap) {
  const auto d = st::two_holes();
  const Point s(Rational(1, 2), Rational(1, 2)), t(Rational(15, 2), Rational(11, 2));
  const auto r0 = secluded_path_holes(d, s, t, 0, 2);
  const auto r1 = secluded_path_holes(d, s, t, 1, 2);
  const auto r2 = secluded_path_holes(d, s, t, 2, 2);
  EXPECT_LE(r1.area, r0.area + 1e-9);
  EXPECT_LE(r2.area, r1.area + 1e-9);
  EXPECT_GE(r2.classes, r1.classes);
  const auto shortest = locally_shortest_paths(d, s, t, 2).front();
  EXPECT_LE(r2.area, weak_visibility_area(d, shortest.path, 2) + 1e-9);
  EXPECT_TRUE(path_in_domain(d, r2.path));
}

TEST(Homotopy, SimplePolygonHasOneClass) {
  const auto d = st::comb();
  const Point s(Rational(1, 2), Rational(7, 2)), t(Rational(13, 2), Rational(7, 2));
  const auto r = secluded_path_holes(d, s, t, 3, 2);
  EXPECT_EQ(r.classes, 1u);
  EXPECT_NEAR(r.length, shortest_path_simple(d, s, t).length(), 1e-12);
}

TEST(IntegralExposure, ConvexDomainIsLengthTimesArea) {
  const auto d = st::triangle();  // area 6
  PathPolyline p{{Point(1, 1), Point(2, 1), Point(Rational(3, 2), Rational(3, 2))}};
  EXPECT_NEAR(integral_exposure(d, p, 4.0), 6.0 * p.length(), 1e-9);
}

TEST(IntegralExposure, MatchesFineMidpointRule) {
  const auto d = st::l_shape();
  std::mt19937 rng(3);
  for (int k = 0; k < 4; ++k) {
    const Point s = random_interior(rng, d), t = random_interior(rng, d);
    const auto path = shortest_path_simple(d, s, t);
    double oracle = 0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
      const Point& a = path.vertices[i];
      const Point& b = path.vertices[i + 1];
      const int m = 4000;
      for (int j = 0; j < m; ++j) {
        const Point q = a + Rational(2 * j + 1, 2 * m) * (b - a);
        oracle += visible_area(d, q) * distance(a, b) / m;
      }
    }
    EXPECT_NEAR(integral_exposure(d, path, 4.0), oracle, 1e-5 * oracle);
  }
}

TEST(Ptas, ConvexDomainGivesStraightSegment) {
  const auto d = st::triangle();
  const Point s(1, 1), t(2, 1);
  const auto r = integral_secluded_ptas(d, s, t, 0.5);
  EXPECT_EQ(r.path.vertices.size(), 2u);
  EXPECT_NEAR(r.exposure, 6.0, 1e-9);
  EXPECT_GT(r.regions, 0u);
}

TEST(Ptas, WithinBoundOfGridOracleOnLShape) {
  const auto d = st::l_shape();
  const Point s(Rational(7, 4), Rational(3, 4)), t(Rational(3, 4), Rational(7, 4));
  const auto r = integral_secluded_ptas(d, s, t, 0.5);
  EXPECT_TRUE(path_in_domain(d, r.path));
  auto inside = [&](double x, double y) { return locate_point(d, Point::from_double(x, y)) != Location::Exterior; };
  auto weight = [&](double x, double y) { return visible_area(d, Point::from_double(x, y)); };
  const double oracle = st::grid_path_cost(0, 0, 2, 2, 0.125, inside, weight, {1.75, 0.75}, {0.75, 1.75});
  // grid paths are a few percent longer than the optimum, never shorter
  EXPECT_LE(r.exposure, std::pow(1.5, 3) * oracle);
  EXPECT_GE(r.exposure, 0.9 * oracle);
  EXPECT_LE(r.weighted_cost, std::pow(1.5, 3) * oracle);
}
