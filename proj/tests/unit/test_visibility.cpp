#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "secluded/visibility.hpp"

using namespace secluded;
namespace st = secluded::testing;

TEST(Visibility, ConvexSeesEverything) {
  auto d = st::triangle();
  auto vp = visibility_polygon(d, Point(1, 1));
  EXPECT_EQ(vp.exact_area, d.area());
  for (const auto& t : vp.fan) {
    EXPECT_EQ(t.start.kind, SideKind::FixedEndpoint);
    EXPECT_EQ(t.end.kind, SideKind::FixedEndpoint);
  }
  EXPECT_DOUBLE_EQ(visible_area(st::unit_square(), Point(Rational(1, 2), Rational(1, 2))), 1.0);
}

TEST(Visibility, LShapeMatchesGrid) {
  auto d = st::l_shape();
  const Point p(Rational(1, 2), Rational(1, 2));
  const double exact = visible_area(d, p);
  const double grid = st::grid_visible_area(d, p, 64);
  EXPECT_NEAR(exact, grid, 0.01 * grid);
  EXPECT_DOUBLE_EQ(exact, 3.0);  // p sees the whole L from the corner square
  const Point q(Rational(3, 2), Rational(1, 2));
  EXPECT_NEAR(visible_area(d, q), st::grid_visible_area(d, q, 64), 0.01 * visible_area(d, q));
}

TEST(Visibility, HoleGivesOneRotatingPair) {
  auto d = st::square_with_unit_hole();
  auto vp = visibility_polygon(d, Point(1, 1));
  int rotating = 0;
  std::set<std::size_t> anchors;
  for (const auto& t : vp.fan) {
    for (const FanSide* s : {&t.start, &t.end}) {
      if (s->kind == SideKind::Rotating) {
        ++rotating;
        anchors.insert(s->anchor);
        EXPECT_EQ(d.ring_of(s->anchor), 1u);
        EXPECT_EQ(orient(vp.center, d.vertices()[s->anchor], s->point), 0);
      }
    }
  }
  EXPECT_EQ(rotating, 2);
  EXPECT_EQ(anchors.size(), 2u);
  EXPECT_NEAR(vp.area, st::grid_visible_area(d, Point(1, 1), 16), 0.01 * vp.area);
}

TEST(Visibility, FanInvariants) {
  for (const auto& d : {st::l_shape(), st::comb(), st::two_holes(), st::niche_corridor()}) {
    std::mt19937 rng(3);
    const auto b = st::bbox(d);
    std::uniform_real_distribution<double> ux(b[0], b[2]), uy(b[1], b[3]);
    int done = 0;
    while (done < 25) {
      const Point p = Point::from_double(ux(rng), uy(rng));
      if (locate_point(d, p) != Location::Interior) continue;
      ++done;
      auto vp = visibility_polygon(d, p);
      Rational sum = 0;
      for (const auto& t : vp.fan) {
        EXPECT_GT(orient(p, t.start.point, t.end.point), 0);
        sum += orient_value(p, t.start.point, t.end.point);
        const auto& e = d.edges()[t.base_edge];
        EXPECT_TRUE(on_segment(d.vertices()[e.from], d.vertices()[e.to], t.start.point));
        EXPECT_TRUE(on_segment(d.vertices()[e.from], d.vertices()[e.to], t.end.point));
        EXPECT_TRUE(st::brute_sees(d, p, d.vertices()[t.start.anchor]));
        EXPECT_TRUE(st::brute_sees(d, p, d.vertices()[t.end.anchor]));
      }
      EXPECT_EQ(sum / 2, vp.exact_area);
      EXPECT_GE(vp.area, 0.5 - 1e-12);
      EXPECT_LE(vp.exact_area, d.area());
      EXPECT_EQ(ring_signed_area2(vp.boundary) / 2, vp.exact_area);
    }
  }
}

TEST(Visibility, BoundaryCenter) {
  auto d = st::l_shape();
  auto vp = visibility_polygon(d, Point(1, 1));  // reflex vertex
  EXPECT_EQ(vp.exact_area, d.area());
  auto vq = visibility_polygon(d, Point(2, Rational(1, 2)));
  EXPECT_NEAR(vq.area, st::grid_visible_area(d, Point(2, Rational(1, 2)), 64), 0.02 * vq.area);
  EXPECT_THROW(visibility_polygon(st::square_with_hole(), Point(2, 2)), GeometryError);
}

TEST(Visibility, SymmetryOfSees) {
  auto d = st::two_holes();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(0, 8), uy(0, 6);
  int pairs = 0;
  while (pairs < 500) {
    const Point p = Point::from_double(ux(rng), uy(rng));
    const Point q = Point::from_double(ux(rng), uy(rng));
    if (locate_point(d, p) == Location::Exterior || locate_point(d, q) == Location::Exterior) continue;
    ++pairs;
    const bool pq = sees(d, p, q);
    EXPECT_EQ(pq, sees(d, q, p));
    EXPECT_EQ(pq, st::brute_sees(d, p, q));
  }
}

TEST(VisibilityGraph, MatchesBruteForce) {
  auto check = [](const PolygonalDomain& d) {
    auto g = visibility_graph(d);
    const auto& v = d.vertices();
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) EXPECT_EQ(g.adjacent(a, b), st::brute_sees(d, v[a], v[b]));
    for (std::size_t a = 0; a < v.size(); ++a) EXPECT_TRUE(g.adjacent(a, d.next(a)));
  };
  check(st::l_shape());
  check(st::square_with_hole());
  check(st::two_holes());
  check(st::comb());
  auto g = visibility_graph(PolygonalDomain::create(st::ring({{0, 0}, {3, 0}, {4, 2}, {2, 4}, {0, 3}})));
  EXPECT_EQ(g.edges.size(), 10u);
  auto h = visibility_graph(st::square_with_hole());
  EXPECT_FALSE(h.adjacent(0, 2));
}

TEST(WeakVisibility, SinglePointAndConvex) {
  auto d = st::l_shape();
  const Point p(Rational(3, 2), Rational(1, 2));
  EXPECT_NEAR(weak_visibility_area(d, PathPolyline{{p}}, 1), visible_area(d, p), 1e-6);
  auto sq = st::unit_square();
  EXPECT_NEAR(weak_visibility_area(sq, PathPolyline{{Point(0, 0), Point(1, 1)}}, 3), 1.0, 1e-6);
}

TEST(WeakVisibility, MonotoneAndConverges) {
  auto d = st::comb();
  PathPolyline path{{Point(Rational(1, 2), Rational(1, 2)), Point(Rational(13, 2), Rational(1, 2))}};
  double prev = 0;
  for (int r : {1, 2, 4, 8, 16}) {
    const double a = weak_visibility_area(d, path, r);
    EXPECT_GE(a, prev * (1 - 1e-7));
    EXPECT_LE(a, d.area().get_d() * (1 + 1e-7));
    prev = a;
  }
  auto l = st::l_shape();
  PathPolyline mid{{Point(Rational(1, 4), Rational(1, 2)), Point(Rational(7, 4), Rational(1, 2))}};
  const double a8 = weak_visibility_area(l, mid, 8);
  const double a16 = weak_visibility_area(l, mid, 16);
  EXPECT_LT(std::fabs(a16 - a8), 1e-3 * a16);
  // grid-union oracle over the same samples
  const auto samples = weak_visibility_samples(mid, {}, 16);
  EXPECT_NEAR(a16, st::grid_union_area(l, samples, 32), 0.01 * a16);
}

TEST(UnionArea, OverlappingSquares) {
  std::vector<Ring> rings{st::ring({{0, 0}, {2, 0}, {2, 2}, {0, 2}}), st::ring({{1, 1}, {3, 1}, {3, 3}, {1, 3}})};
  EXPECT_NEAR(union_area(rings), 7.0, 1e-6);
}

// Forty nearly identical visibility polygons; used to crash the union.
TEST(UnionArea, NearParallelBundle) {
  std::ifstream in(std::string(SECLUDED_TEST_DATA) + "/near_parallel_rings.txt");
  ASSERT_TRUE(in);
  std::vector<Ring> rings;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t n = 0;
    ls >> n;
    Ring r;
    for (std::size_t i = 0; i < n; ++i) {
      std::string x, y;
      ls >> x >> y;
      r.emplace_back(Rational(x), Rational(y));
    }
    rings.push_back(r);
  }
  ASSERT_EQ(rings.size(), 40u);
  const double got = union_area(rings);
  double lo = 1e300, hi = -1e300;
  for (const Ring& r : rings)
    for (const Point& p : r) lo = std::min({lo, p.ax(), p.ay()}), hi = std::max({hi, p.ax(), p.ay()});
  const double h = 1.0 / 8;
  std::size_t cells = 0;
  for (double x = lo + h / 2; x < hi; x += h)
    for (double y = lo + h / 2; y < hi; y += h) {
      const Point c = Point::from_double(x, y);
      cells += std::any_of(rings.begin(), rings.end(), [&](const Ring& r) { return locate_in_ring(r, c) != Location::Exterior; });
    }
  EXPECT_NEAR(got, cells * h * h, 0.01 * got);
}
