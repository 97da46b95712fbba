#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "secluded/geometry.hpp"

namespace secluded::testing {

inline Ring ring(std::initializer_list<std::pair<int, int>> pts) {
  Ring r;
  for (auto [x, y] : pts) r.emplace_back(x, y);
  return r;
}

inline PolygonalDomain unit_square() { return PolygonalDomain::create(ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}})); }

inline PolygonalDomain triangle() { return PolygonalDomain::create(ring({{0, 0}, {4, 0}, {1, 3}})); }

inline PolygonalDomain l_shape() {
  return PolygonalDomain::create(ring({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}));
}

inline PolygonalDomain square_with_hole() {
  return PolygonalDomain::create(ring({{0, 0}, {4, 0}, {4, 4}, {0, 4}}),
                                 {ring({{1, 1}, {1, 3}, {3, 3}, {3, 1}})});
}

inline PolygonalDomain square_with_unit_hole() {
  // 4x4 square with a unit hole at the center, scaled by 2.
  return PolygonalDomain::create(ring({{0, 0}, {8, 0}, {8, 8}, {0, 8}}),
                                 {ring({{3, 3}, {5, 3}, {5, 5}, {3, 5}})});
}

inline PolygonalDomain tilted_hole() {
  return PolygonalDomain::create(ring({{0, 0}, {8, 0}, {9, 7}, {1, 8}}), {ring({{3, 3}, {5, 4}, {4, 6}})});
}

inline PolygonalDomain comb() {
  return PolygonalDomain::create(
      ring({{0, 0}, {7, 0}, {7, 4}, {6, 4}, {6, 1}, {4, 1}, {4, 4}, {3, 4}, {3, 1}, {1, 1}, {1, 4}, {0, 4}}));
}

inline PolygonalDomain two_holes() {
  return PolygonalDomain::create(ring({{0, 0}, {8, 0}, {8, 6}, {0, 6}}),
                                 {ring({{1, 1}, {3, 1}, {3, 4}, {1, 4}}), ring({{5, 2}, {7, 2}, {6, 5}})});
}

// Corridor with a niche on the lower side between x=0 and x=12.
inline PolygonalDomain niche_corridor() {
  return PolygonalDomain::create(ring({{-20, 1}, {0, 1}, {0, 0}, {12, 0}, {12, 1}, {32, 1}, {32, 2}, {12, 2},
                                       {12, 4}, {0, 4}, {0, 2}, {-20, 2}}));
}

/// Random simple polygon: random integer points untangled by 2-opt moves.
inline Ring random_simple_polygon(std::mt19937& rng, int n, int range) {
  std::uniform_int_distribution<int> coord(0, range);
  for (;;) {
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      Point p(coord(rng), coord(rng));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 10000) {
      changed = false;
      for (int i = 0; i < n && !changed; ++i) {
        for (int j = i + 2; j < n && !changed; ++j) {
          if (i == 0 && j == n - 1) continue;
          const Point& a = pts[i];
          const Point& b = pts[i + 1];
          const Point& c = pts[j];
          const Point& d = pts[(j + 1) % n];
          if (segments_intersect(a, b, c, d)) {
            std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
            changed = true;
          }
        }
      }
    }
    if (ring_is_simple(pts)) return pts;
  }
}

}  // namespace secluded::testing
