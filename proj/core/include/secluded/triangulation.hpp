#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "secluded/geometry.hpp"

namespace secluded {

/// Triangles over a shared, deduplicated point array. Triangles are
/// counterclockwise; neighbors[t][i] is the triangle across edge
/// (triangles[t][i], triangles[t][(i+1)%3]) or -1 on the boundary.
struct Triangulation {
  std::vector<Point> points;
  std::vector<std::array<std::size_t, 3>> triangles;
  std::vector<std::array<long, 3>> neighbors;

  Rational area() const;
  Rational triangle_area(std::size_t t) const;
  /// Lowest-index triangle whose closed region contains p.
  std::optional<std::size_t> locate(const Point& p) const;
};

/// Ear-clipping triangulation of a ring with holes (holes bridged to the
/// outer ring first). Orientation of the input rings is normalized.
Triangulation triangulate_polygon(Ring outer, std::vector<Ring> holes = {});

Triangulation triangulate(const PolygonalDomain& domain);

}  // namespace secluded
