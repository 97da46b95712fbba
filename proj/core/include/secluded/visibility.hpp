#pragma once

#include <cstddef>
#include <tuple>
#include <vector>

#include "secluded/geometry.hpp"

namespace secluded {

enum class SideKind { FixedEndpoint, Rotating };

/// One non-base side of a fan triangle. `point` is where the side meets the
/// base edge. A fixed-endpoint side ends at its anchor vertex; a rotating side
/// passes through its anchor and pivots around it as the center moves.
struct FanSide {
  SideKind kind = SideKind::FixedEndpoint;
  std::size_t anchor = 0;
  Point point;
};

/// Triangle (center, start.point, end.point), counterclockwise, whose base
/// lies on domain edge `base_edge` (index of its start vertex).
struct FanTriangle {
  std::size_t base_edge = 0;
  FanSide start;
  FanSide end;
};

using FanSignatureEntry = std::tuple<std::size_t, int, std::size_t, int, std::size_t>;

struct VisibilityPolygon {
  Point center;
  std::vector<FanTriangle> fan;
  Rational exact_area;
  double area = 0.0;

  /// Boundary ring, counterclockwise; passes through the center when the
  /// center lies on the domain boundary.
  Ring boundary;

  /// Fan combinatorics as a cyclic sequence rotated to its lexicographic
  /// minimum, so equal signatures mean combinatorially equal fans.
  std::vector<FanSignatureEntry> signature() const;
};

/// Visibility polygon of p (closed visibility). Throws GeometryError if p is
/// outside the domain.
VisibilityPolygon visibility_polygon(const PolygonalDomain& domain, const Point& p);

double visible_area(const PolygonalDomain& domain, const Point& p);

/// Mutual visibility of two points of the closed domain.
bool sees(const PolygonalDomain& domain, const Point& p, const Point& q);

struct VisibilityGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, sorted
  std::vector<std::vector<std::size_t>> adjacency;

  bool adjacent(std::size_t u, std::size_t v) const;
};

VisibilityGraph visibility_graph(const PolygonalDomain& domain);

/// Sample points used for weak visibility: path vertices, crossings with the
/// given cut segments, plus refinement-1 evenly spaced points on every piece
/// between consecutive samples. Nested in refinement (r divides r').
std::vector<Point> weak_visibility_samples(const PathPolyline& path,
                                           const std::vector<Segment>& cuts,
                                           int refinement);

/// Area of the union of V(p) over the samples above. The cut segments default
/// to the maximal chords of the visibility decomposition.
double weak_visibility_area(const PolygonalDomain& domain, const PathPolyline& path,
                            int refinement);
double weak_visibility_area(const PolygonalDomain& domain, const PathPolyline& path,
                            int refinement, const std::vector<Segment>& cuts);

/// Area of the union of a set of simple rings.
double union_area(const std::vector<Ring>& rings);

}  // namespace secluded
