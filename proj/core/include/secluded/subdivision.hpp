#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "secluded/geometry.hpp"
#include "secluded/visibility.hpp"

namespace secluded {

inline constexpr std::size_t kNoFace = std::numeric_limits<std::size_t>::max();

/// Maximal segment inside the domain through at least one domain vertex.
struct Chord {
  Point a;
  Point b;
  std::vector<std::size_t> through;  // domain vertices on the chord, in order from a
};

/// Planar arrangement restricted to the domain. Vertices are exact points,
/// edges are the atomic pieces of the inserted segments, and faces are the
/// bounded regions inside the domain.
struct Subdivision {
  struct Edge {
    std::size_t u = 0, v = 0;
    std::size_t left = kNoFace;   // face on the left of u->v
    std::size_t right = kNoFace;  // face on the right of u->v
  };
  struct Face {
    std::vector<std::size_t> outer;               // counterclockwise vertex cycle
    std::vector<std::vector<std::size_t>> inner;  // clockwise cycles of islands
    std::vector<std::size_t> edges;
    Rational area;
    std::size_t payload = 0;  // free slot for the owner of the subdivision
    std::array<double, 4> bbox{};  // xmin, ymin, xmax, ymax
  };

  std::vector<Point> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::vector<Segment> segments;  // inserted segments, boundary excluded

  std::size_t face_count() const { return faces.size(); }
  Ring outer_ring(std::size_t f) const;
  /// Closed containment test for a single face.
  bool face_contains(std::size_t f, const Point& p) const;
  /// Lowest-id face whose closure contains p. Throws GeometryError if none.
  std::size_t locate(const Point& p) const;
  Rational total_area() const;
};

/// One maximal chord per visibility edge, collinear duplicates merged.
std::vector<Chord> extend_visibility_edges(const PolygonalDomain& domain, const VisibilityGraph& vg);

/// Arrangement of the domain boundary together with the given segments, all of
/// which must lie in the closed domain.
Subdivision build_arrangement(const PolygonalDomain& domain, const std::vector<Segment>& segments);
Subdivision build_arrangement(const PolygonalDomain& domain, const std::vector<Chord>& chords);

Subdivision visibility_decomposition(const PolygonalDomain& domain);

std::size_t locate(const Subdivision& sub, const Point& p);

/// A point strictly inside face f.
Point interior_point(const Subdivision& sub, std::size_t f);

}  // namespace secluded
