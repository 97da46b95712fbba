#pragma once

// Exact geometric kernel: rational points, orientation predicates, rings and
// polygonal domains with holes.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace secluded {

using Rational = mpq_class;

/// Raised for malformed or degenerate geometric input.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point with exact rational coordinates. A double approximation of each
/// coordinate is cached on construction to drive the predicate filters.
class Point {
 public:
  Point() : x_(0), y_(0) {}
  Point(Rational x, Rational y);
  Point(long x, long y) : Point(Rational(x), Rational(y)) {}
  Point(int x, int y) : Point(Rational(x), Rational(y)) {}

  /// Exact conversion: every finite double is a dyadic rational.
  static Point from_double(double x, double y);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  double ax() const { return ax_; }
  double ay() const { return ay_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  /// Lexicographic (x, then y).
  friend bool operator<(const Point& a, const Point& b) {
    int c = cmp(a.x_, b.x_);
    return c < 0 || (c == 0 && a.y_ < b.y_);
  }

 private:
  Rational x_, y_;
  double ax_ = 0.0, ay_ = 0.0;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& a);

Rational cross(const Point& u, const Point& v);
Rational dot(const Point& u, const Point& v);

/// Sign of twice the signed area of triangle abc: +1 left turn, -1 right turn,
/// 0 collinear. Exact.
int orient(const Point& a, const Point& b, const Point& c);

/// Twice the signed area of triangle abc.
Rational orient_value(const Point& a, const Point& b, const Point& c);

double distance(const Point& a, const Point& b);

/// True if c lies on the closed segment ab (a == b allowed).
bool on_segment(const Point& a, const Point& b, const Point& c);

/// Closed segments ab and cd share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// Interiors cross at a single point that is interior to both segments.
bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d);

/// Intersection point of the supporting lines of ab and cd; nullopt if parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c,
                                       const Point& d);

/// Exact angular comparison of direction vectors around the origin, starting
/// from the positive x axis (angle 0 inclusive) counterclockwise.
bool angle_less(const Point& u, const Point& v);

using Ring = std::vector<Point>;

struct Segment {
  Point a;
  Point b;
};

/// Twice the signed area of a ring (positive for counterclockwise).
Rational ring_signed_area2(const Ring& ring);

/// Area of a simple ring. Throws GeometryError on non-simple input.
Rational polygon_area(const Ring& ring);

/// True if the ring has at least 3 vertices, nonzero area and no two edges
/// touch except consecutive edges at their shared endpoint.
bool ring_is_simple(const Ring& ring);

enum class Location { Interior, Boundary, Exterior };

/// Location of p relative to a single simple ring (orientation agnostic).
Location locate_in_ring(const Ring& ring, const Point& p);

/// Directed boundary edge of a domain, indexed by its start vertex.
struct DomainEdge {
  std::size_t from;
  std::size_t to;
};

/// Integer-coordinate polygon with holes. Outer ring is stored
/// counterclockwise and holes clockwise, so the interior always lies to the
/// left of every directed edge.
class PolygonalDomain {
 public:
  PolygonalDomain() = default;

  /// Validates and normalizes orientation. Throws GeometryError with a
  /// distinct message for each rejected condition.
  static PolygonalDomain create(Ring outer, std::vector<Ring> holes = {});

  const Ring& outer() const { return outer_; }
  const std::vector<Ring>& holes() const { return holes_; }

  /// All vertices: outer ring first, then each hole in order.
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<DomainEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t next(std::size_t v) const { return edges_[v].to; }
  std::size_t prev(std::size_t v) const { return prev_[v]; }
  /// Ring index of a vertex: 0 for outer, 1 + hole index otherwise.
  std::size_t ring_of(std::size_t v) const { return ring_of_[v]; }

  /// Largest absolute vertex coordinate.
  long max_abs_coordinate() const { return max_abs_; }

  Rational area() const;

  /// Vertex index of an exact point, if it is a vertex.
  std::optional<std::size_t> vertex_index(const Point& p) const;

  /// True if direction d (as a vector) points strictly into the interior at
  /// vertex v, i.e. strictly inside the interior wedge.
  bool direction_enters_interior(std::size_t v, const Point& d) const;

 private:
  Ring outer_;
  std::vector<Ring> holes_;
  std::vector<Point> vertices_;
  std::vector<DomainEdge> edges_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> ring_of_;
  long max_abs_ = 0;
};

Rational polygon_area(const PolygonalDomain& domain);

Location locate_point(const PolygonalDomain& domain, const Point& p);

/// True if the closed segment ab lies inside the closed domain.
bool segment_in_domain(const PolygonalDomain& domain, const Point& a, const Point& b);

/// Point where the ray from `origin` in direction `dir` first leaves the
/// closed domain, given the ray starts in the closed domain. Rays running
/// along the boundary continue.
Point ray_exit(const PolygonalDomain& domain, const Point& origin, const Point& dir);

/// s-t path as a polyline; consecutive vertices distinct.
struct PathPolyline {
  std::vector<Point> vertices;

  double length() const;
  bool empty() const { return vertices.empty(); }
};

/// Drops consecutive duplicates and interior vertices collinear with their
/// neighbours (when they lie between them).
PathPolyline simplify(PathPolyline path);

}  // namespace secluded
