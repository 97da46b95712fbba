#pragma once

// Piecewise-constant approximation of the visible-area function |V(p)|.
//
// The refined visibility decomposition splits the domain into cells where the
// fan of V(p) is combinatorially fixed and, for every rotating side, the foot
// of the anchor's perpendicular stays on one side. Inside such a cell
//   |V(p)| = C + sum_plus delta_r(p) - sum_minus delta_r(p)
// where delta_r is the area of the small triangle (anchor, foot, hit point).
// Each delta_r is constant along rays from the anchor, so level sets of the
// approximation are rays and every overlay region is convex.

#include <array>
#include <cstddef>
#include <vector>

#include "secluded/geometry.hpp"
#include "secluded/subdivision.hpp"

namespace secluded {

/// Area of triangle pqr where r, q are the hits of rays p->r_anchor and
/// p->q_anchor with the supporting line of `base`. Always nonnegative.
/// Throws GeometryError if a ray is parallel to the base line.
double triangle_area_eq1(const Point& p, const Point& r_anchor, const Point& q_anchor, const Segment& base);

/// Level curve of the area above: in the frame where `base` runs along the
/// x axis (origin at base.a) with the anchors above it, returns x at height y
/// such that |pqr| = A, on the branch where q lies to the right of r.
/// Throws GeometryError if y equals either anchor height.
double level_curve_eq2(double A, const Point& r_anchor, const Point& q_anchor, const Segment& base, double y);

/// Local frame of an anchor vertex relative to the supporting line of a base
/// edge: origin at the anchor, x along the base direction, y pointing away
/// from the base, which lies at y = -h.
struct AnchorFrame {
  std::size_t anchor = 0;
  std::size_t base_edge = 0;
  Point origin;
  Segment base;
  Rational h2;  // squared distance from the anchor to the base line
  double h = 0.0;
  std::array<double, 2> u{};  // unit vector along the base
  std::array<double, 2> n{};  // unit normal pointing away from the base

  static AnchorFrame make(const PolygonalDomain& domain, std::size_t anchor, std::size_t base_edge);
  std::array<double, 2> local(double x, double y) const;
  Point foot() const;  // projection of the anchor onto the base line
};

/// delta = h^2/2 * |x|/y in the anchor frame. Throws if local y <= 0.
double delta_eq7(const AnchorFrame& frame, const Point& p);
double delta_eq7(const AnchorFrame& frame, double x, double y);

/// Geometric sequence A_1 = eps/(2n), A_i = (1+eps) A_{i-1}, up to the first
/// value at or above `upper`.
struct LevelSequence {
  double eps = 0.0;
  double ratio = 1.0;
  std::vector<double> values;

  static LevelSequence make(double eps, std::size_t n, double upper);
  std::size_t size() const { return values.size(); }
  double a1() const { return values.front(); }
  /// 1-based index of the smallest A_i >= delta (1 for delta <= A_1).
  std::size_t index_of(double delta) const;
  double weight_of(double delta) const { return values[index_of(delta) - 1]; }
};

struct AnchorTerm {
  AnchorFrame frame;
  int sign = 1;  // +1: the anchor's small triangle is seen, -1: it is not
};

/// Per-cell data of the refined decomposition.
struct CellData {
  double C = 0.0;
  std::vector<AnchorTerm> terms;
  std::vector<std::size_t> plus;   // anchors with sign +1
  std::vector<std::size_t> minus;  // anchors with sign -1
  Point sample;                    // interior point the data was derived from
};

/// (anchor vertex, base edge) pairs realized by rotating sides in some face.
std::vector<std::pair<std::size_t, std::size_t>> rotating_pairs(const PolygonalDomain& domain,
                                                                const Subdivision& vd);

/// Overlays the visibility decomposition with the maximal chords through each
/// rotating anchor perpendicular to its base line.
Subdivision refine_decomposition(const PolygonalDomain& domain, const Subdivision& vd);

CellData cell_constant_and_signs(const PolygonalDomain& domain, const Subdivision& refined, std::size_t cell);

/// Convex piece of a refined cell; all Steiner points and costs live on these.
struct ConvexPiece {
  std::size_t cell = 0;
  Ring ring;  // counterclockwise, may contain straight vertices
};

struct WeightedRegion {
  std::vector<std::array<double, 2>> ring;
  double weight = 0.0;
};

struct WeightedSubdivision {
  double eps = 0.0;
  std::size_t n = 0;
  long L = 0;
  LevelSequence levels;
  Subdivision refined;
  std::vector<CellData> cells;
  std::vector<ConvexPiece> pieces;

  /// Weight of the overlay region containing p (ties as in locate()).
  double weight_at(const Point& p) const;
  /// Weight at a point known to lie in the closure of the given cell.
  double weight_in_cell(std::size_t cell, double x, double y) const;
  /// Integral of the weight along segment ab lying inside one cell.
  double segment_cost(std::size_t cell, const Point& a, const Point& b) const;
  /// Number of overlay regions (level rays clipped to convex pieces).
  std::size_t region_count() const;
  double min_weight() const;
  /// Explicit overlay regions, in doubles; for plotting and dumps.
  std::vector<WeightedRegion> regions() const;
};

/// Throws GeometryError unless 0 < eps <= 1.
WeightedSubdivision build_weighted_subdivision(const PolygonalDomain& domain, double eps);

double weight_at(const WeightedSubdivision& ws, const Point& p);

/// Pointwise weight of the curved-sector construction: every fan triangle
/// contributes the level value of its own area.
double curved_sector_weight(const PolygonalDomain& domain, const LevelSequence& levels, const Point& p);

/// Upper bound on any small-triangle area used to size the level sequence.
double level_upper_bound(const PolygonalDomain& domain);

}  // namespace secluded
