#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "secluded/geometry.hpp"
#include "secluded/wrp.hpp"

namespace secluded {

/// Euclidean shortest s-t path inside a simple polygon (funnel algorithm over
/// the triangulation sleeve). Throws GeometryError for domains with holes or
/// points outside.
PathPolyline shortest_path_simple(const PolygonalDomain& domain, const Point& s, const Point& t);

/// Window of V(s) separating p from s.
struct EssentialCut {
  Segment chord;       // from `vertex` to where the chord meets the boundary again
  std::size_t vertex;  // reflex vertex the chord passes through
  int s_side;          // side of the chord's supporting line (orient sign) facing s's part
};

/// None iff p is seen from s (closed visibility). Simple polygons only.
std::optional<EssentialCut> essential_cut(const PolygonalDomain& domain, const Point& p, const Point& s);

/// One fence per hole, from its extreme vertex in a fixed generic direction to
/// the next boundary hit; cutting along all fences leaves a simply connected
/// region.
std::vector<Segment> hole_fences(const PolygonalDomain& domain);

/// Signed fence crossings of segment ab in order along the segment; letter
/// +(i+1) crosses fence i from its right to its left side, -(i+1) the reverse.
std::vector<int> fence_crossings(const std::vector<Segment>& fences, const Point& a, const Point& b);

/// Appends letters to a freely reduced word, cancelling inverse pairs.
void reduce_append(std::vector<int>& word, const std::vector<int>& letters);

struct HomotopyPath {
  std::vector<int> word;  // reduced fence word
  PathPolyline path;
  double length = 0.0;
};

/// Shortest visibility-graph path of every fence word reachable with at most
/// max_crossings letters per fence, in order of increasing length.
std::vector<HomotopyPath> locally_shortest_paths(const PolygonalDomain& domain, const Point& s, const Point& t,
                                                 int max_crossings);

struct SecludedResult {
  PathPolyline path;
  double area = 0.0;    // weak visibility area of the path
  double length = 0.0;
  std::vector<int> signature;  // reduced fence word of the chosen class
  std::size_t classes = 0;     // homotopy classes evaluated
};

/// Minimum weak-visibility s-t path among locally shortest paths of every
/// homotopy class crossing each fence at most max_crossings times.
SecludedResult secluded_path_holes(const PolygonalDomain& domain, const Point& s, const Point& t,
                                   int max_crossings, int refinement = 4);

/// Adaptive Simpson quadrature of |V(p)| along the path; pieces are split at
/// visibility-decomposition chords so the integrand is smooth on each.
double integral_exposure(const PolygonalDomain& domain, const PathPolyline& path, double samples_per_unit);
double integral_exposure(const PolygonalDomain& domain, const PathPolyline& path, double samples_per_unit,
                         const std::vector<Segment>& cuts);

struct PtasResult {
  PathPolyline path;
  double weighted_cost = 0.0;  // integral of the piecewise-constant weight
  double exposure = 0.0;       // true integral exposure of the path
  std::size_t regions = 0;
  std::size_t nodes = 0;
  std::size_t arcs = 0;
};

PtasResult integral_secluded_ptas(const PolygonalDomain& domain, const Point& s, const Point& t, double eps,
                                  double samples_per_unit = 8.0);

}  // namespace secluded
