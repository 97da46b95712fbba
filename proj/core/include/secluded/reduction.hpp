#pragma once

// Christmas-tree construction turning min-2SAT into a secluded path instance,
// with the angle analysis that sizes it and a numeric checker.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "secluded/geometry.hpp"
#include "secluded/sat.hpp"

namespace secluded {

/// Largest corridor angle at a clause gadget: 2 atan(n / (H + n h)).
double alpha_max(int n, double h, double H);

/// Smallest angle at a midway corridor intersection. Throws GeometryError when
/// a denominator is not positive (H too small for c clauses).
double alpha_min(int n, double h, double H, int c);

/// sin(alpha_min) / sin(alpha_max).
double angle_ratio(int n, double h, double H, int c);

/// Doubles H from h until angle_ratio exceeds `target` (default 4c^2).
/// Throws GeometryError if H passes h_limit first.
double find_clause_height(int n, double h, int c, double target = 0.0, double h_limit = 1e9);

using DPoint = std::array<double, 2>;
using DRing = std::vector<DPoint>;

struct ReductionParams {
  double h = 1.0;         // variable triangle height, corridor width 1
  double H = 0.0;         // clause line height; 0 picks it by find_clause_height
  double spread = 0.5;    // clauses span [-spread H/h, spread H/h]
  int grid = 4096;        // integer units per corridor width; vertex rounding casts shadows along thin corridors
  double scale = 16.0;    // unit spacing in corridor widths; 1 makes neighbouring corridors touch
  bool truncate = true;   // cut every clause gadget down to the smallest one
  bool equalizers = true;
  bool chambers = false;
};

struct ReductionLayout {
  PolygonalDomain domain;
  Point s, t;
  ReductionParams params;
  double H = 0.0;
  std::size_t num_vars = 0;
  std::vector<Point> apex;                    // n + 1 points, apex[n] == t
  std::vector<std::array<Point, 2>> corner;   // [i][0] literal x_i, [i][1] literal !x_i
  std::vector<DPoint> clause_point;           // where a clause's corridors meet
  std::map<std::pair<std::size_t, bool>, std::vector<DRing>> literal_corridor;  // (var, positive)
  std::vector<DRing> clause_gadget;
  std::vector<DRing> equalizer;
  std::vector<DRing> chamber;
  std::size_t tree_corridors = 0;
  std::size_t literal_corridors = 0;  // one per literal occurrence
  double a = 0.0;  // common clause-gadget area (domain units)
  double A = 0.0;  // non-clause area seen by a tree path, estimated per literal
  double max_midway = 0.0;  // largest overlap of two literal corridors outside a clause gadget

  /// s, the chosen corner of every variable, the next apex, ..., t.
  PathPolyline canonical_path(const Assignment& assignment) const;
  /// Non-clause corridor area hanging off a literal corner (plus equalizers).
  std::map<std::pair<std::size_t, bool>, double> literal_area;
};

ReductionLayout build_christmas_tree(const Cnf& cnf, const ReductionParams& params = {});

struct ReductionReport {
  std::vector<Assignment> assignments;
  std::vector<std::size_t> satisfied;
  std::vector<double> seen;
  double a = 0.0;
  double spearman = 0.0;
  bool monotone = false;  // every k-group sees strictly less than every (k+1)-group
  bool gaps_ok = false;   // successive group means differ by a within 25%
  std::vector<std::string> violations;
};

/// Seen area of the canonical path of every assignment against its satisfied
/// clause count. Instances up to 3 variables and 4 clauses.
ReductionReport verify_reduction(const ReductionLayout& layout, const Cnf& cnf, int refinement = 4);

}  // namespace secluded
