#pragma once

// File formats: domains as JSON, CNFs as DIMACS with embedding comments,
// deterministic SVG pictures.

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "secluded/exposure.hpp"
#include "secluded/geometry.hpp"
#include "secluded/reduction.hpp"
#include "secluded/sat.hpp"

namespace secluded {

/// Malformed input text. The message names the problem and, for CNF files,
/// the line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainFile {
  PolygonalDomain domain;
  std::optional<Point> s;
  std::optional<Point> t;
  nlohmann::json annotations;  // free-form, kept verbatim; null when absent
};

/// {"outer": [[x,y],...], "holes": [[[x,y],...],...], "s": [x,y], "t": [x,y],
///  "annotations": {...}}. Coordinates must be integers of magnitude < 2^30.
/// Syntax problems throw FormatError; geometric ones throw GeometryError
/// ("outer ring not simple", "hole not interior", "holes overlap", ...).
DomainFile parse_domain(const std::string& text);

/// Normal form: outer ring counterclockwise and holes clockwise, each ring
/// starting at its smallest vertex, one key per line, trailing newline.
std::string serialize_domain(const DomainFile& file);
std::string serialize_domain(const PolygonalDomain& domain);

/// DIMACS "p cnf <vars> <clauses>" plus clause lines ending in 0. Recognised
/// comments: "c v-cycle <vars...>", "c side <var> <clause> <L|R>" and
/// "c vc-cycle <v<i>|c<j> ...>", all 1-based. Other comments are ignored.
EmbeddedCnf parse_cnf(const std::string& text);

/// Normal form: extension comments first (sides sorted), then the header
/// and one clause per line.
std::string serialize_cnf(const EmbeddedCnf& e);
std::string serialize_cnf(const Cnf& cnf);

/// Layout in the domain format with an annotation block naming the literal
/// corridors, clause gadgets and the areas a and A.
DomainFile layout_file(const ReductionLayout& layout, const Cnf& cnf);

nlohmann::json weighted_subdivision_json(const WeightedSubdivision& ws);
nlohmann::json path_json(const PathPolyline& path);

struct SvgPath {
  PathPolyline path;
  std::string color = "#1f4e9c";
  std::string label;
};

struct SvgOverlay {
  std::vector<WeightedRegion> regions;  // colored by weight on a log scale
  std::vector<DRing> outlines;          // thin outlines, e.g. corridors
  std::vector<SvgPath> paths;           // one <path> element each
  std::vector<Point> markers;
};

/// Deterministic document: fixed element order, coordinates printed with four
/// decimals, y axis pointing up.
std::string render_svg(const PolygonalDomain& domain, const SvgOverlay& overlay = {});

/// Hex color for a weight in [lo, hi] on a logarithmic ramp.
std::string weight_color(double weight, double lo, double hi);

}  // namespace secluded
