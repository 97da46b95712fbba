#pragma once

// Weighted region shortest paths over convex pieces via Steiner points.

#include <cstddef>
#include <functional>
#include <vector>

#include "secluded/exposure.hpp"
#include "secluded/geometry.hpp"

namespace secluded {

/// Convex pieces covering the domain, each with an oracle for the integral of
/// the weight along a segment contained in the piece.
struct WrpInstance {
  std::vector<Ring> pieces;  // counterclockwise, convex
  std::function<double(std::size_t piece, const Point& a, const Point& b)> cost;
  double min_weight = 0.0;  // lower bound on the weight everywhere

  static WrpInstance from_weights(const WeightedSubdivision& ws);
  /// Pieces with one constant weight each.
  static WrpInstance constant(std::vector<Ring> pieces, std::vector<double> weights);
};

struct SteinerGraph {
  std::vector<Point> nodes;
  std::vector<std::vector<std::size_t>> piece_nodes;  // nodes on each piece boundary
  std::vector<std::vector<std::size_t>> node_pieces;  // pieces touching each node
  std::size_t s = 0;
  std::size_t t = 0;

  std::size_t node_count() const { return nodes.size(); }
  /// Number of distinct node pairs joined through some piece.
  std::size_t arc_count() const;
  /// Visits every arc (u < v) once per piece that carries it.
  void for_each_arc(const std::function<void(std::size_t piece, std::size_t u, std::size_t v)>& fn) const;
};

/// Steiner points per piece edge: geometric spacing towards both endpoints on a
/// schedule that is nested as eps decreases, at most ceil(4/eps) per edge.
/// s and t become nodes joined to every node of the pieces containing them.
SteinerGraph discretize(const WrpInstance& inst, const Point& s, const Point& t, double eps);

/// Interior Steiner parameters in (0, 1) used for an edge at this eps.
std::vector<double> steiner_parameters(double eps);

struct WeightedPathResult {
  PathPolyline path;
  double cost = 0.0;
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::size_t settled = 0;
};

/// Label-setting search from g.s to g.t (ties broken by node id). Throws
/// GeometryError if t is unreachable.
WeightedPathResult shortest_weighted_path(const WrpInstance& inst, const SteinerGraph& g);

/// Integral of the weight along the polyline, splitting at piece boundaries.
/// Pieces along a shared boundary contribute the smaller weight.
double path_cost(const WrpInstance& inst, const PathPolyline& path);
double path_cost(const WeightedSubdivision& ws, const PathPolyline& path);

}  // namespace secluded
