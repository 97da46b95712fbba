#pragma once

// Small helpers for the command-line tool: argument parsing, file reading and
// seeded random instances. Randomness goes through raw mt19937 output only so
// a seed gives the same corpus with any standard library.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "secluded/geometry.hpp"
#include "secluded/io.hpp"
#include "secluded/sat.hpp"

namespace secluded::cli {

inline std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

inline Rational parse_rational(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw FormatError("not a number: \"" + s + "\"");
  }
}

// "x,y" with integer or p/q components.
inline Point parse_point_arg(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw FormatError("point must be x,y: \"" + s + "\"");
  return Point(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

// Whitespace- or semicolon-separated points.
inline PathPolyline parse_path_arg(std::string s) {
  std::replace(s.begin(), s.end(), ';', ' ');
  std::istringstream in(s);
  PathPolyline path;
  for (std::string tok; in >> tok;) path.vertices.push_back(parse_point_arg(tok));
  if (path.vertices.size() < 2) throw FormatError("path needs at least two points");
  return path;
}

inline double unit_draw(std::mt19937& rng) { return rng() * (1.0 / 4294967296.0); }

inline Point random_interior_point(const PolygonalDomain& d, std::mt19937& rng) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Point& p : d.vertices()) {
    x0 = std::min(x0, p.ax()), y0 = std::min(y0, p.ay());
    x1 = std::max(x1, p.ax()), y1 = std::max(y1, p.ay());
  }
  for (int tries = 0; tries < 100000; ++tries) {
    // a 1/1024 grid keeps the rationals short
    const double x = std::round((x0 + unit_draw(rng) * (x1 - x0)) * 1024) / 1024;
    const double y = std::round((y0 + unit_draw(rng) * (y1 - y0)) * 1024) / 1024;
    Point p = Point::from_double(x, y);
    if (locate_point(d, p) == Location::Interior) return p;
  }
  throw GeometryError("could not sample an interior point");
}

// Random integer points untangled by 2-opt until the ring is simple.
inline Ring random_simple_polygon(std::mt19937& rng, int n, int range) {
  for (;;) {
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      Point p(static_cast<long>(rng() % (range + 1)), static_cast<long>(rng() % (range + 1)));
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    bool changed = true;
    for (int rounds = 0; changed && rounds < 10000; ++rounds) {
      changed = false;
      for (int i = 0; i < n && !changed; ++i) {
        for (int j = i + 2; j < n && !changed; ++j) {
          if (i == 0 && j == n - 1) continue;
          if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n])) {
            std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
            changed = true;
          }
        }
      }
    }
    if (ring_is_simple(pts) && polygon_area(pts) > 0) return pts;
  }
}

// 2-CNF with 1..max_vars variables and 1..max_clauses clauses, some unit.
inline Cnf random_2cnf(std::mt19937& rng, std::size_t max_vars, std::size_t max_clauses) {
  Cnf cnf;
  cnf.num_vars = 1 + rng() % max_vars;
  const std::size_t m = 1 + rng() % max_clauses;
  for (std::size_t c = 0; c < m; ++c) {
    Clause cl{{rng() % cnf.num_vars, rng() % 2 == 0}};
    if (rng() % 4 != 0) cl.push_back({rng() % cnf.num_vars, rng() % 2 == 0});
    cnf.clauses.push_back(cl);
  }
  return cnf;
}

inline std::string clause_name(const Clause& c) {
  std::string s;
  for (const Literal& l : c) {
    if (!s.empty()) s += "|";
    s += (l.positive ? "x" : "!x") + std::to_string(l.var + 1);
  }
  return s;
}

}  // namespace secluded::cli
