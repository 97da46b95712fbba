#pragma once

// Boost.Polygon with exact rational intersection arithmetic. The long double
// default segfaults on bundles of nearly parallel edges (many visibility
// polygons from close sample points). Same idea as boost's gmp_override.hpp,
// which cannot be included from two translation units.

#include <gmpxx.h>

#include <boost/polygon/polygon.hpp>

namespace boost::polygon {

template <>
struct high_precision_type<int> {
  typedef mpq_class type;
};

template <>
inline int convert_high_precision_type<int>(const mpq_class& v) {
  mpz_class q = v.get_num() / v.get_den();
  return static_cast<int>(q.get_si());
}

}  // namespace boost::polygon
