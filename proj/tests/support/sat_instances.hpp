#pragma once

#include <random>
#include <vector>

#include "secluded/sat.hpp"

namespace secluded::testing {

/// Variables on a cycle, each with its positive occurrences on one side; every
/// clause sits on one side. Some clauses are unit.
inline EmbeddedCnf random_separable(std::mt19937& rng, std::size_t max_vars, std::size_t max_clauses) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vars), nc(0, max_clauses);
  EmbeddedCnf e;
  e.cnf.num_vars = nv(rng);
  std::vector<Side> pos_side(e.cnf.num_vars);
  for (auto& s : pos_side) s = rng() % 2 ? Side::Left : Side::Right;
  const std::size_t m = nc(rng);
  std::uniform_int_distribution<std::size_t> var(0, e.cnf.num_vars - 1);
  for (std::size_t c = 0; c < m; ++c) {
    const Side s = rng() % 2 ? Side::Left : Side::Right;
    Clause cl;
    for (int k = 0, len = 1 + static_cast<int>(rng() % 4 != 0); k < len; ++k) {
      const std::size_t v = var(rng);
      cl.push_back({v, pos_side[v] == s});
      e.side[{v, c}] = s;
    }
    e.cnf.clauses.push_back(cl);
  }
  for (std::size_t v = 0; v < e.cnf.num_vars; ++v) e.v_cycle.push_back(v);
  return e;
}

/// Two distinct variables per clause, arriving from opposite sides.
inline EmbeddedCnf random_vc_separated(std::mt19937& rng, std::size_t max_vars, std::size_t max_clauses) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vars), nc(1, max_clauses);
  EmbeddedCnf e;
  e.cnf.num_vars = nv(rng);
  std::vector<Side> pos_side(e.cnf.num_vars);
  for (auto& s : pos_side) s = rng() % 2 ? Side::Left : Side::Right;
  const std::size_t m = nc(rng);
  std::uniform_int_distribution<std::size_t> var(0, e.cnf.num_vars - 1);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t x = var(rng);
    std::size_t y = var(rng);
    while (y == x) y = var(rng);
    const Side sx = rng() % 2 ? Side::Left : Side::Right;
    const Side sy = sx == Side::Left ? Side::Right : Side::Left;
    e.cnf.clauses.push_back({{x, pos_side[x] == sx}, {y, pos_side[y] == sy}});
    e.side[{x, c}] = sx;
    e.side[{y, c}] = sy;
  }
  for (std::size_t v = 0; v < e.cnf.num_vars; ++v) e.v_cycle.push_back(v);
  return e;
}

inline Cnf random_2cnf(std::mt19937& rng, std::size_t max_vars, std::size_t max_clauses, bool monotone = false) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vars), nc(0, max_clauses);
  Cnf cnf;
  cnf.num_vars = nv(rng);
  std::uniform_int_distribution<std::size_t> var(0, cnf.num_vars - 1);
  const std::size_t m = nc(rng);
  for (std::size_t c = 0; c < m; ++c) {
    const bool pol = rng() % 2;
    Clause cl;
    for (int k = 0, len = 1 + static_cast<int>(rng() % 4 != 0); k < len; ++k)
      cl.push_back({var(rng), monotone ? pol : static_cast<bool>(rng() % 2)});
    cnf.clauses.push_back(cl);
  }
  return cnf;
}

}  // namespace secluded::testing
