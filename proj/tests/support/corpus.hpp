#pragma once

#include <random>
#include <vector>

#include "secluded/sat.hpp"

namespace secluded::testing {

/// Small 2-CNFs (n <= 3, c <= 4) for the reduction checks: a few fixed ones,
/// then seeded random ones with 1- and 2-literal clauses.
inline std::vector<Cnf> reduction_corpus(std::size_t random_count = 12, unsigned seed = 7) {
  const auto P = [](std::size_t v) { return Literal{v, true}; };
  const auto N = [](std::size_t v) { return Literal{v, false}; };
  std::vector<Cnf> out{
      Cnf{1, {{P(0), N(0)}}},
      Cnf{2, {{P(0), P(1)}, {N(0), P(1)}, {P(0), N(1)}}},
      Cnf{2, {{P(0), P(1)}, {N(0), N(1)}, {P(0), N(1)}, {N(0), P(1)}}},
      Cnf{3, {{P(0), P(1)}, {P(1), P(2)}, {N(0), N(2)}}},
      Cnf{3, {{P(0), N(1)}, {P(1), N(2)}, {P(2), N(0)}, {P(0), P(2)}}},
  };
  std::mt19937 rng(seed);
  while (out.size() < 5 + random_count) {
    Cnf cnf;
    cnf.num_vars = 1 + rng() % 3;
    const std::size_t m = 1 + rng() % 4;
    for (std::size_t c = 0; c < m; ++c) {
      Clause cl{{rng() % cnf.num_vars, rng() % 2 == 0}};
      if (rng() % 4 != 0) cl.push_back({rng() % cnf.num_vars, rng() % 2 == 0});
      cnf.clauses.push_back(cl);
    }
    out.push_back(cnf);
  }
  return out;
}

}  // namespace secluded::testing
