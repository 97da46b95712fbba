#pragma once

// Optimal satisfiability for clauses with at most two literals: exhaustive
// oracle, bipartite (separable / monotone) min-SAT via matching, and the
// clause-level reductions between max and min variants.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace secluded {

class SatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Literal {
  std::size_t var = 0;
  bool positive = true;

  Literal operator!() const { return {var, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;
using Assignment = std::vector<bool>;

/// Clauses of any arity; most operations need at most two literals each.
struct Cnf {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  /// Every clause has 1 or 2 literals and all variables are in range.
  bool is_2cnf() const;
  std::size_t add_var() { return num_vars++; }
};

enum class Side { Left, Right };

/// Clause-variable incidence drawn around a cycle through the variables.
/// side[{v, c}] is the side on which the connection from variable v reaches
/// clause c.
struct EmbeddedCnf {
  Cnf cnf;
  std::vector<std::size_t> v_cycle;
  std::map<std::pair<std::size_t, std::size_t>, Side> side;
  std::optional<std::vector<std::size_t>> vc_cycle;  // variables 0..n-1, clauses n..n+m-1
};

enum class Objective { Min, Max };

struct SatOptimum {
  std::size_t value = 0;
  Assignment assignment;
};

std::size_t satisfied_count(const Cnf& cnf, const Assignment& a);

/// Exhaustive optimum, lexicographically smallest optimal assignment
/// (false < true, variable 0 first). At most 25 variables.
SatOptimum brute_force_opt(const Cnf& cnf, Objective objective);

struct ConflictGraph {
  std::size_t vertex_count = 0;                          // one per clause
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v, sorted
};

/// Clauses are adjacent when one holds the negation of a literal of the other.
ConflictGraph clause_conflict_graph(const Cnf& cnf);

/// Structural checks: occurrence sides given for every (variable, clause)
/// pair, cycles are permutations, and the separability rule below.
void validate_embedding(const EmbeddedCnf& e);

/// Each clause lies on one side of the cycle, and for every variable the
/// positive occurrences are on one side and the negative ones on the other.
bool is_separable(const EmbeddedCnf& e);

SatOptimum min2sat_separable(const EmbeddedCnf& e);
SatOptimum min2sat_monotone(const Cnf& cnf);

/// Each clause a or b becomes (!a or w), (!b or !w) with a fresh w; a unit
/// clause a counts as a or a. min of the result = 2|C| - max of the input.
Cnf reduce_max2sat_to_min2sat(const Cnf& cnf);

/// Nine 2-clauses per 3-clause; exactly-one-true patterns satisfy 7 of them.
Cnf reduce_1in3_to_max2sat(const Cnf& cnf3);

/// Where to move an occurrence of the split variable y.
enum class SplitTarget { Z, T };

/// Adds variables z, t and N copies each of (y|z), (!y|!z), (z|t), (!z|!t),
/// forcing y = !z = t at a maximum. Occurrences of y in the listed clauses are
/// rewritten to !z (target Z, polarity flipped) or t. Requires N >= 2|C| + 1
/// for the original clause count.
Cnf split_variable_gadget(const Cnf& cnf, std::size_t y, std::size_t n_copies,
                          const std::map<std::size_t, SplitTarget>& moves = {});

/// The Kohli reduction with the embedding it induces: a clause of sides
/// (s_a, s_b) becomes two clauses, the first on s_a, the second on s_b.
EmbeddedCnf reduce_embedded_max2sat(const EmbeddedCnf& e);

/// Max-SAT for embeddings where each variable is separated and the two
/// connections of every clause arrive from different sides.
SatOptimum max2sat_separable_vc(const EmbeddedCnf& e);

}  // namespace secluded
