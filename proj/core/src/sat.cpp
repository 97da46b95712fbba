#include "secluded/sat.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

namespace secluded {

bool Cnf::is_2cnf() const {
  for (const Clause& c : clauses) {
    if (c.empty() || c.size() > 2) return false;
    for (const Literal& l : c)
      if (l.var >= num_vars) return false;
  }
  return true;
}

std::size_t satisfied_count(const Cnf& cnf, const Assignment& a) {
  std::size_t k = 0;
  for (const Clause& c : cnf.clauses)
    k += std::any_of(c.begin(), c.end(), [&](const Literal& l) { return a.at(l.var) == l.positive; }) ? 1 : 0;
  return k;
}

SatOptimum brute_force_opt(const Cnf& cnf, Objective objective) {
  const std::size_t n = cnf.num_vars;
  if (n > 25) throw SatError("brute force limited to 25 variables");
  // Variable i is bit n-1-i, so counting up visits assignments in
  // lexicographic order and the first optimum found is the smallest.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const Clause& c : cnf.clauses) {
    std::uint32_t pos = 0, neg = 0;
    for (const Literal& l : c) {
      if (l.var >= n) throw SatError("literal variable out of range");
      (l.positive ? pos : neg) |= std::uint32_t{1} << (n - 1 - l.var);
    }
    masks.emplace_back(pos, neg);
  }
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  std::size_t best = 0;
  std::uint32_t arg = 0;
  bool have = false;
  for (std::uint64_t m = 0; m <= full; ++m) {
    const auto x = static_cast<std::uint32_t>(m);
    std::size_t k = 0;
    for (const auto& [pos, neg] : masks) k += ((x & pos) | (~x & full & neg)) ? 1 : 0;
    if (!have || (objective == Objective::Min ? k < best : k > best)) {
      best = k;
      arg = x;
      have = true;
    }
  }
  SatOptimum r;
  r.value = best;
  r.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.assignment[i] = (arg >> (n - 1 - i)) & 1;
  return r;
}

ConflictGraph clause_conflict_graph(const Cnf& cnf) {
  ConflictGraph g;
  g.vertex_count = cnf.clauses.size();
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i)
    for (std::size_t j = i + 1; j < cnf.clauses.size(); ++j) {
      bool hit = false;
      for (const Literal& a : cnf.clauses[i])
        for (const Literal& b : cnf.clauses[j]) hit = hit || a == !b;
      if (hit) g.edges.emplace_back(i, j);
    }
  return g;
}

namespace {

void require_2cnf(const Cnf& cnf) {
  for (const Clause& c : cnf.clauses) {
    if (c.empty()) throw SatError("empty clause");
    if (c.size() > 2) throw SatError("clause with more than two literals");
    for (const Literal& l : c)
      if (l.var >= cnf.num_vars) throw SatError("literal variable out of range");
  }
}

void require_permutation(const std::vector<std::size_t>& p, std::size_t n, const char* what) {
  std::vector<char> seen(n, 0);
  if (p.size() != n) throw SatError(std::string(what) + " has wrong length");
  for (std::size_t v : p) {
    if (v >= n || seen[v]) throw SatError(std::string(what) + " is not a permutation");
    seen[v] = 1;
  }
}

Side occurrence_side(const EmbeddedCnf& e, std::size_t v, std::size_t c) {
  auto it = e.side.find({v, c});
  if (it == e.side.end()) throw SatError("missing side for a clause occurrence");
  return it->second;
}

// Minimum vertex cover of the conflict graph, bipartite by `left`; clauses
// outside the cover are falsified together.
SatOptimum min_by_cover(const Cnf& cnf, const std::vector<char>& left) {
  const ConflictGraph h = clause_conflict_graph(cnf);
  const std::size_t m = h.vertex_count;
  for (const auto& [u, v] : h.edges)
    if (left[u] == left[v]) throw std::logic_error("conflict graph is not bipartite");

  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph g(m);
  for (const auto& [u, v] : h.edges) boost::add_edge(u, v, g);
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(m);
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  const auto none = boost::graph_traits<Graph>::null_vertex();

  // Koenig: Z = left vertices reachable from unmatched left vertices by
  // alternating paths; cover = (L \ Z) + (R & Z).
  std::vector<std::vector<std::size_t>> adj(m);
  for (const auto& [u, v] : h.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> in_z(m, 0);
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < m; ++u)
    if (left[u] && mate[u] == none) {
      in_z[u] = 1;
      stack.push_back(u);
    }
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (in_z[v] || mate[u] == v) continue;
      in_z[v] = 1;
      const auto w = mate[v];
      if (w != none && !in_z[w]) {
        in_z[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::size_t cover = 0, matched = 0;
  std::vector<char> in_cover(m, 0);
  for (std::size_t u = 0; u < m; ++u) {
    in_cover[u] = left[u] ? !in_z[u] : in_z[u];
    cover += in_cover[u];
    if (mate[u] != none) ++matched;
  }
  if (2 * cover != matched) throw std::logic_error("cover size differs from matching size");

  SatOptimum r;
  r.assignment.assign(cnf.num_vars, false);
  for (std::size_t c = 0; c < m; ++c)
    if (!in_cover[c])
      for (const Literal& l : cnf.clauses[c]) r.assignment[l.var] = !l.positive;
  r.value = satisfied_count(cnf, r.assignment);
  if (r.value != cover) throw std::logic_error("witness does not realize the cover size");
  return r;
}

void require_vc_separated(const EmbeddedCnf& e) {
  validate_embedding(e);
  const Cnf& cnf = e.cnf;
  std::vector<std::optional<Side>> pos(cnf.num_vars), neg(cnf.num_vars);
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const Clause& cl = cnf.clauses[c];
    if (cl.size() != 2 || cl[0].var == cl[1].var)
      throw SatError("each clause needs connections from two distinct variables");
    if (occurrence_side(e, cl[0].var, c) == occurrence_side(e, cl[1].var, c))
      throw SatError("clause connections arrive from the same side");
    for (const Literal& l : cl) {
      auto& slot = l.positive ? pos[l.var] : neg[l.var];
      const Side s = occurrence_side(e, l.var, c);
      if (slot && *slot != s) throw SatError("variable is not separated by the cycle");
      slot = s;
    }
  }
  for (std::size_t v = 0; v < cnf.num_vars; ++v)
    if (pos[v] && neg[v] && *pos[v] == *neg[v]) throw SatError("variable is not separated by the cycle");
}

}  // namespace

void validate_embedding(const EmbeddedCnf& e) {
  require_2cnf(e.cnf);
  require_permutation(e.v_cycle, e.cnf.num_vars, "v-cycle");
  if (e.vc_cycle) require_permutation(*e.vc_cycle, e.cnf.num_vars + e.cnf.clauses.size(), "vc-cycle");
  for (std::size_t c = 0; c < e.cnf.clauses.size(); ++c)
    for (const Literal& l : e.cnf.clauses[c]) occurrence_side(e, l.var, c);
  for (const auto& [key, s] : e.side) {
    (void)s;
    if (key.first >= e.cnf.num_vars || key.second >= e.cnf.clauses.size())
      throw SatError("side entry out of range");
    const Clause& cl = e.cnf.clauses[key.second];
    if (std::none_of(cl.begin(), cl.end(), [&](const Literal& l) { return l.var == key.first; }))
      throw SatError("side entry for a variable not in the clause");
  }
}

bool is_separable(const EmbeddedCnf& e) {
  validate_embedding(e);
  const Cnf& cnf = e.cnf;
  std::vector<std::optional<Side>> pos(cnf.num_vars), neg(cnf.num_vars);
  for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
    const Side cs = occurrence_side(e, cnf.clauses[c][0].var, c);
    for (const Literal& l : cnf.clauses[c]) {
      if (occurrence_side(e, l.var, c) != cs) return false;
      auto& slot = l.positive ? pos[l.var] : neg[l.var];
      if (slot && *slot != cs) return false;
      slot = cs;
    }
  }
  for (std::size_t v = 0; v < cnf.num_vars; ++v)
    if (pos[v] && neg[v] && *pos[v] == *neg[v]) return false;
  return true;
}

SatOptimum min2sat_separable(const EmbeddedCnf& e) {
  if (!is_separable(e)) throw SatError("instance is not separable");
  std::vector<char> left(e.cnf.clauses.size());
  for (std::size_t c = 0; c < left.size(); ++c)
    left[c] = occurrence_side(e, e.cnf.clauses[c][0].var, c) == Side::Left;
  return min_by_cover(e.cnf, left);
}

SatOptimum min2sat_monotone(const Cnf& cnf) {
  require_2cnf(cnf);
  std::vector<char> left(cnf.clauses.size());
  for (std::size_t c = 0; c < left.size(); ++c) {
    const Clause& cl = cnf.clauses[c];
    const bool all_pos = std::all_of(cl.begin(), cl.end(), [](const Literal& l) { return l.positive; });
    const bool all_neg = std::none_of(cl.begin(), cl.end(), [](const Literal& l) { return l.positive; });
    if (!all_pos && !all_neg) throw SatError("instance is not monotone");
    left[c] = all_pos;
  }
  return min_by_cover(cnf, left);
}

Cnf reduce_max2sat_to_min2sat(const Cnf& cnf) {
  require_2cnf(cnf);
  Cnf out;
  out.num_vars = cnf.num_vars;
  for (const Clause& c : cnf.clauses) {
    const Literal a = c[0];
    const Literal b = c.size() == 2 ? c[1] : c[0];
    const Literal w{out.add_var(), true};
    out.clauses.push_back({!a, w});
    out.clauses.push_back({!b, !w});
  }
  return out;
}

Cnf reduce_1in3_to_max2sat(const Cnf& cnf3) {
  Cnf out;
  out.num_vars = cnf3.num_vars;
  for (const Clause& c : cnf3.clauses) {
    if (c.size() != 3) throw SatError("one-in-three clauses need exactly three literals");
    for (const Literal& l : c)
      if (l.var >= cnf3.num_vars) throw SatError("literal variable out of range");
    const Literal a = c[0], b = c[1], d = c[2];
    for (const Clause& k : std::vector<Clause>{{!a}, {!b}, {!d}, {!a, !b}, {!b, !d}, {!a, !d}, {a, b}, {b, d}, {a, d}})
      out.clauses.push_back(k);
  }
  return out;
}

Cnf split_variable_gadget(const Cnf& cnf, std::size_t y, std::size_t n_copies,
                          const std::map<std::size_t, SplitTarget>& moves) {
  require_2cnf(cnf);
  if (y >= cnf.num_vars) throw SatError("split variable out of range");
  if (n_copies < 2 * cnf.clauses.size() + 1) throw SatError("too few parallel copies for the split gadget");
  Cnf out = cnf;
  const std::size_t z = out.add_var();
  const std::size_t t = out.add_var();
  for (const auto& [c, target] : moves) {
    if (c >= out.clauses.size()) throw SatError("moved clause out of range");
    bool found = false;
    for (Literal& l : out.clauses[c]) {
      if (l.var != y) continue;
      found = true;
      l = target == SplitTarget::Z ? Literal{z, !l.positive} : Literal{t, l.positive};
    }
    if (!found) throw SatError("moved clause does not contain the split variable");
  }
  const Literal ly{y, true}, lz{z, true}, lt{t, true};
  for (std::size_t k = 0; k < n_copies; ++k) {
    out.clauses.push_back({ly, lz});
    out.clauses.push_back({!ly, !lz});
    out.clauses.push_back({lz, lt});
    out.clauses.push_back({!lz, !lt});
  }
  return out;
}

EmbeddedCnf reduce_embedded_max2sat(const EmbeddedCnf& e) {
  require_vc_separated(e);
  const std::size_t n = e.cnf.num_vars;
  EmbeddedCnf r;
  r.cnf = reduce_max2sat_to_min2sat(e.cnf);
  for (std::size_t c = 0; c < e.cnf.clauses.size(); ++c) {
    const std::size_t w = n + c;
    const Clause& cl = e.cnf.clauses[c];
    const Side sa = occurrence_side(e, cl[0].var, c);
    const Side sb = occurrence_side(e, cl[1].var, c);
    r.side[{cl[0].var, 2 * c}] = sa;
    r.side[{w, 2 * c}] = sa;
    r.side[{cl[1].var, 2 * c + 1}] = sb;
    r.side[{w, 2 * c + 1}] = sb;
  }
  // The old cycle through variables and clauses becomes a cycle through the
  // variables, each clause replaced by its w.
  if (e.vc_cycle) {
    for (std::size_t x : *e.vc_cycle) r.v_cycle.push_back(x);
  } else {
    r.v_cycle = e.v_cycle;
    for (std::size_t c = 0; c < e.cnf.clauses.size(); ++c) r.v_cycle.push_back(n + c);
  }
  return r;
}

SatOptimum max2sat_separable_vc(const EmbeddedCnf& e) {
  const EmbeddedCnf reduced = reduce_embedded_max2sat(e);
  const SatOptimum mn = min2sat_separable(reduced);
  SatOptimum r;
  r.value = 2 * e.cnf.clauses.size() - mn.value;
  r.assignment.assign(mn.assignment.begin(), mn.assignment.begin() + static_cast<long>(e.cnf.num_vars));
  if (satisfied_count(e.cnf, r.assignment) != r.value) throw std::logic_error("max witness mismatch");
  return r;
}

}  // namespace secluded
