#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tpj/lp.hpp"
#include "tpj/multigraph.hpp"
#include "tpj/packing.hpp"
#include "tpj/paths.hpp"
#include "tpj/rational.hpp"

namespace tpj {

/// Size guards for the exponential enumerations.  The environment variable
/// TPJ_GUARD overrides both limits ("off" lifts them entirely).
struct Guards {
  int max_graph_vertices = 16;  // cut enumeration scans 2^|V| subsets
  int max_dimension = 6;        // vertex enumeration scans dim-subsets of rows
};

inline Guards active_guards() {
  Guards g;
  if (const char* s = std::getenv("TPJ_GUARD")) {
    std::string v = s;
    if (v == "off") {
      g.max_graph_vertices = 30;
      g.max_dimension = 30;
    } else {
      try {
        int n = std::stoi(v);
        g.max_graph_vertices = n;
        g.max_dimension = n;
      } catch (const std::exception&) {
        throw std::invalid_argument("TPJ_GUARD must be an integer or 'off'");
      }
    }
  }
  return g;
}

/// One inequality x(A) - x(B) <= bound with A, B disjoint sets of terminal
/// ranks encoded as bit masks.
struct Inequality {
  uint32_t a_mask = 0;
  uint32_t b_mask = 0;
  int bound = 0;

  bool operator==(const Inequality& o) const {
    return a_mask == o.a_mask && b_mask == o.b_mask && bound == o.bound;
  }
  bool operator<(const Inequality& o) const {
    if (a_mask != o.a_mask) return a_mask < o.a_mask;
    if (b_mask != o.b_mask) return b_mask < o.b_mask;
    return bound < o.bound;
  }
};

/// The irredundant description of the path polytope: per (A, B) key only the
/// smallest cut bound survives, rows with empty A are implied by x >= 0 and
/// dropped, and rows dominated by a stronger row (larger A, smaller B, bound
/// no bigger) are dropped as well.
struct ReducedInequalitySystem {
  int num_terminals = 0;
  std::vector<Inequality> rows;  // sorted by (a_mask, b_mask)
};

namespace detail {

inline void reduce_rows(ReducedInequalitySystem& sys) {
  std::map<std::pair<uint32_t, uint32_t>, int> best;
  for (const auto& r : sys.rows) {
    if (r.a_mask == 0) continue;  // x(0) - x(B) <= d is implied by x >= 0
    auto key = std::make_pair(r.a_mask, r.b_mask);
    auto it = best.find(key);
    if (it == best.end() || r.bound < it->second) best[key] = r.bound;
  }
  std::vector<Inequality> keyed;
  for (const auto& [key, bound] : best) keyed.push_back(Inequality{key.first, key.second, bound});
  std::vector<Inequality> kept;
  for (const auto& r : keyed) {
    bool dominated = false;
    for (const auto& d : keyed) {
      if (d == r) continue;
      // x(A) - x(B) <= x(A') - x(B') <= b' <= b whenever A <= A', B >= B'.
      if ((r.a_mask & d.a_mask) == r.a_mask && (d.b_mask & r.b_mask) == d.b_mask &&
          d.bound <= r.bound) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end());
  sys.rows = std::move(kept);
}

}  // namespace detail

/// Builds the reduced inequality description of the polytope over the
/// terminals of g for partition tau: for every vertex subset X and every
/// class C of tau, the cut inequality x(X cap C) - x(X cap (T \ C)) <= d(X).
inline ReducedInequalitySystem reduced_inequalities(const Multigraph& g,
                                                    const TerminalPartition& tau) {
  Guards guard = active_guards();
  if (g.num_vertices() > guard.max_graph_vertices)
    throw std::invalid_argument("instance has " + std::to_string(g.num_vertices()) +
                                " vertices; cut enumeration is guarded at " +
                                std::to_string(guard.max_graph_vertices) +
                                " (set TPJ_GUARD to raise)");
  const int nv = g.num_vertices();
  const int nt = g.num_terminals();
  ReducedInequalitySystem sys;
  sys.num_terminals = nt;
  std::vector<uint32_t> class_mask(tau.num_classes(), 0);
  for (int r = 0; r < nt; ++r) class_mask[tau.class_of[r]] |= uint32_t{1} << r;
  for (uint32_t x = 0; x < (uint32_t{1} << nv); ++x) {
    int d = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& [a, b] = g.edges[e];
      if (((x >> a) & 1) != ((x >> b) & 1)) ++d;
    }
    uint32_t t_in_x = 0;
    for (int r = 0; r < nt; ++r)
      if ((x >> g.terminals[r]) & 1) t_in_x |= uint32_t{1} << r;
    for (int c = 0; c < tau.num_classes(); ++c) {
      Inequality row;
      row.a_mask = t_in_x & class_mask[c];
      row.b_mask = t_in_x & ~class_mask[c];
      row.bound = d;
      sys.rows.push_back(row);
    }
  }
  detail::reduce_rows(sys);
  return sys;
}

/// Bound of the surviving row with exactly this (A, B) key, if any.
inline std::optional<int> reduced_bound(const ReducedInequalitySystem& sys, uint32_t a_mask,
                                        uint32_t b_mask) {
  for (const auto& r : sys.rows)
    if (r.a_mask == a_mask && r.b_mask == b_mask) return r.bound;
  return std::nullopt;
}

inline Rational row_value(const Inequality& row, const RationalVector& x) {
  Rational v = 0;
  for (int t = 0; t < static_cast<int>(x.size()); ++t) {
    if ((row.a_mask >> t) & 1) v += x[t];
    if ((row.b_mask >> t) & 1) v -= x[t];
  }
  return v;
}

inline bool polytope_member(const ReducedInequalitySystem& sys, const RationalVector& x) {
  if (static_cast<int>(x.size()) != sys.num_terminals)
    throw std::invalid_argument("polytope_member: point has wrong dimension");
  for (const auto& c : x)
    if (c < 0) return false;
  for (const auto& r : sys.rows)
    if (row_value(r, x) > r.bound) return false;
  return true;
}

inline bool polytope_member(const ReducedInequalitySystem& sys, const DemandVector& m) {
  RationalVector x(m.begin(), m.end());
  return polytope_member(sys, x);
}

/// Per-coordinate upper bounds read off the rows with A = {t}, B empty (or a
/// superset-A refinement of one).  Their existence certifies boundedness: the
/// polytope is contained in the box [0, ub].  Throws when the certificate is
/// missing, since every system produced by reduced_inequalities has it.
inline std::vector<int> coordinate_upper_bounds(const ReducedInequalitySystem& sys) {
  std::vector<int> ub(sys.num_terminals, -1);
  for (int t = 0; t < sys.num_terminals; ++t)
    for (const auto& r : sys.rows) {
      if (r.b_mask != 0 || !((r.a_mask >> t) & 1)) continue;
      if (ub[t] < 0 || r.bound < ub[t]) ub[t] = r.bound;
    }
  for (int t = 0; t < sys.num_terminals; ++t)
    if (ub[t] < 0)
      throw std::logic_error("no bounding row for coordinate " + std::to_string(t) +
                             ": polytope not certified bounded");
  return ub;
}

namespace detail {

/// Depth-first enumeration of dim-subsets of constraints with incremental
/// independence pruning: a new row is reduced against the picked rows' pivots
/// and skipped when it vanishes.
struct VertexEnumerator {
  int dim;
  const std::vector<RationalVector>& normals;
  const std::vector<Rational>& rhs;
  const ReducedInequalitySystem& sys;
  std::vector<RationalVector> reduced;  // echelon forms of picked rows
  std::vector<int> pivot;               // pivot column per picked row
  std::vector<int> picked;
  std::set<RationalVector> found;

  VertexEnumerator(int dim_, const std::vector<RationalVector>& normals_,
                   const std::vector<Rational>& rhs_, const ReducedInequalitySystem& sys_)
      : dim(dim_), normals(normals_), rhs(rhs_), sys(sys_) {}

  void run(int next) {
    if (static_cast<int>(picked.size()) == dim) {
      leaf();
      return;
    }
    int need = dim - static_cast<int>(picked.size());
    for (int i = next; i + need <= static_cast<int>(normals.size()); ++i) {
      RationalVector row = normals[i];
      for (size_t k = 0; k < reduced.size(); ++k) {
        if (row[pivot[k]] == 0) continue;
        const Rational f = row[pivot[k]] / reduced[k][pivot[k]];
        for (int c = 0; c < dim; ++c) row[c] -= f * reduced[k][c];
      }
      int p = -1;
      for (int c = 0; c < dim; ++c)
        if (row[c] != 0) {
          p = c;
          break;
        }
      if (p < 0) continue;  // dependent on the picked rows
      reduced.push_back(std::move(row));
      pivot.push_back(p);
      picked.push_back(i);
      run(i + 1);
      picked.pop_back();
      pivot.pop_back();
      reduced.pop_back();
    }
  }

  void leaf() {
    std::vector<RationalVector> a;
    RationalVector b;
    for (int i : picked) {
      a.push_back(normals[i]);
      b.push_back(rhs[i]);
    }
    auto x = solve_linear_system(std::move(a), std::move(b));
    if (!x) return;  // cannot happen: picked rows are independent
    for (const auto& c : *x)
      if (c < 0) return;
    for (const auto& r : sys.rows)
      if (row_value(r, *x) > r.bound) return;
    found.insert(*x);
  }
};

}  // namespace detail

/// All vertices of the polytope, exactly, sorted lexicographically.  A vertex
/// is the unique solution of some dim independent tight constraints (rows or
/// nonnegativity) that satisfies the whole system; the polytope is certified
/// bounded first, so the vertex set determines it completely.
inline std::vector<RationalVector> enumerate_vertices(const ReducedInequalitySystem& sys) {
  Guards guard = active_guards();
  const int dim = sys.num_terminals;
  if (dim > guard.max_dimension)
    throw std::invalid_argument("polytope dimension " + std::to_string(dim) +
                                " exceeds the vertex enumeration guard " +
                                std::to_string(guard.max_dimension) +
                                " (set TPJ_GUARD to raise)");
  coordinate_upper_bounds(sys);  // throws when boundedness is not certified
  std::vector<RationalVector> normals;
  std::vector<Rational> rhs;
  for (const auto& r : sys.rows) {
    RationalVector n(dim, 0);
    for (int t = 0; t < dim; ++t) {
      if ((r.a_mask >> t) & 1) n[t] = 1;
      if ((r.b_mask >> t) & 1) n[t] = -1;
    }
    normals.push_back(std::move(n));
    rhs.push_back(r.bound);
  }
  for (int t = 0; t < dim; ++t) {
    RationalVector n(dim, 0);
    n[t] = -1;
    normals.push_back(std::move(n));
    rhs.push_back(0);
  }
  detail::VertexEnumerator en(dim, normals, rhs, sys);
  en.run(0);
  return {en.found.begin(), en.found.end()};
}

/// All integer points of the polytope, found by scanning the bounding box.
inline std::vector<DemandVector> integer_points(const ReducedInequalitySystem& sys) {
  auto ub = coordinate_upper_bounds(sys);
  const int nt = sys.num_terminals;
  std::vector<DemandVector> out;
  DemandVector m(nt, 0);
  while (true) {
    if (polytope_member(sys, m)) out.push_back(m);
    int i = nt - 1;
    while (i >= 0 && m[i] == ub[i]) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  return out;
}

/// The integer points packaged as a finite set over the instance's terminal
/// names, ready for the two-step axiom checker.
inline FiniteJumpSystem integer_point_system(const Multigraph& g,
                                             const ReducedInequalitySystem& sys) {
  std::vector<std::string> ground;
  for (int r = 0; r < g.num_terminals(); ++r) ground.push_back(g.names[g.terminals[r]]);
  return make_system(std::move(ground), integer_points(sys));
}

/// Function on disjoint pairs of terminal subsets, e.g. the support function
/// (A, B) -> max { x(A) - x(B) : x in Q }.
struct PairFunction {
  int num_terminals = 0;
  std::map<std::pair<uint32_t, uint32_t>, Rational> values;

  const Rational& at(uint32_t a_mask, uint32_t b_mask) const {
    auto it = values.find({a_mask, b_mask});
    if (it == values.end())
      throw std::invalid_argument("pair function undefined on the requested pair");
    return it->second;
  }
};

/// Support function of the polytope with the given vertex set, evaluated on
/// every disjoint pair of terminal subsets (3^nt entries).
inline PairFunction support_pair_function(const std::vector<RationalVector>& vertices, int nt) {
  if (vertices.empty()) throw std::invalid_argument("support of an empty polytope");
  PairFunction f;
  f.num_terminals = nt;
  long long codes = 1;
  for (int i = 0; i < nt; ++i) codes *= 3;
  for (long long code = 0; code < codes; ++code) {
    uint32_t a = 0, b = 0;
    long long c = code;
    for (int t = 0; t < nt; ++t, c /= 3) {
      if (c % 3 == 1) a |= uint32_t{1} << t;
      if (c % 3 == 2) b |= uint32_t{1} << t;
    }
    Inequality dir{a, b, 0};
    Rational best = row_value(dir, vertices.front());
    for (const auto& v : vertices) best = std::max(best, row_value(dir, v));
    f.values[{a, b}] = best;
  }
  return f;
}

struct BisubmodularViolation {
  uint32_t a1 = 0, b1 = 0, a2 = 0, b2 = 0;
  Rational lhs, rhs;
};

struct BisubmodularVerdict {
  std::optional<BisubmodularViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Checks f(A,B) + f(A',B') >= f(A cap A', B cap B')
///                           + f((A u A') \ (B u B'), (B u B') \ (A u A'))
/// over every pair of pairs in the function's domain.
inline BisubmodularVerdict check_bisubmodular(const PairFunction& f) {
  for (const auto& [k1, v1] : f.values)
    for (const auto& [k2, v2] : f.values) {
      uint32_t au = k1.first | k2.first, bu = k1.second | k2.second;
      uint32_t ra = k1.first & k2.first, rb = k1.second & k2.second;
      uint32_t ua = au & ~bu, ub = bu & ~au;
      Rational lhs = v1 + v2;
      Rational rhs = f.at(ra, rb) + f.at(ua, ub);
      if (lhs < rhs)
        return BisubmodularVerdict{
            BisubmodularViolation{k1.first, k1.second, k2.first, k2.second, lhs, rhs}};
    }
  return {};
}

/// A nonnegative path combination witnessing relaxed feasibility: paths with
/// their fractional multiplicities.
using FractionalPacking = std::vector<std::pair<TPath, Rational>>;

/// Decides whether x can be written as a fractional packing of linking paths
/// (endpoints in different classes, interiors unrestricted) with every edge
/// loaded at most 1 and the paths at each terminal summing to x(t) exactly.
/// Solved by exact phase-1 simplex, so the verdict carries no rounding.
inline std::optional<FractionalPacking> relaxed_feasible(const Multigraph& g,
                                                         const TerminalPartition& tau,
                                                         const RationalVector& x) {
  if (static_cast<int>(x.size()) != g.num_terminals())
    throw std::invalid_argument("relaxed_feasible: point has wrong dimension");
  for (const auto& c : x)
    if (c < 0) return std::nullopt;
  auto paths = enumerate_linking_paths(g, &tau);
  const int np = static_cast<int>(paths.size());
  std::vector<LpRow> rows;
  for (int e = 0; e < g.num_edges(); ++e) {
    LpRow r;
    r.coeffs.assign(np, 0);
    for (int i = 0; i < np; ++i)
      if (std::find(paths[i].edges.begin(), paths[i].edges.end(), e) != paths[i].edges.end())
        r.coeffs[i] = 1;
    r.rhs = 1;
    rows.push_back(std::move(r));
  }
  for (int t = 0; t < g.num_terminals(); ++t) {
    LpRow r;
    r.coeffs.assign(np, 0);
    for (int i = 0; i < np; ++i) {
      if (g.terminal_rank_of[paths[i].front()] == t) r.coeffs[i] += 1;
      if (g.terminal_rank_of[paths[i].back()] == t) r.coeffs[i] += 1;
    }
    r.rhs = x[t];
    r.equality = true;
    rows.push_back(std::move(r));
  }
  auto lambda = lp_feasible(np, std::move(rows));
  if (!lambda) return std::nullopt;
  FractionalPacking out;
  for (int i = 0; i < np; ++i)
    if ((*lambda)[i] != 0) out.emplace_back(paths[i], (*lambda)[i]);
  return out;
}

struct ParityReport {
  bool vacuous = false;  // some non-terminal has odd degree: no vector to test
  int points_checked = 0;
  std::optional<DemandVector> counterexample;
  bool ok() const { return !counterexample.has_value(); }
};

/// For every integer point m of the polytope whose parity matches the degrees
/// (m(t) + deg(t) even at every terminal, all non-terminal degrees even),
/// verifies that m is realized exactly by an edge-disjoint collection of
/// linking paths joining different classes.
inline ParityReport parity_feasibility_check(const Multigraph& g, const TerminalPartition& tau) {
  ParityReport rep;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!g.is_terminal(v) && g.degree(v) % 2 != 0) {
      rep.vacuous = true;  // the degree-parity hypothesis excludes every m
      return rep;
    }
  auto sys = reduced_inequalities(g, tau);
  auto paths = enumerate_linking_paths(g, &tau);
  for (const auto& m : integer_points(sys)) {
    bool parity_ok = true;
    for (int t = 0; t < g.num_terminals(); ++t)
      if ((m[t] + g.degree(g.terminals[t])) % 2 != 0) parity_ok = false;
    if (!parity_ok) continue;
    ++rep.points_checked;
    if (!realize_over_paths(g, paths, Mode::edge, m)) {
      rep.counterexample = m;
      return rep;
    }
  }
  return rep;
}

/// Linking paths whose endpoints are separated by both partitions at once.
inline std::vector<TPath> linking_paths_joined_by_both(const Multigraph& g,
                                                       const TerminalPartition& tau1,
                                                       const TerminalPartition& tau2) {
  std::vector<TPath> out;
  for (auto& p : enumerate_linking_paths(g)) {
    int ra = g.terminal_rank_of[p.front()], rb = g.terminal_rank_of[p.back()];
    if (tau1.separates(ra, rb) && tau2.separates(ra, rb)) out.push_back(std::move(p));
  }
  return out;
}

struct IntersectionReport {
  ReducedInequalitySystem merged;
  std::vector<RationalVector> vertices;
  bool all_integral = false;
  Rational max_sum;
  std::optional<DemandVector> attainer;  // doubly-joined realizable, sum = max_sum
  std::vector<bool> vertex_attainable;   // per vertex: integral and realizable
                                         // (reported, not asserted)
  bool theorem_ok() const { return all_integral && attainer.has_value(); }
};

/// Intersection of the two polytopes on a graph with all degrees even: builds
/// the merged reduced system, enumerates its vertices, and searches for an
/// integer point of maximum coordinate sum realized by edge-disjoint paths
/// joining different classes of both partitions simultaneously.  The per
/// vertex attainability flags cover the stronger conjectured statement and
/// are reported only.
inline IntersectionReport intersect_and_check(const Multigraph& g, const TerminalPartition& tau1,
                                              const TerminalPartition& tau2) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) % 2 != 0)
      throw std::invalid_argument("intersection theorem requires all degrees even; vertex '" +
                                  g.names[v] + "' has odd degree");
  IntersectionReport rep;
  auto s1 = reduced_inequalities(g, tau1);
  auto s2 = reduced_inequalities(g, tau2);
  rep.merged.num_terminals = g.num_terminals();
  rep.merged.rows = s1.rows;
  rep.merged.rows.insert(rep.merged.rows.end(), s2.rows.begin(), s2.rows.end());
  detail::reduce_rows(rep.merged);
  rep.vertices = enumerate_vertices(rep.merged);
  if (rep.vertices.empty()) throw std::logic_error("intersection polytope has no vertices");
  rep.all_integral = true;
  for (const auto& v : rep.vertices)
    if (!is_integral(v)) rep.all_integral = false;
  rep.max_sum = 0;
  for (const auto& v : rep.vertices) {
    Rational s = std::accumulate(v.begin(), v.end(), Rational(0));
    rep.max_sum = std::max(rep.max_sum, s);
  }
  auto paths = linking_paths_joined_by_both(g, tau1, tau2);
  for (const auto& m : integer_points(rep.merged)) {
    Rational s = 0;
    for (int c : m) s += c;
    if (s != rep.max_sum) continue;
    if (realize_over_paths(g, paths, Mode::edge, m)) {
      rep.attainer = m;
      break;
    }
  }
  for (const auto& v : rep.vertices) {
    bool att = false;
    if (is_integral(v)) {
      DemandVector m;
      for (const auto& c : v) m.push_back(static_cast<int>(numerator(c)));
      att = realize_over_paths(g, paths, Mode::edge, m).has_value();
    }
    rep.vertex_attainable.push_back(att);
  }
  return rep;
}

}  // namespace tpj
