#pragma once

#include <climits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tpj/exchange.hpp"
#include "tpj/families.hpp"
#include "tpj/greedy.hpp"
#include "tpj/jump.hpp"
#include "tpj/packing.hpp"
#include "tpj/paths.hpp"
#include "tpj/polytope.hpp"
#include "tpj/rational.hpp"

namespace tpj {

struct CriterionResult {
  std::string name;
  bool ok = true;
  long long checks = 0;               // atomic verifications performed
  std::vector<std::string> findings;  // non-fatal observations worth reporting
  std::string detail;                 // first failure description
};

inline constexpr uint32_t kPointSampleSeed = 910902;  // rational sample points
inline constexpr int kPointSamplesPerCase = 100;
inline constexpr int kWeightTrialsPerInstance = 50;

namespace detail {

inline void fail(CriterionResult& r, const std::string& msg) {
  if (r.ok) {
    r.ok = false;
    r.detail = msg;
  }
}

inline std::string vec_str(const DemandVector& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

inline std::string vec_str(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rational_to_string(v[i]);
  os << ')';
  return os.str();
}

/// The axiom family (exhaustive small + 200 seeded randoms) with the
/// edge-mode feasible sets computed once and shared across criteria.
inline const std::vector<NamedInstance>& axiom_family() {
  static const std::vector<NamedInstance> fam = [] {
    auto f = exhaustive_small_family();
    for (auto& ni : random_instances(kSmallRandomSeed, 200)) f.push_back(std::move(ni));
    return f;
  }();
  return fam;
}

inline const std::vector<FiniteJumpSystem>& axiom_family_edge_systems() {
  static const std::vector<FiniteJumpSystem> sys = [] {
    std::vector<FiniteJumpSystem> out;
    for (const auto& ni : axiom_family()) out.push_back(enumerate_feasible(ni.graph, Mode::edge));
    return out;
  }();
  return sys;
}

struct PolytopeCase {
  std::string name;
  Multigraph graph;
  TerminalPartition tau;
  ReducedInequalitySystem sys;
  std::vector<RationalVector> vertices;
};

/// Polyhedral family with reduced systems and vertex sets computed once.
inline const std::vector<PolytopeCase>& polytope_cases() {
  static const std::vector<PolytopeCase> cases = [] {
    std::vector<PolytopeCase> out;
    for (const auto& ni : polytope_instances())
      for (const auto& pc : polytope_partitions(ni.graph)) {
        PolytopeCase c;
        c.name = ni.name + "/" + pc.name;
        c.graph = ni.graph;
        c.tau = pc.tau;
        c.sys = reduced_inequalities(c.graph, c.tau);
        c.vertices = enumerate_vertices(c.sys);
        out.push_back(std::move(c));
      }
    return out;
  }();
  return cases;
}

}  // namespace detail

// ---- 1 & 2: the packing sets satisfy the two-step axiom ---------------------

inline CriterionResult criterion_edge_axiom() {
  CriterionResult res{"edge packing two-step axiom"};
  const auto& fam = detail::axiom_family();
  const auto& sys = detail::axiom_family_edge_systems();
  for (size_t i = 0; i < fam.size(); ++i) {
    auto v = check_two_step_axiom(sys[i]);
    ++res.checks;
    if (!v.ok()) {
      detail::fail(res, fam[i].name + ": axiom fails at x=" + detail::vec_str(v.counterexample->x) +
                            " y=" + detail::vec_str(v.counterexample->y) +
                            " x'=" + detail::vec_str(v.counterexample->first));
      break;
    }
  }
  return res;
}

inline CriterionResult criterion_vertex_axiom() {
  CriterionResult res{"vertex packing two-step axiom"};
  for (const auto& ni : detail::axiom_family()) {
    auto j = enumerate_feasible(ni.graph, Mode::vertex);
    auto v = check_two_step_axiom(j);
    ++res.checks;
    if (!v.ok()) {
      detail::fail(res, ni.name + ": axiom fails at x=" + detail::vec_str(v.counterexample->x) +
                            " y=" + detail::vec_str(v.counterexample->y) +
                            " x'=" + detail::vec_str(v.counterexample->first));
      break;
    }
  }
  return res;
}

// ---- 3: constructive exchange -----------------------------------------------

inline CriterionResult criterion_exchange() {
  CriterionResult res{"constructive exchange soundness"};
  std::vector<NamedInstance> fam = {{"star", star()}, {"triangle", triangle()}};
  for (auto& ni : random_instances(kExchangeRandomSeed, 50)) fam.push_back(std::move(ni));
  for (const auto& ni : fam) {
    const Multigraph& g = ni.graph;
    auto j = enumerate_feasible(g, Mode::edge);
    std::vector<PathSystem> realized;
    for (const auto& m : j.vectors) {
      auto w = realize(g, Mode::edge, m);
      if (!w) {
        detail::fail(res, ni.name + ": feasible vector " + detail::vec_str(m) +
                              " not realizable");
        return res;
      }
      realized.push_back(std::move(*w));
    }
    long long pair_index = 0;
    for (size_t i = 0; i < j.vectors.size() && res.ok; ++i)
      for (size_t k = 0; k < j.vectors.size() && res.ok; ++k) {
        const auto& m1 = j.vectors[i];
        const auto& m2 = j.vectors[k];
        ++pair_index;
        for (const auto& sigma : steps_toward(m1, m2)) {
          try {
            auto r = exchange_step_edge(g, realized[i], realized[k], sigma);
            ++res.checks;
            int prev = INT_MAX;
            for (const auto& t : r.trace) {
              if (t.parameter >= prev) {
                detail::fail(res, ni.name + ": trace parameter not strictly decreasing for m1=" +
                                      detail::vec_str(m1) + " m2=" + detail::vec_str(m2));
                break;
              }
              prev = t.parameter;
            }
            if (r.first_step_feasible() && !j.contains(apply(sigma, m1))) {
              detail::fail(res, ni.name + ": single-step witness for a vector outside the set");
              break;
            }
            // Differential against the search-based oracle (sampled on the
            // random instances, full on star and triangle).
            bool run_generic =
                ni.name == "star" || ni.name == "triangle" || pair_index % 10 == 0;
            if (run_generic) {
              auto r2 = exchange_step_generic(g, Mode::edge, m1, m2, sigma);
              ++res.checks;
              if (r.first_step_feasible() && !r2.first_step_feasible()) {
                detail::fail(res, ni.name + ": constructive realizes the first step but the " +
                                      "oracle does not, m1=" + detail::vec_str(m1) +
                                      " m2=" + detail::vec_str(m2));
                break;
              }
            }
          } catch (const theorem_violation& tv) {
            detail::fail(res, ni.name + ": " + tv.what() + " [" + tv.dump + "]");
            break;
          }
        }
      }
    if (!res.ok) break;
  }
  return res;
}

// ---- 4: polytope integrality and relaxed membership -------------------------

inline CriterionResult criterion_polytope() {
  CriterionResult res{"polytope integrality and relaxed membership"};
  std::mt19937 rng(kPointSampleSeed);
  for (const auto& c : detail::polytope_cases()) {
    for (const auto& v : c.vertices) {
      ++res.checks;
      if (!is_integral(v)) {
        detail::fail(res, c.name + ": fractional vertex " + detail::vec_str(v));
        break;
      }
    }
    if (!res.ok) break;
    auto jq = integer_point_system(c.graph, c.sys);
    auto axiom = check_two_step_axiom(jq);
    ++res.checks;
    if (!axiom.ok()) {
      detail::fail(res, c.name + ": integer points fail the axiom at x=" +
                            detail::vec_str(axiom.counterexample->x) +
                            " y=" + detail::vec_str(axiom.counterexample->y));
      break;
    }
    for (const auto& v : c.vertices) {
      ++res.checks;
      if (!relaxed_feasible(c.graph, c.tau, v)) {
        detail::fail(res, c.name + ": vertex " + detail::vec_str(v) + " not relaxed-feasible");
        break;
      }
    }
    if (!res.ok) break;
    auto ub = coordinate_upper_bounds(c.sys);
    for (int s = 0; s < kPointSamplesPerCase && res.ok; ++s) {
      RationalVector x;
      for (int t = 0; t < c.sys.num_terminals; ++t) {
        long long den = 1 + rng() % 3;
        long long lim = 2LL * ub[t] * den;
        long long num = lim > 0 ? static_cast<long long>(rng() % (lim + 1)) : 0;
        x.push_back(Rational(num, den));
      }
      bool mem = polytope_member(c.sys, x);
      bool rel = relaxed_feasible(c.graph, c.tau, x).has_value();
      ++res.checks;
      if (mem != rel)
        detail::fail(res, c.name + ": member=" + (mem ? "true" : "false") +
                              " but relaxed=" + (rel ? "true" : "false") + " at " +
                              detail::vec_str(x));
    }
    if (!res.ok) break;
  }
  return res;
}

// ---- 5: the pinned gap between the polytope and the packing set -------------

inline CriterionResult criterion_gap_example() {
  CriterionResult res{"polytope-packing gap instance"};
  Multigraph g = star();
  auto tau = singleton_partition(g);
  auto sys = reduced_inequalities(g, tau);
  DemandVector ones(3, 1);
  RationalVector x(3, 1);
  ++res.checks;
  if (!polytope_member(sys, x)) detail::fail(res, "star: (1,1,1) should lie in the polytope");
  ++res.checks;
  if (!relaxed_feasible(g, tau, x))
    detail::fail(res, "star: (1,1,1) should be relaxed-feasible");
  ++res.checks;
  if (enumerate_feasible(g, Mode::edge).contains(ones))
    detail::fail(res, "star: (1,1,1) must not be edge-realizable (odd sum)");
  ++res.checks;
  if (realize(g, Mode::edge, ones))
    detail::fail(res, "star: realize must reject (1,1,1)");
  return res;
}

// ---- 6: even-degree intersection ---------------------------------------------

inline CriterionResult criterion_intersection() {
  CriterionResult res{"even intersection integrality and attainment"};
  for (const auto& ec : even_cases()) {
    IntersectionReport rep = intersect_and_check(ec.graph, ec.tau1, ec.tau2);
    ++res.checks;
    if (!rep.all_integral) {
      detail::fail(res, ec.name + ": fractional vertex in the intersection");
      continue;
    }
    if (!rep.attainer) {
      detail::fail(res, ec.name + ": no doubly-joined realization attains the max sum " +
                            rational_to_string(rep.max_sum));
      continue;
    }
    for (size_t i = 0; i < rep.vertices.size(); ++i)
      if (!rep.vertex_attainable[i])
        res.findings.push_back(ec.name + ": conjectured per-vertex attainability fails at " +
                               detail::vec_str(rep.vertices[i]) +
                               " (reported only, not asserted)");
  }
  return res;
}

// ---- 7: bisubmodularity of the support function -----------------------------

inline CriterionResult criterion_bisubmodular() {
  CriterionResult res{"support function bisubmodularity"};
  for (const auto& c : detail::polytope_cases()) {
    auto f = support_pair_function(c.vertices, c.sys.num_terminals);
    auto v = check_bisubmodular(f);
    ++res.checks;
    if (!v.ok()) {
      detail::fail(res, c.name + ": bisubmodular inequality fails, lhs=" +
                            rational_to_string(v.violation->lhs) +
                            " rhs=" + rational_to_string(v.violation->rhs));
      break;
    }
  }
  return res;
}

// ---- 8: parity realizability ------------------------------------------------

inline CriterionResult criterion_parity() {
  CriterionResult res{"parity realizability"};
  long long total_points = 0;
  for (const auto& c : detail::polytope_cases()) {
    ParityReport rep = parity_feasibility_check(c.graph, c.tau);
    if (rep.vacuous) continue;
    total_points += rep.points_checked;
    res.checks += rep.points_checked;
    if (!rep.ok()) {
      detail::fail(res, c.name + ": matching-parity integer point " +
                            detail::vec_str(*rep.counterexample) + " is not realizable");
      break;
    }
  }
  ++res.checks;
  if (total_points == 0)
    detail::fail(res, "no instance exercised the parity hypothesis (vacuously true everywhere)");
  return res;
}

// ---- 9: greedy optimality ---------------------------------------------------

inline CriterionResult criterion_greedy(uint32_t weight_seed = 0) {
  CriterionResult res{"greedy optimality"};
  std::mt19937 rng(weight_seed);
  const auto& fam = detail::axiom_family();
  const auto& sys = detail::axiom_family_edge_systems();
  for (size_t i = 0; i < fam.size() && res.ok; ++i) {
    const auto& j = sys[i];
    int nt = static_cast<int>(j.ground.size());
    for (int trial = 0; trial < kWeightTrialsPerInstance; ++trial) {
      std::vector<Rational> w;
      for (int t = 0; t < nt; ++t) w.push_back(Rational(static_cast<int>(rng() % 11) - 5));
      auto gr = greedy_optimize(j, w);
      auto bf = brute_force_optimize(j, w);
      ++res.checks;
      if (gr.value != bf.value) {
        detail::fail(res, fam[i].name + ": greedy " + rational_to_string(gr.value) +
                              " != brute force " + rational_to_string(bf.value));
        break;
      }
    }
  }
  return res;
}

// ---- 10: membership reduction agreement -------------------------------------

inline CriterionResult criterion_reduction() {
  CriterionResult res{"membership reduction agreement"};
  const auto& fam = detail::axiom_family();
  const auto& sys = detail::axiom_family_edge_systems();
  int divergences = 0;
  for (size_t i = 0; i < fam.size() && res.ok; ++i) {
    const Multigraph& g = fam[i].graph;
    const auto& box = sys[i].box;
    int nt = g.num_terminals();
    DemandVector m(nt, 0);
    while (true) {
      long long total = 0;
      for (int v : m) total += v;
      if (total % 2 == 0) {
        auto direct = realize(g, Mode::edge, m);
        if (direct) {
          auto valid = is_valid_system(g, *direct);
          ++res.checks;
          if (!valid) {
            detail::fail(res, fam[i].name + ": realize produced an invalid system at " +
                                  detail::vec_str(m) + ": " + valid.reason);
            break;
          }
          if (demand_of(g, *direct) != m) {
            detail::fail(res, fam[i].name + ": realize witness has wrong demand at " +
                                  detail::vec_str(m));
            break;
          }
        }
        bool via = member_via_reduction(g, Mode::edge, m);
        ++res.checks;
        if (via != direct.has_value() && divergences < 25) {
          ++divergences;
          res.findings.push_back(fam[i].name + ": divergence at " + detail::vec_str(m) +
                                 " (reduction=" + (via ? "yes" : "no") +
                                 ", search=" + (direct ? "yes" : "no") + ")");
        } else if (via != direct.has_value()) {
          ++divergences;
        }
      }
      int t = nt - 1;
      while (t >= 0 && m[t] == box[t]) m[t--] = 0;
      if (t < 0) break;
      ++m[t];
    }
  }
  if (divergences > 25)
    res.findings.push_back("divergences beyond the first 25 suppressed (total " +
                           std::to_string(divergences) + ")");
  return res;
}

inline std::vector<CriterionResult> run_battery(uint32_t weight_seed = 0) {
  return {criterion_edge_axiom(),   criterion_vertex_axiom(), criterion_exchange(),
          criterion_polytope(),     criterion_gap_example(),  criterion_intersection(),
          criterion_bisubmodular(), criterion_parity(),       criterion_greedy(weight_seed),
          criterion_reduction()};
}

}  // namespace tpj
