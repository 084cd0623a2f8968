#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpj/jump.hpp"
#include "tpj/multigraph.hpp"
#include "tpj/packing.hpp"
#include "tpj/paths.hpp"

namespace tpj {

/// Raised when a search certified by the underlying theorems finds no witness,
/// or when the constructive procedure's induction parameter fails to decrease.
/// Carries a plain-text dump of the offending instance.
struct theorem_violation : std::runtime_error {
  std::string dump;
  theorem_violation(const std::string& what, std::string dump_)
      : std::runtime_error(what), dump(std::move(dump_)) {}
};

struct TraceRecord {
  int depth = 0;
  std::string rule;             // which branch of the procedure fired
  int terminal = -1;            // rank of the terminal the current step acts on
  std::vector<int> path_edges;  // the path deleted/added/created, if any
  int parameter = 0;            // |transitions(P1) \ transitions(P2)| on entry
};

struct ExchangeResult {
  std::optional<Step> second;  // absent: m1+sigma itself is realized
  PathSystem witness;
  std::vector<TraceRecord> trace;

  bool first_step_feasible() const { return !second.has_value(); }
};

namespace detail {

inline std::string dump_exchange_instance(const Multigraph& g, const DemandVector& m1,
                                          const DemandVector& m2, const Step& sigma) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& n : g.names) os << ' ' << n;
  os << "; edges:";
  for (const auto& [a, b] : g.edges) os << ' ' << g.names[a] << '-' << g.names[b];
  os << "; terminals:";
  for (int t : g.terminals) os << ' ' << g.names[t];
  std::vector<std::string> ground;
  for (int t : g.terminals) ground.push_back(g.names[t]);
  os << "; m1:";
  for (int v : m1) os << ' ' << v;
  os << "; m2:";
  for (int v : m2) os << ' ' << v;
  os << "; sigma: " << step_to_string(sigma, ground);
  return os.str();
}

inline uint64_t edge_mask_of(const TPath& p) {
  uint64_t m = 0;
  for (int e : p.edges) m |= uint64_t{1} << e;
  return m;
}

inline uint64_t edge_mask_of(const std::vector<TPath>& paths) {
  uint64_t m = 0;
  for (const auto& p : paths) m |= edge_mask_of(p);
  return m;
}

/// Endpoint edge of p at terminal vertex v (p must end there).
inline int endpoint_edge(const TPath& p, int v) {
  return p.front() == v ? p.edges.front() : p.edges.back();
}

inline int other_endpoint(const TPath& p, int v) { return p.front() == v ? p.back() : p.front(); }

inline bool has_endpoint(const TPath& p, int v) { return p.front() == v || p.back() == v; }

/// Copy of p oriented to start at vertex v.
inline TPath oriented_from(const TPath& p, int v) {
  if (p.front() == v) return p;
  TPath r = p;
  std::reverse(r.vertices.begin(), r.vertices.end());
  std::reverse(r.edges.begin(), r.edges.end());
  return r;
}

inline bool lex_before(const TPath& a, const TPath& b) { return a.edges < b.edges; }

/// The worker keeps P2 fixed and rewrites P1 along the recursion.  Every
/// recursive call re-derives the induction parameter and insists it shrank.
struct ExchangeWorker {
  const Multigraph& g;
  std::vector<TPath> p2;
  DemandVector m2;
  uint64_t p2_edges = 0;
  std::vector<TraceRecord> trace;

  ExchangeWorker(const Multigraph& g_, std::vector<TPath> p2_) : g(g_), p2(std::move(p2_)) {
    m2 = demand_of(g, p2);
    p2_edges = edge_mask_of(p2);
  }

  ExchangeResult finish_first(std::vector<TPath> p1) {
    ExchangeResult r;
    r.witness.mode = Mode::edge;
    r.witness.paths = std::move(p1);
    r.trace = std::move(trace);
    return r;
  }

  ExchangeResult finish_second(Step delta, std::vector<TPath> p1) {
    ExchangeResult r;
    r.second = delta;
    r.witness.mode = Mode::edge;
    r.witness.paths = std::move(p1);
    r.trace = std::move(trace);
    return r;
  }

  void record(int depth, std::string rule, int terminal, const TPath* path, int parameter) {
    TraceRecord t;
    t.depth = depth;
    t.rule = std::move(rule);
    t.terminal = terminal;
    if (path) t.path_edges = path->edges;
    t.parameter = parameter;
    trace.push_back(std::move(t));
  }

  [[noreturn]] void bail(const std::string& why, const std::vector<TPath>& p1,
                         const Step& sigma) {
    throw theorem_violation(
        why, dump_exchange_instance(g, demand_of(g, p1), m2, sigma));
  }

  ExchangeResult rec(std::vector<TPath> p1, Step sigma, int prev_param, int depth) {
    DemandVector m1 = demand_of(g, p1);
    int param = transition_difference(p1, p2);
    if (prev_param >= 0 && param >= prev_param)
      bail("induction parameter did not decrease", p1, sigma);

    if (sigma.kind == Step::Kind::stay) {
      record(depth, "stay", -1, nullptr, param);
      return finish_first(std::move(p1));
    }

    int s_rank = sigma.rank;
    int s_vertex = g.terminals[s_rank];

    if (sigma.kind == Step::Kind::decrement) {
      // Case 1. First look for a path at s whose far endpoint t still has
      // surplus (m1(t) > m2(t)): deleting it realizes both steps at once.
      int pick = -1, pick_t = -1;
      for (int i = 0; i < static_cast<int>(p1.size()); ++i) {
        if (!has_endpoint(p1[i], s_vertex)) continue;
        int t_rank = g.terminal_rank_of[other_endpoint(p1[i], s_vertex)];
        if (m1[t_rank] <= m2[t_rank]) continue;
        if (pick < 0 || t_rank < pick_t || (t_rank == pick_t && lex_before(p1[i], p1[pick]))) {
          pick = i;
          pick_t = t_rank;
        }
      }
      if (pick >= 0) {
        TPath doomed = p1[pick];
        record(depth, "case1-delete", s_rank, &doomed, param);
        p1.erase(p1.begin() + pick);
        return finish_second(Step{Step::Kind::decrement, pick_t}, std::move(p1));
      }
      // Otherwise delete a path at s whose endpoint edge at s is used by no
      // path of P2 (one exists: P2 touches s by exactly m2(s) < m1(s) edges,
      // all endpoint edges of its own paths) and recurse with +e_t.
      pick = -1;
      for (int i = 0; i < static_cast<int>(p1.size()); ++i) {
        if (!has_endpoint(p1[i], s_vertex)) continue;
        int e = endpoint_edge(p1[i], s_vertex);
        if (p2_edges & (uint64_t{1} << e)) continue;
        if (pick < 0 || lex_before(p1[i], p1[pick])) pick = i;
      }
      if (pick < 0) bail("no deletable path with a P2-free endpoint edge at s", p1, sigma);
      TPath doomed = p1[pick];
      int t_rank = g.terminal_rank_of[other_endpoint(doomed, s_vertex)];
      record(depth, "case1-delete-recurse", s_rank, &doomed, param);
      p1.erase(p1.begin() + pick);
      return rec(std::move(p1), Step{Step::Kind::increment, t_rank}, param, depth + 1);
    }

    // Case 2 (sigma = +e_s).
    uint64_t p1_edges = edge_mask_of(p1);

    // First look for a P2 path at s that is edge-disjoint from all of P1.
    int pidx = -1;
    for (int i = 0; i < static_cast<int>(p2.size()); ++i) {
      if (!has_endpoint(p2[i], s_vertex)) continue;
      if (edge_mask_of(p2[i]) & p1_edges) continue;
      if (pidx < 0 || lex_before(p2[i], p2[pidx])) pidx = i;
    }
    if (pidx >= 0) {
      const TPath& addable = p2[pidx];
      int t_vertex = other_endpoint(addable, s_vertex);
      int t_rank = g.terminal_rank_of[t_vertex];
      if (m1[t_rank] < m2[t_rank]) {
        record(depth, "case2-add", s_rank, &addable, param);
        p1.push_back(addable);
        return finish_second(Step{Step::Kind::increment, t_rank}, std::move(p1));
      }
      // Swap: replace a P1 path at t whose endpoint edge at t is unused by P2.
      int qidx = -1;
      for (int i = 0; i < static_cast<int>(p1.size()); ++i) {
        if (!has_endpoint(p1[i], t_vertex)) continue;
        int e = endpoint_edge(p1[i], t_vertex);
        if (p2_edges & (uint64_t{1} << e)) continue;
        if (qidx < 0 || lex_before(p1[i], p1[qidx])) qidx = i;
      }
      if (qidx < 0) bail("no swappable path with a P2-free endpoint edge at t", p1, sigma);
      TPath out = p1[qidx];
      int q_rank = g.terminal_rank_of[other_endpoint(out, t_vertex)];
      p1.erase(p1.begin() + qidx);
      p1.push_back(addable);
      if (m1[q_rank] > m2[q_rank]) {
        record(depth, "case2-swap", s_rank, &addable, param);
        return finish_second(Step{Step::Kind::decrement, q_rank}, std::move(p1));
      }
      record(depth, "case2-swap-recurse", s_rank, &addable, param);
      return rec(std::move(p1), Step{Step::Kind::increment, q_rank}, param, depth + 1);
    }

    // Reroute.  Pick a P2 path P at s whose endpoint edge at s is unused by
    // P1; walk it from s to the first edge e = uv shared with a P1 path Q.
    pidx = -1;
    for (int i = 0; i < static_cast<int>(p2.size()); ++i) {
      if (!has_endpoint(p2[i], s_vertex)) continue;
      int e = endpoint_edge(p2[i], s_vertex);
      if (p1_edges & (uint64_t{1} << e)) continue;
      if (pidx < 0 || lex_before(p2[i], p2[pidx])) pidx = i;
    }
    if (pidx < 0) bail("no P2 path at s with a P1-free endpoint edge", p1, sigma);
    TPath walk = oriented_from(p2[pidx], s_vertex);
    int j = -1;
    for (int k = 0; k < walk.length(); ++k)
      if (p1_edges & (uint64_t{1} << walk.edges[k])) {
        j = k;
        break;
      }
    if (j < 0) bail("reroute path shares no edge with P1", p1, sigma);
    if (j == 0) bail("first shared edge is incident to s", p1, sigma);
    int e = walk.edges[j];
    int u = walk.vertices[j];  // met before v on the walk from s

    int qidx = -1;
    for (int i = 0; i < static_cast<int>(p1.size()); ++i)
      if (edge_mask_of(p1[i]) & (uint64_t{1} << e)) {
        qidx = i;
        break;  // unique: P1 is edge-disjoint
      }
    const TPath& q_path = p1[qidx];
    int kpos = static_cast<int>(std::find(q_path.edges.begin(), q_path.edges.end(), e) -
                                q_path.edges.begin());
    // Endpoint of Q on the far side of e as seen from u.
    int e_side_end = q_path.vertices[kpos] == u ? q_path.back() : q_path.front();
    int q_end, r_vertex;
    if (e_side_end != s_vertex) {
      q_end = e_side_end;                        // tail keeps e
      r_vertex = other_endpoint(q_path, q_end);  // may still be s's opposite
    } else {
      q_end = other_endpoint(q_path, e_side_end);  // tail avoids e
      r_vertex = s_vertex;
    }

    // Build prefix P(s..u) and tail Q(u..q_end), then splice at the last
    // vertex of the tail that also lies on the prefix.  When that vertex is u
    // itself this is exactly the textbook construction; the splice guarantees
    // the replacement stays a simple path even if prefix and tail cross.
    TPath prefix;
    prefix.vertices.assign(walk.vertices.begin(), walk.vertices.begin() + j + 1);
    prefix.edges.assign(walk.edges.begin(), walk.edges.begin() + j);
    TPath tail;  // Q traversed from u toward q_end
    {
      const TPath& oq = q_path;
      int pu = static_cast<int>(std::find(oq.vertices.begin(), oq.vertices.end(), u) -
                                oq.vertices.begin());
      if (oq.vertices.back() == q_end) {
        tail.vertices.assign(oq.vertices.begin() + pu, oq.vertices.end());
        tail.edges.assign(oq.edges.begin() + pu, oq.edges.end());
      } else {
        tail.vertices.assign(oq.vertices.begin(), oq.vertices.begin() + pu + 1);
        tail.edges.assign(oq.edges.begin(), oq.edges.begin() + pu);
        std::reverse(tail.vertices.begin(), tail.vertices.end());
        std::reverse(tail.edges.begin(), tail.edges.end());
      }
    }

    int splice_tail = 0;  // last tail position whose vertex lies on the prefix
    for (int k = 0; k < static_cast<int>(tail.vertices.size()); ++k)
      if (std::find(prefix.vertices.begin(), prefix.vertices.end(), tail.vertices[k]) !=
          prefix.vertices.end())
        splice_tail = k;
    int splice_prefix =
        static_cast<int>(std::find(prefix.vertices.begin(), prefix.vertices.end(),
                                   tail.vertices[splice_tail]) -
                         prefix.vertices.begin());
    TPath reroute;
    reroute.vertices.assign(prefix.vertices.begin(), prefix.vertices.begin() + splice_prefix + 1);
    reroute.edges.assign(prefix.edges.begin(), prefix.edges.begin() + splice_prefix);
    reroute.vertices.insert(reroute.vertices.end(), tail.vertices.begin() + splice_tail + 1,
                            tail.vertices.end());
    reroute.edges.insert(reroute.edges.end(), tail.edges.begin() + splice_tail, tail.edges.end());

    int r_rank = g.terminal_rank_of[r_vertex];
    p1.erase(p1.begin() + qidx);
    p1.push_back(reroute);
    if (m1[r_rank] > m2[r_rank]) {
      record(depth, "case2-reroute", s_rank, &reroute, param);
      return finish_second(Step{Step::Kind::decrement, r_rank}, std::move(p1));
    }
    record(depth, "case2-reroute-recurse", s_rank, &reroute, param);
    return rec(std::move(p1), Step{Step::Kind::increment, r_rank}, param, depth + 1);
  }
};

inline void certify_exchange(const Multigraph& g, const DemandVector& m1, const DemandVector& m2,
                             const Step& sigma, const ExchangeResult& r) {
  auto v = is_valid_system(g, r.witness);
  if (!v)
    throw theorem_violation("exchange witness invalid: " + v.reason,
                            dump_exchange_instance(g, m1, m2, sigma));
  DemandVector expect = apply(sigma, m1);
  if (r.second) {
    if (!legal_step(*r.second, expect, m2))
      throw theorem_violation("second step is not legal toward m2",
                              dump_exchange_instance(g, m1, m2, sigma));
    expect = apply(*r.second, expect);
  }
  if (demand_of(g, r.witness) != expect)
    throw theorem_violation("exchange witness realizes the wrong vector",
                            dump_exchange_instance(g, m1, m2, sigma));
}

}  // namespace detail

/// Constructive exchange for edge-disjoint systems: given realizations P1, P2
/// of m1, m2 and a legal first step sigma from m1 toward m2, produces either a
/// realization of m1+sigma or a legal second step delta with a realization of
/// m1+sigma+delta, by the deletion/addition/swap/reroute case analysis.  The
/// trace records which rule fired at each recursion depth together with the
/// induction parameter, which is checked to decrease strictly.
inline ExchangeResult exchange_step_edge(const Multigraph& g, const PathSystem& p1,
                                         const PathSystem& p2, const Step& sigma) {
  if (p1.mode != Mode::edge || p2.mode != Mode::edge)
    throw std::invalid_argument("exchange_step_edge requires edge-mode systems");
  if (g.num_edges() > 63)
    throw std::invalid_argument("exchange_step_edge limited to 63 edges");
  if (auto v = is_valid_system(g, p1); !v)
    throw std::invalid_argument("invalid first system: " + v.reason);
  if (auto v = is_valid_system(g, p2); !v)
    throw std::invalid_argument("invalid second system: " + v.reason);
  DemandVector m1 = demand_of(g, p1), m2 = demand_of(g, p2);
  if (!legal_step(sigma, m1, m2))
    throw std::invalid_argument("sigma is not a legal step from m1 toward m2");
  detail::ExchangeWorker w(g, p2.paths);
  ExchangeResult r = w.rec(p1.paths, sigma, -1, 0);
  detail::certify_exchange(g, m1, m2, sigma, r);
  return r;
}

/// Oracle form of the exchange step: realizes m1+sigma directly if possible,
/// otherwise tries every legal second step in coordinate order.  Works for
/// either disjointness mode; failure of every candidate contradicts the
/// two-step property and raises theorem_violation.
inline ExchangeResult exchange_step_generic(const Multigraph& g, Mode mode,
                                            const DemandVector& m1, const DemandVector& m2,
                                            const Step& sigma) {
  if (!realize(g, mode, m1)) throw std::invalid_argument("m1 is not feasible");
  if (!realize(g, mode, m2)) throw std::invalid_argument("m2 is not feasible");
  if (!legal_step(sigma, m1, m2))
    throw std::invalid_argument("sigma is not a legal step from m1 toward m2");
  DemandVector x1 = apply(sigma, m1);
  ExchangeResult r;
  if (auto w = realize(g, mode, x1)) {
    r.witness = *w;
    r.trace.push_back(TraceRecord{0, "generic-first", sigma.rank, {}, 0});
    return r;
  }
  for (const auto& delta : steps_toward(x1, m2)) {
    if (delta.kind == Step::Kind::stay) continue;
    if (auto w = realize(g, mode, apply(delta, x1))) {
      r.second = delta;
      r.witness = *w;
      r.trace.push_back(TraceRecord{0, "generic-second", delta.rank, {}, 0});
      return r;
    }
  }
  throw theorem_violation("no feasible completion of the first step",
                          detail::dump_exchange_instance(g, m1, m2, sigma));
}

}  // namespace tpj
