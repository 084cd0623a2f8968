#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tpj/jump.hpp"
#include "tpj/multigraph.hpp"
#include "tpj/paths.hpp"

namespace tpj {

namespace detail {

/// Precomputed compatibility state for subset search over a fixed path list.
struct PathSearch {
  const Multigraph& g;
  const std::vector<TPath>& paths;
  Mode mode;
  std::vector<uint64_t> edge_mask;      // per path
  std::vector<uint64_t> interior_mask;  // per path, non-terminal vertices
  std::vector<int> end_a, end_b;        // terminal ranks of the endpoints
  std::vector<std::vector<int>> suffix_count;  // [i][t]: paths >= i ending at t
  std::vector<uint64_t> smaller_parallel;      // per edge: lower-id parallel copies

  PathSearch(const Multigraph& g_, const std::vector<TPath>& paths_, Mode mode_)
      : g(g_), paths(paths_), mode(mode_) {
    if (g.num_edges() > 63 || g.num_vertices() > 63)
      throw std::invalid_argument("path search limited to 63 edges/vertices");
    int n = static_cast<int>(paths.size());
    edge_mask.resize(n);
    interior_mask.resize(n);
    end_a.resize(n);
    end_b.resize(n);
    for (int i = 0; i < n; ++i) {
      uint64_t em = 0, vm = 0;
      for (int e : paths[i].edges) em |= uint64_t{1} << e;
      for (int v : paths[i].vertices)
        if (!g.is_terminal(v)) vm |= uint64_t{1} << v;
      edge_mask[i] = em;
      interior_mask[i] = vm;
      end_a[i] = g.terminal_rank_of[paths[i].front()];
      end_b[i] = g.terminal_rank_of[paths[i].back()];
    }
    int nt = g.num_terminals();
    suffix_count.assign(n + 1, std::vector<int>(nt, 0));
    for (int i = n - 1; i >= 0; --i) {
      suffix_count[i] = suffix_count[i + 1];
      ++suffix_count[i][end_a[i]];
      ++suffix_count[i][end_b[i]];
    }
    smaller_parallel.assign(g.num_edges(), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [u, v] = g.edges[e];
      for (int f = 0; f < e; ++f)
        if ((g.edges[f] == std::pair{u, v}) || (g.edges[f] == std::pair{v, u}))
          smaller_parallel[e] |= uint64_t{1} << f;
    }
  }

  // Symmetry-breaking rule for searches whose path list is closed under
  // swapping parallel edge copies (true whenever the list came from a full
  // enumeration): only include a path if each of its edges is the lowest-id
  // copy not already used.  Permuting the copies of a parallel class maps
  // packings to equal-sized packings with the same vertex sequences, and the
  // lexicographically least image always satisfies this rule, so restricting
  // the search to it loses no optima.
  bool lowest_free_copies(int i, uint64_t used_edges) const {
    for (int e : paths[i].edges)
      if ((smaller_parallel[e] & used_edges) != smaller_parallel[e]) return false;
    return true;
  }

  bool compatible(int i, uint64_t used_edges, uint64_t used_interiors) const {
    if (mode == Mode::edge) return (edge_mask[i] & used_edges) == 0;
    // vertex mode: no shared non-terminal vertex; identical single-edge paths
    // cannot arise because each index is taken at most once
    return (interior_mask[i] & used_interiors) == 0 && (edge_mask[i] & used_edges) == 0;
  }
};

inline bool realize_dfs(const PathSearch& ps, int i, DemandVector& residual, int remaining,
                        uint64_t used_e, uint64_t used_v, std::vector<int>& chosen) {
  if (remaining == 0) return true;
  int n = static_cast<int>(ps.paths.size());
  if (i == n) return false;
  for (int t = 0; t < static_cast<int>(residual.size()); ++t)
    if (residual[t] > ps.suffix_count[i][t]) return false;
  // include paths[i]
  int a = ps.end_a[i], b = ps.end_b[i];
  if (residual[a] > 0 && residual[b] > 0 && ps.compatible(i, used_e, used_v)) {
    --residual[a];
    --residual[b];
    chosen.push_back(i);
    if (realize_dfs(ps, i + 1, residual, remaining - 2, used_e | ps.edge_mask[i],
                    used_v | ps.interior_mask[i], chosen))
      return true;
    chosen.pop_back();
    ++residual[a];
    ++residual[b];
  }
  return realize_dfs(ps, i + 1, residual, remaining, used_e, used_v, chosen);
}

}  // namespace detail

/// Searches for a subset of `paths` that is pairwise disjoint in `mode` and
/// realizes demand m exactly.  Returns indices of the first witness in
/// canonical order, or nothing.
inline std::optional<std::vector<int>> realize_over_paths(const Multigraph& g,
                                                          const std::vector<TPath>& paths,
                                                          Mode mode, const DemandVector& m) {
  if (static_cast<int>(m.size()) != g.num_terminals())
    throw std::invalid_argument("realize: demand size mismatch");
  long long total = 0;
  for (int v : m) {
    if (v < 0) throw std::invalid_argument("realize: negative demand");
    total += v;
  }
  if (total % 2 != 0) return std::nullopt;
  detail::PathSearch ps(g, paths, mode);
  DemandVector residual = m;
  std::vector<int> chosen;
  if (detail::realize_dfs(ps, 0, residual, static_cast<int>(total), 0, 0, chosen)) return chosen;
  return std::nullopt;
}

/// Finds a system of disjoint T-paths realizing m, if one exists.  The witness
/// is deterministic: the first feasible subset when paths are scanned in
/// canonical (length, edge ids) order, include before exclude.
inline std::optional<PathSystem> realize(const Multigraph& g, Mode mode, const DemandVector& m,
                                         const TerminalPartition* partition = nullptr) {
  auto paths = enumerate_t_paths(g, partition);
  auto chosen = realize_over_paths(g, paths, mode, m);
  if (!chosen) return std::nullopt;
  PathSystem s;
  s.mode = mode;
  for (int i : *chosen) s.paths.push_back(paths[i]);
  return s;
}

struct PackingResult {
  int count = 0;
  PathSystem system;
};

namespace detail {

struct MaxPackState {
  const PathSearch& ps;
  int stop_at;  // -1: exact maximum; else stop once reached
  int best = 0;
  std::vector<int> best_set;
  bool done = false;
  std::vector<int> spare;  // per terminal: degree minus endpoints already used

  explicit MaxPackState(const PathSearch& ps_, int stop_at_) : ps(ps_), stop_at(stop_at_) {
    for (int r = 0; r < ps.g.num_terminals(); ++r)
      spare.push_back(ps.g.degree(ps.g.terminals[r]));
  }

  // Disjoint paths ending at a terminal use distinct edges there, so future
  // gains are capped by half the remaining endpoint capacity.
  int capacity_bound(int i) const {
    int ends = 0;
    for (size_t t = 0; t < spare.size(); ++t)
      ends += std::min(spare[t], ps.suffix_count[i][t]);
    return ends / 2;
  }

  void dfs(int i, uint64_t used_e, uint64_t used_v, std::vector<int>& chosen) {
    if (done) return;
    int n = static_cast<int>(ps.paths.size());
    if (static_cast<int>(chosen.size()) > best) {
      best = static_cast<int>(chosen.size());
      best_set = chosen;
      if (stop_at >= 0 && best >= stop_at) {
        done = true;
        return;
      }
    }
    if (i == n) return;
    int gain = std::min(n - i, capacity_bound(i));
    if (static_cast<int>(chosen.size()) + gain <= best) return;  // cannot improve
    if (ps.compatible(i, used_e, used_v) && ps.lowest_free_copies(i, used_e)) {
      --spare[ps.end_a[i]];
      --spare[ps.end_b[i]];
      chosen.push_back(i);
      dfs(i + 1, used_e | ps.edge_mask[i], used_v | ps.interior_mask[i], chosen);
      chosen.pop_back();
      ++spare[ps.end_a[i]];
      ++spare[ps.end_b[i]];
      if (done) return;
    }
    dfs(i + 1, used_e, used_v, chosen);
  }
};

}  // namespace detail

/// Maximum-cardinality disjoint path packing by exhaustive branch-and-bound.
/// With stop_at >= 0 the search returns as soon as a packing of that size is
/// found (the reported count is exact iff it is < stop_at).
inline PackingResult max_packing(const Multigraph& g, Mode mode,
                                 const TerminalPartition* partition = nullptr,
                                 int stop_at = -1) {
  auto paths = enumerate_t_paths(g, partition);
  detail::PathSearch ps(g, paths, mode);
  detail::MaxPackState st{ps, stop_at};
  std::vector<int> chosen;
  st.dfs(0, 0, 0, chosen);
  PackingResult r;
  r.count = st.best;
  r.system.mode = mode;
  for (int i : st.best_set) r.system.paths.push_back(paths[i]);
  return r;
}

/// The jump system generated by disjoint T-path packings: every m in the box
/// m(t) <= deg(t) with even coordinate sum that some packing realizes.
inline FiniteJumpSystem enumerate_feasible(const Multigraph& g, Mode mode,
                                           const TerminalPartition* partition = nullptr) {
  FiniteJumpSystem j;
  for (int r = 0; r < g.num_terminals(); ++r) {
    j.ground.push_back(g.names[g.terminals[r]]);
    j.box.push_back(g.degree(g.terminals[r]));
  }
  auto paths = enumerate_t_paths(g, partition);
  int nt = g.num_terminals();
  DemandVector m(nt, 0);
  while (true) {
    long long sum = std::accumulate(m.begin(), m.end(), 0LL);
    if (sum % 2 == 0 && realize_over_paths(g, paths, mode, m)) j.vectors.push_back(m);
    int i = nt - 1;
    while (i >= 0 && m[i] == j.box[i]) m[i--] = 0;
    if (i < 0) break;
    ++m[i];
  }
  if (nt == 0) j.vectors.push_back({});  // the empty vector is trivially realized
  j.normalize();
  return j;
}

/// Membership via the terminal-copy reduction: attach a fresh copy t' by m(t)
/// parallel edges, move the terminal set to the copies, and test whether the
/// maximum packing there reaches sum(m)/2 (it can never exceed it, since each
/// copy t' has degree exactly m(t)).
inline bool member_via_reduction(const Multigraph& g, Mode mode, const DemandVector& m) {
  if (static_cast<int>(m.size()) != g.num_terminals())
    throw std::invalid_argument("member_via_reduction: demand size mismatch");
  long long total = 0;
  for (int v : m) {
    if (v < 0) throw std::invalid_argument("member_via_reduction: negative demand");
    total += v;
  }
  if (total % 2 != 0) return false;
  int target = static_cast<int>(total / 2);
  auto aug = augment_with_copies(g, m);
  return max_packing(aug.graph, mode, nullptr, target).count >= target;
}

}  // namespace tpj
