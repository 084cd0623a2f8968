#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "tpj/multigraph.hpp"

namespace tpj {

/// Simple path given by its vertex sequence v0..vk and edge id sequence e1..ek
/// (edges[i] joins vertices[i] and vertices[i+1]).
struct TPath {
  std::vector<int> vertices;
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
  int front() const { return vertices.front(); }
  int back() const { return vertices.back(); }
  bool operator==(const TPath& o) const { return vertices == o.vertices && edges == o.edges; }
  bool operator<(const TPath& o) const {
    if (edges.size() != o.edges.size()) return edges.size() < o.edges.size();
    if (edges != o.edges) return edges < o.edges;
    return vertices < o.vertices;
  }
};

struct PathSystem {
  std::vector<TPath> paths;
  Mode mode = Mode::edge;
};

struct Validity {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline Validity invalid(std::string why) { return Validity{false, std::move(why)}; }

namespace detail {

/// Shared path mechanics: simplicity, edge/vertex consistency, terminal
/// endpoints.  `strict` additionally forbids terminals in the interior.
inline Validity validate_path_common(const Multigraph& g, const TPath& p, bool strict) {
  if (p.edges.empty()) return invalid("path has no edges");
  if (p.vertices.size() != p.edges.size() + 1)
    return invalid("vertex/edge sequence lengths disagree");
  std::set<int> seen;
  for (int v : p.vertices) {
    if (v < 0 || v >= g.num_vertices()) return invalid("vertex id out of range");
    if (!seen.insert(v).second) return invalid("path revisits vertex '" + g.names[v] + "'");
  }
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    if (e < 0 || e >= g.num_edges()) return invalid("edge id out of range");
    const auto& [a, b] = g.edges[e];
    int u = p.vertices[i], w = p.vertices[i + 1];
    if (!((a == u && b == w) || (a == w && b == u)))
      return invalid("edge " + std::to_string(e) + " does not join consecutive path vertices");
  }
  if (!g.is_terminal(p.front()) || !g.is_terminal(p.back()))
    return invalid("path endpoint is not a terminal");
  if (strict)
    for (size_t i = 1; i + 1 < p.vertices.size(); ++i)
      if (g.is_terminal(p.vertices[i]))
        return invalid("terminal '" + g.names[p.vertices[i]] + "' in path interior");
  return {};
}

}  // namespace detail

/// T-path validity: simple, both endpoints distinct terminals, interior
/// disjoint from the terminal set.
inline Validity validate_t_path(const Multigraph& g, const TPath& p) {
  return detail::validate_path_common(g, p, /*strict=*/true);
}

/// Relaxed variant used on the polyhedral side: endpoints are distinct
/// terminals but the interior may pass through terminals.
inline Validity validate_linking_path(const Multigraph& g, const TPath& p) {
  return detail::validate_path_common(g, p, /*strict=*/false);
}

/// True if distinct paths p and q are compatible under the given mode:
/// edge systems share no edge, vertex systems share vertices only inside T.
inline bool are_disjoint(const Multigraph& g, const TPath& p, const TPath& q, Mode mode) {
  if (mode == Mode::edge) {
    for (int e : p.edges)
      if (std::find(q.edges.begin(), q.edges.end(), e) != q.edges.end()) return false;
    return true;
  }
  for (int v : p.vertices)
    if (!g.is_terminal(v) &&
        std::find(q.vertices.begin(), q.vertices.end(), v) != q.vertices.end())
      return false;
  return true;
}

/// Demand vector of a path collection: m(t) = number of paths with endpoint t.
inline DemandVector demand_of(const Multigraph& g, const std::vector<TPath>& paths) {
  DemandVector m(g.num_terminals(), 0);
  for (const auto& p : paths) {
    ++m[g.terminal_rank_of[p.front()]];
    ++m[g.terminal_rank_of[p.back()]];
  }
  return m;
}

inline DemandVector demand_of(const Multigraph& g, const PathSystem& s) {
  return demand_of(g, s.paths);
}

/// Full validity of a path system: every path is a T-path, paths are pairwise
/// distinct and pairwise disjoint in the system's mode.
inline Validity is_valid_system(const Multigraph& g, const PathSystem& s) {
  for (size_t i = 0; i < s.paths.size(); ++i) {
    auto v = validate_t_path(g, s.paths[i]);
    if (!v) return invalid("path " + std::to_string(i) + ": " + v.reason);
  }
  for (size_t i = 0; i < s.paths.size(); ++i)
    for (size_t j = i + 1; j < s.paths.size(); ++j) {
      if (s.paths[i] == s.paths[j])
        return invalid("paths " + std::to_string(i) + " and " + std::to_string(j) +
                       " are identical");
      if (!are_disjoint(g, s.paths[i], s.paths[j], s.mode))
        return invalid("paths " + std::to_string(i) + " and " + std::to_string(j) +
                       " are not " + std::string(to_string(s.mode)) + "-disjoint");
    }
  return {};
}

/// Same checks for the relaxed path family (interiors may contain terminals).
inline Validity is_valid_linking_system(const Multigraph& g, const std::vector<TPath>& paths,
                                        Mode mode) {
  for (size_t i = 0; i < paths.size(); ++i) {
    auto v = validate_linking_path(g, paths[i]);
    if (!v) return invalid("path " + std::to_string(i) + ": " + v.reason);
  }
  for (size_t i = 0; i < paths.size(); ++i)
    for (size_t j = i + 1; j < paths.size(); ++j) {
      if (paths[i] == paths[j])
        return invalid("paths " + std::to_string(i) + " and " + std::to_string(j) +
                       " are identical");
      if (!are_disjoint(g, paths[i], paths[j], mode))
        return invalid("paths " + std::to_string(i) + " and " + std::to_string(j) +
                       " are not " + std::string(to_string(mode)) + "-disjoint");
    }
  return {};
}

namespace detail {

inline void path_dfs(const Multigraph& g, const TerminalPartition* partition, bool strict,
                     int start, std::vector<int>& verts, std::vector<int>& eids,
                     std::vector<char>& used, std::vector<TPath>& out) {
  int v = verts.back();
  for (int e : g.incident[v]) {
    int w = g.other_end(e, v);
    if (used[w]) continue;
    if (g.is_terminal(w)) {
      bool accept = g.names[w] > g.names[start];
      if (accept && partition) {
        int ra = g.terminal_rank_of[start], rb = g.terminal_rank_of[w];
        accept = partition->separates(ra, rb);
      }
      if (accept) {
        TPath p;
        p.vertices = verts;
        p.vertices.push_back(w);
        p.edges = eids;
        p.edges.push_back(e);
        out.push_back(std::move(p));
      }
      if (strict) continue;  // terminals never appear in a strict interior
    }
    used[w] = 1;
    verts.push_back(w);
    eids.push_back(e);
    path_dfs(g, partition, strict, start, verts, eids, used, out);
    eids.pop_back();
    verts.pop_back();
    used[w] = 0;
  }
}

inline std::vector<TPath> enumerate_paths_impl(const Multigraph& g,
                                               const TerminalPartition* partition, bool strict) {
  std::vector<TPath> out;
  for (int r = 0; r < g.num_terminals(); ++r) {
    int start = g.terminals[r];
    std::vector<int> verts{start}, eids;
    std::vector<char> used(g.num_vertices(), 0);
    used[start] = 1;
    path_dfs(g, partition, strict, start, verts, eids, used, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All T-paths (interiors avoid T) in canonical orientation, sorted by
/// (length, edge id sequence).  With a partition, keeps only paths whose
/// endpoints lie in different classes.
inline std::vector<TPath> enumerate_t_paths(const Multigraph& g,
                                            const TerminalPartition* partition = nullptr) {
  return detail::enumerate_paths_impl(g, partition, /*strict=*/true);
}

/// All simple terminal-to-terminal paths, interiors unrestricted.  This is the
/// path family behind the relaxed (fractional) feasibility notion.
inline std::vector<TPath> enumerate_linking_paths(const Multigraph& g,
                                                  const TerminalPartition* partition = nullptr) {
  return detail::enumerate_paths_impl(g, partition, /*strict=*/false);
}

/// An edge-transition is either an unordered pair of incident edges used
/// consecutively by a path, or a (terminal, first/last edge) pair.
struct Transition {
  bool at_terminal = false;
  int a = -1;  // terminal vertex id, or smaller edge id
  int b = -1;  // edge id, or larger edge id
  bool operator<(const Transition& o) const {
    if (at_terminal != o.at_terminal) return at_terminal < o.at_terminal;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool operator==(const Transition& o) const {
    return at_terminal == o.at_terminal && a == o.a && b == o.b;
  }
};

using TransitionSet = std::set<Transition>;

inline TransitionSet transitions_of(const TPath& p) {
  TransitionSet t;
  t.insert(Transition{true, p.vertices.front(), p.edges.front()});
  t.insert(Transition{true, p.vertices.back(), p.edges.back()});
  for (size_t i = 0; i + 1 < p.edges.size(); ++i) {
    int x = p.edges[i], y = p.edges[i + 1];
    t.insert(Transition{false, std::min(x, y), std::max(x, y)});
  }
  return t;
}

inline TransitionSet transitions_of(const std::vector<TPath>& paths) {
  TransitionSet t;
  for (const auto& p : paths) {
    auto tp = transitions_of(p);
    t.insert(tp.begin(), tp.end());
  }
  return t;
}

inline TransitionSet transitions_of(const PathSystem& s) { return transitions_of(s.paths); }

/// |transitions(A) \ transitions(B)| - the induction parameter of the
/// constructive exchange procedure.
inline int transition_difference(const std::vector<TPath>& a, const std::vector<TPath>& b) {
  auto ta = transitions_of(a);
  auto tb = transitions_of(b);
  int n = 0;
  for (const auto& t : ta)
    if (!tb.count(t)) ++n;
  return n;
}

}  // namespace tpj
