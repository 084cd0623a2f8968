#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tpj {

/// Disjointness notion for path systems: vertex systems may share vertices
/// only inside the terminal set, edge systems may share vertices freely but
/// never an edge.
enum class Mode { vertex, edge };

inline const char* to_string(Mode m) { return m == Mode::vertex ? "vertex" : "edge"; }

inline Mode mode_from_string(const std::string& s) {
  if (s == "vertex") return Mode::vertex;
  if (s == "edge") return Mode::edge;
  throw std::invalid_argument("unknown mode '" + s + "' (expected vertex|edge)");
}

/// Integer vector indexed by terminal rank.  The rank of a terminal is its
/// position in the instance's terminal list; that order fixes the coordinate
/// order of every demand/weight vector derived from the instance.
using DemandVector = std::vector<int>;

/// Partition of the terminal set into classes; members are terminal ranks.
struct TerminalPartition {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;  // terminal rank -> class index

  int num_classes() const { return static_cast<int>(classes.size()); }
  bool separates(int rank_a, int rank_b) const { return class_of[rank_a] != class_of[rank_b]; }
};

/// Parsed instance description prior to validation.
struct InstanceSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> terminals;
  std::map<std::string, std::vector<std::vector<std::string>>> partitions;
};

/// Undirected multigraph with named vertices, positional edge ids, an ordered
/// terminal list and optional named terminal partitions.  Parallel edges are
/// allowed, loops are not.
struct Multigraph {
  std::vector<std::string> names;              // vertex id -> name
  std::vector<std::pair<int, int>> edges;      // edge id -> endpoint vertex ids
  std::vector<int> terminals;                  // vertex ids in rank order
  std::map<std::string, std::vector<std::vector<std::string>>> partition_specs;

  // derived lookups, filled by build_graph
  std::unordered_map<std::string, int> index_of;
  std::vector<std::vector<int>> incident;      // vertex id -> incident edge ids
  std::vector<int> terminal_rank_of;           // vertex id -> rank, or -1

  int num_vertices() const { return static_cast<int>(names.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_terminals() const { return static_cast<int>(terminals.size()); }
  int degree(int v) const { return static_cast<int>(incident[v].size()); }
  bool is_terminal(int v) const { return terminal_rank_of[v] >= 0; }
  int other_end(int e, int v) const {
    const auto& [a, b] = edges[e];
    return a == v ? b : a;
  }
  std::optional<int> find_vertex(const std::string& name) const {
    auto it = index_of.find(name);
    if (it == index_of.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Multigraph& o) const {
    return names == o.names && edges == o.edges && terminals == o.terminals &&
           partition_specs == o.partition_specs;
  }
};

namespace detail {

inline void rebuild_lookups(Multigraph& g) {
  g.index_of.clear();
  for (int v = 0; v < g.num_vertices(); ++v) g.index_of[g.names[v]] = v;
  g.incident.assign(g.num_vertices(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    g.incident[g.edges[e].first].push_back(e);
    g.incident[g.edges[e].second].push_back(e);
  }
  g.terminal_rank_of.assign(g.num_vertices(), -1);
  for (int r = 0; r < g.num_terminals(); ++r) g.terminal_rank_of[g.terminals[r]] = r;
}

}  // namespace detail

/// Resolves a stored partition spec against the terminal list.  Throws if the
/// classes do not form a partition of the terminal set.
inline TerminalPartition resolve_partition(const Multigraph& g,
                                           const std::vector<std::vector<std::string>>& classes) {
  TerminalPartition p;
  p.class_of.assign(g.num_terminals(), -1);
  for (const auto& cls : classes) {
    if (cls.empty()) throw std::invalid_argument("partition contains an empty class");
    std::vector<int> ranks;
    for (const auto& name : cls) {
      auto v = g.find_vertex(name);
      if (!v || !g.is_terminal(*v))
        throw std::invalid_argument("partition member '" + name + "' is not a terminal");
      int r = g.terminal_rank_of[*v];
      if (p.class_of[r] >= 0)
        throw std::invalid_argument("terminal '" + name + "' appears in two partition classes");
      p.class_of[r] = static_cast<int>(p.classes.size());
      ranks.push_back(r);
    }
    p.classes.push_back(std::move(ranks));
  }
  for (int r = 0; r < g.num_terminals(); ++r)
    if (p.class_of[r] < 0)
      throw std::invalid_argument("terminal '" + g.names[g.terminals[r]] +
                                  "' missing from partition");
  return p;
}

/// The discrete partition {{t}} for each terminal; equivalent to having no
/// partition at all.
inline TerminalPartition singleton_partition(const Multigraph& g) {
  TerminalPartition p;
  p.class_of.resize(g.num_terminals());
  for (int r = 0; r < g.num_terminals(); ++r) {
    p.class_of[r] = r;
    p.classes.push_back({r});
  }
  return p;
}

/// Looks up a named partition of the instance; the name "singletons" is always
/// available.
inline TerminalPartition partition_by_name(const Multigraph& g, const std::string& name) {
  if (name == "singletons") return singleton_partition(g);
  auto it = g.partition_specs.find(name);
  if (it == g.partition_specs.end())
    throw std::invalid_argument("unknown partition '" + name + "'");
  return resolve_partition(g, it->second);
}

/// Validates and assembles a multigraph from an instance description.
inline Multigraph build_graph(const InstanceSpec& spec) {
  Multigraph g;
  g.names = spec.vertices;
  {
    std::unordered_map<std::string, int> seen;
    for (int v = 0; v < static_cast<int>(g.names.size()); ++v) {
      if (g.names[v].empty()) throw std::invalid_argument("empty vertex name");
      if (!seen.emplace(g.names[v], v).second)
        throw std::invalid_argument("duplicate vertex '" + g.names[v] + "'");
    }
    for (const auto& [u, w] : spec.edges) {
      auto iu = seen.find(u), iw = seen.find(w);
      if (iu == seen.end()) throw std::invalid_argument("edge endpoint '" + u + "' is not a vertex");
      if (iw == seen.end()) throw std::invalid_argument("edge endpoint '" + w + "' is not a vertex");
      if (iu->second == iw->second)
        throw std::invalid_argument("loop edge at vertex '" + u + "' is not allowed");
      g.edges.emplace_back(iu->second, iw->second);
    }
    std::vector<char> is_term(g.names.size(), 0);
    for (const auto& t : spec.terminals) {
      auto it = seen.find(t);
      if (it == seen.end()) throw std::invalid_argument("terminal '" + t + "' is not a vertex");
      if (is_term[it->second]) throw std::invalid_argument("duplicate terminal '" + t + "'");
      is_term[it->second] = 1;
      g.terminals.push_back(it->second);
    }
  }
  g.partition_specs = spec.partitions;
  detail::rebuild_lookups(g);
  for (const auto& [name, classes] : g.partition_specs) {
    (void)name;
    resolve_partition(g, classes);  // validate eagerly
  }
  return g;
}

/// Convenience builder from name lists; partitions given as name classes.
inline Multigraph build_graph(
    std::vector<std::string> vertices, std::vector<std::pair<std::string, std::string>> edges,
    std::vector<std::string> terminals,
    std::map<std::string, std::vector<std::vector<std::string>>> partitions = {}) {
  InstanceSpec spec;
  spec.vertices = std::move(vertices);
  spec.edges = std::move(edges);
  spec.terminals = std::move(terminals);
  spec.partitions = std::move(partitions);
  return build_graph(spec);
}

/// Number of edges with exactly one endpoint in X (given as vertex ids).
inline int cut_degree(const Multigraph& g, const std::vector<int>& x_ids) {
  std::vector<char> in_x(g.num_vertices(), 0);
  for (int v : x_ids) {
    if (v < 0 || v >= g.num_vertices())
      throw std::invalid_argument("cut_degree: vertex id out of range");
    in_x[v] = 1;
  }
  int d = 0;
  for (const auto& [a, b] : g.edges)
    if (in_x[a] != in_x[b]) ++d;
  return d;
}

inline int cut_degree_names(const Multigraph& g, const std::vector<std::string>& x_names) {
  std::vector<int> ids;
  for (const auto& n : x_names) {
    auto v = g.find_vertex(n);
    if (!v) throw std::invalid_argument("cut_degree: unknown vertex '" + n + "'");
    ids.push_back(*v);
  }
  return cut_degree(g, ids);
}

struct Augmented {
  Multigraph graph;        // terminals of this graph are the fresh copies
  std::vector<int> copies; // terminal rank of the original -> copy vertex id
};

/// Adds a fresh copy t' per terminal t joined to t by m(t) parallel edges, and
/// makes the copies the new terminal set (in the original rank order).
/// Original vertices, edge ids and in particular old terminals are preserved;
/// old terminals become ordinary vertices of the result.
inline Augmented augment_with_copies(const Multigraph& g, const DemandVector& m) {
  if (static_cast<int>(m.size()) != g.num_terminals())
    throw std::invalid_argument("augment_with_copies: demand size mismatch");
  for (int v : m)
    if (v < 0) throw std::invalid_argument("augment_with_copies: negative demand");
  Augmented out;
  out.graph.names = g.names;
  out.graph.edges = g.edges;
  for (int r = 0; r < g.num_terminals(); ++r) {
    std::string base = g.names[g.terminals[r]] + "'";
    while (std::find(out.graph.names.begin(), out.graph.names.end(), base) !=
           out.graph.names.end())
      base += "'";
    int copy = static_cast<int>(out.graph.names.size());
    out.graph.names.push_back(base);
    out.copies.push_back(copy);
    out.graph.terminals.push_back(copy);
    for (int k = 0; k < m[r]; ++k) out.graph.edges.emplace_back(g.terminals[r], copy);
  }
  detail::rebuild_lookups(out.graph);
  return out;
}

}  // namespace tpj
