#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tpj/multigraph.hpp"

namespace tpj {

// ---- named desk-scale instances --------------------------------------------

inline Multigraph single_edge() { return build_graph({"a", "b"}, {{"a", "b"}}, {"a", "b"}); }

inline Multigraph double_edge() {
  return build_graph({"a", "b"}, {{"a", "b"}, {"a", "b"}}, {"a", "b"});
}

/// Three terminal leaves around one centre.
inline Multigraph star() {
  return build_graph({"a", "b", "c", "v"}, {{"a", "v"}, {"b", "v"}, {"c", "v"}}, {"a", "b", "c"},
                     {{"split", {{"a"}, {"b", "c"}}}});
}

inline Multigraph triangle() {
  return build_graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}}, {"a", "b", "c"},
                     {{"split", {{"a"}, {"b", "c"}}}});
}

/// Two terminals joined by a length-three path.
inline Multigraph path4() {
  return build_graph({"a", "x", "y", "b"}, {{"a", "x"}, {"x", "y"}, {"y", "b"}}, {"a", "b"});
}

/// Four-cycle with the two terminals in opposite corners.
inline Multigraph square() {
  return build_graph({"a", "u", "b", "w"}, {{"a", "u"}, {"u", "b"}, {"b", "w"}, {"w", "a"}},
                     {"a", "b"});
}

/// Two terminals joined by three internally disjoint routes (one direct edge,
/// two length-two paths).
inline Multigraph theta() {
  return build_graph({"s", "x", "y", "t"},
                     {{"s", "t"}, {"s", "x"}, {"x", "t"}, {"s", "y"}, {"y", "t"}}, {"s", "t"});
}

inline Multigraph k4() {
  return build_graph(
      {"a", "b", "c", "d"},
      {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}}, {"a", "b", "c", "d"},
      {{"sides", {{"a", "b"}, {"c", "d"}}}, {"cross", {{"a", "c"}, {"b", "d"}}}});
}

/// Two triangles whose apexes are joined by a doubled bridge; every degree is
/// even and the four outer corners are terminals.
inline Multigraph bowtie_doubled_bridge() {
  return build_graph({"a", "b", "x", "c", "d", "y"},
                     {{"a", "b"},
                      {"a", "x"},
                      {"b", "x"},
                      {"c", "d"},
                      {"c", "y"},
                      {"d", "y"},
                      {"x", "y"},
                      {"x", "y"}},
                     {"a", "b", "c", "d"},
                     {{"sides", {{"a", "b"}, {"c", "d"}}}, {"cross", {{"a", "c"}, {"b", "d"}}}});
}

/// Star with every spoke doubled: all degrees even.
inline Multigraph doubled_star() {
  return build_graph({"a", "b", "c", "v"},
                     {{"a", "v"}, {"a", "v"}, {"b", "v"}, {"b", "v"}, {"c", "v"}, {"c", "v"}},
                     {"a", "b", "c"}, {{"split", {{"a"}, {"b", "c"}}}});
}

/// Two terminals joined by four routes (two direct edges, two length-two
/// paths); all degrees even.
inline Multigraph doubled_theta() {
  return build_graph(
      {"s", "x", "y", "t"},
      {{"s", "t"}, {"s", "t"}, {"s", "x"}, {"x", "t"}, {"s", "y"}, {"y", "t"}}, {"s", "t"});
}

struct NamedInstance {
  std::string name;
  Multigraph graph;
};

inline std::vector<NamedInstance> named_instances() {
  return {{"single-edge", single_edge()},
          {"double-edge", double_edge()},
          {"star", star()},
          {"triangle", triangle()},
          {"path4", path4()},
          {"square", square()},
          {"theta", theta()},
          {"k4", k4()},
          {"bowtie", bowtie_doubled_bridge()},
          {"doubled-star", doubled_star()},
          {"doubled-theta", doubled_theta()}};
}

inline Multigraph instance_by_name(const std::string& name) {
  for (auto& ni : named_instances())
    if (ni.name == name) return ni.graph;
  throw std::invalid_argument("unknown named instance '" + name + "'");
}

// ---- exhaustive small family -----------------------------------------------

/// Every connected multigraph on 2..4 named vertices with at most 5 edges and
/// edge multiplicity at most 2, paired with every terminal subset of size
/// 2..min(4, |V|).  Instance names encode the construction deterministically.
inline std::vector<NamedInstance> exhaustive_small_family() {
  std::vector<NamedInstance> out;
  for (int nv = 2; nv <= 4; ++nv) {
    std::vector<std::string> names;
    for (int i = 0; i < nv; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < nv; ++i)
      for (int j = i + 1; j < nv; ++j) pairs.emplace_back(i, j);
    const int np = static_cast<int>(pairs.size());
    long long combos = 1;
    for (int i = 0; i < np; ++i) combos *= 3;
    for (long long code = 0; code < combos; ++code) {
      std::vector<int> mult(np);
      long long c = code;
      int total = 0;
      for (int i = 0; i < np; ++i, c /= 3) {
        mult[i] = static_cast<int>(c % 3);
        total += mult[i];
      }
      if (total < 1 || total > 5) continue;
      // connectivity over all nv vertices
      std::vector<int> comp(nv);
      std::iota(comp.begin(), comp.end(), 0);
      for (int i = 0; i < np; ++i)
        if (mult[i] > 0) {
          int ca = comp[pairs[i].first], cb = comp[pairs[i].second];
          if (ca != cb)
            for (int& x : comp)
              if (x == cb) x = ca;
        }
      if (std::count(comp.begin(), comp.end(), comp[0]) != nv) continue;
      std::vector<std::pair<std::string, std::string>> edges;
      for (int i = 0; i < np; ++i)
        for (int k = 0; k < mult[i]; ++k)
          edges.emplace_back(names[pairs[i].first], names[pairs[i].second]);
      int max_t = std::min(4, nv);
      for (int tmask = 0; tmask < (1 << nv); ++tmask) {
        int pc = __builtin_popcount(static_cast<unsigned>(tmask));
        if (pc < 2 || pc > max_t) continue;
        std::vector<std::string> terms;
        for (int i = 0; i < nv; ++i)
          if ((tmask >> i) & 1) terms.push_back(names[i]);
        NamedInstance ni;
        ni.name = "ex-" + std::to_string(nv) + "-" + std::to_string(code) + "-t" +
                  std::to_string(tmask);
        ni.graph = build_graph(names, edges, terms);
        out.push_back(std::move(ni));
      }
    }
  }
  return out;
}

// ---- seeded random family ---------------------------------------------------

/// Deterministic random instances: a random spanning tree keeps the graph
/// connected, extra random edges are sprinkled up to the edge budget, and one
/// existing edge is duplicated so parallel edges always occur.  Terminals are
/// a random subset of 2..min(4, |V|) vertices, listed in name order.
inline std::vector<NamedInstance> random_instances(uint32_t seed, int count,
                                                   int max_vertices = 6, int max_edges = 8,
                                                   bool force_parallel = true) {
  std::mt19937 rng(seed);
  std::vector<NamedInstance> out;
  for (int idx = 0; idx < count; ++idx) {
    int nv = 2 + static_cast<int>(rng() % (max_vertices - 1));
    std::vector<std::string> names;
    for (int i = 0; i < nv; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i < nv; ++i) edges.emplace_back(names[rng() % i], names[i]);
    int slack = max_edges - (nv - 1);
    int add = slack > 0 ? static_cast<int>(rng() % (slack + 1)) : 0;
    for (int k = 0; k < add; ++k) {
      int u = static_cast<int>(rng() % nv), w = static_cast<int>(rng() % nv);
      if (u == w) continue;
      edges.emplace_back(names[u], names[w]);
    }
    if (force_parallel) {
      if (static_cast<int>(edges.size()) < max_edges)
        edges.push_back(edges[rng() % edges.size()]);
      else
        edges.back() = edges[rng() % (edges.size() - 1)];
    }
    int max_t = std::min(4, nv);
    int nt = 2 + (max_t > 2 ? static_cast<int>(rng() % (max_t - 1)) : 0);
    std::vector<int> ids(nv);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < nt; ++i) std::swap(ids[i], ids[i + rng() % (nv - i)]);
    std::vector<std::string> terms;
    for (int i = 0; i < nt; ++i) terms.push_back(names[ids[i]]);
    std::sort(terms.begin(), terms.end());
    NamedInstance ni;
    ni.name = "rnd-" + std::to_string(seed) + "-" + std::to_string(idx);
    ni.graph = build_graph(names, edges, terms);
    out.push_back(std::move(ni));
  }
  return out;
}

// ---- partition helpers ------------------------------------------------------

/// {{first terminal}, {all others}}; for two terminals this coincides with
/// the singleton partition.
inline TerminalPartition two_class_partition(const Multigraph& g) {
  int nt = g.num_terminals();
  if (nt < 2) throw std::invalid_argument("two_class_partition needs at least two terminals");
  TerminalPartition p;
  p.class_of.assign(nt, 1);
  p.class_of[0] = 0;
  p.classes.push_back({0});
  std::vector<int> rest;
  for (int r = 1; r < nt; ++r) rest.push_back(r);
  p.classes.push_back(std::move(rest));
  return p;
}

struct PartitionCase {
  std::string name;
  TerminalPartition tau;
};

/// The partitions exercised on the polyhedral side: singletons always, plus
/// the coarser two-class split when it differs from singletons.
inline std::vector<PartitionCase> polytope_partitions(const Multigraph& g) {
  std::vector<PartitionCase> out;
  out.push_back({"singletons", singleton_partition(g)});
  if (g.num_terminals() >= 3) out.push_back({"two-class", two_class_partition(g)});
  return out;
}

// ---- acceptance families ----------------------------------------------------

inline constexpr uint32_t kSmallRandomSeed = 20260823;  // axiom checks
inline constexpr uint32_t kExchangeRandomSeed = 777;    // exchange checks
inline constexpr uint32_t kPolytopeRandomSeed = 424242; // polyhedral checks

/// Instances for the polyhedral checks: the named desk instances that stay
/// within the enumeration guards plus 20 seeded randoms on up to 8 vertices.
inline std::vector<NamedInstance> polytope_instances() {
  std::vector<NamedInstance> out = {{"single-edge", single_edge()},
                                    {"double-edge", double_edge()},
                                    {"star", star()},
                                    {"triangle", triangle()},
                                    {"path4", path4()},
                                    {"square", square()},
                                    {"theta", theta()},
                                    {"k4", k4()},
                                    {"doubled-star", doubled_star()}};
  for (auto& ni : random_instances(kPolytopeRandomSeed, 20, 8, 10, true))
    out.push_back(std::move(ni));
  return out;
}

/// Even-degree instances with the partition pairs used by the intersection
/// checks.
struct EvenCase {
  std::string name;
  Multigraph graph;
  TerminalPartition tau1, tau2;
};

inline std::vector<EvenCase> even_cases() {
  std::vector<EvenCase> out;
  {
    Multigraph g = triangle();
    out.push_back(
        {"triangle/singletons*split", g, singleton_partition(g), partition_by_name(g, "split")});
  }
  {
    Multigraph g = square();
    out.push_back(
        {"square/singletons*singletons", g, singleton_partition(g), singleton_partition(g)});
  }
  {
    Multigraph g = bowtie_doubled_bridge();
    out.push_back(
        {"bowtie/sides*cross", g, partition_by_name(g, "sides"), partition_by_name(g, "cross")});
    out.push_back({"bowtie/singletons*sides", g, singleton_partition(g),
                   partition_by_name(g, "sides")});
  }
  {
    Multigraph g = doubled_star();
    out.push_back(
        {"doubled-star/singletons*split", g, singleton_partition(g),
         partition_by_name(g, "split")});
  }
  {
    Multigraph g = doubled_theta();
    out.push_back({"doubled-theta/singletons*singletons", g, singleton_partition(g),
                   singleton_partition(g)});
  }
  return out;
}

}  // namespace tpj
