#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "tpj/exchange.hpp"
#include "tpj/multigraph.hpp"
#include "tpj/packing.hpp"
#include "tpj/paths.hpp"
#include "tpj/polytope.hpp"
#include "tpj/rational.hpp"

namespace tpj {

using json = nlohmann::json;

inline std::vector<std::string> ground_names(const Multigraph& g) {
  std::vector<std::string> out;
  for (int r = 0; r < g.num_terminals(); ++r) out.push_back(g.names[g.terminals[r]]);
  return out;
}

// ---- instances --------------------------------------------------------------

inline json instance_to_json(const Multigraph& g) {
  json j;
  j["vertices"] = g.names;
  j["edges"] = json::array();
  for (const auto& [a, b] : g.edges) j["edges"].push_back({g.names[a], g.names[b]});
  j["terminals"] = ground_names(g);
  if (!g.partition_specs.empty()) {
    json p = json::object();
    for (const auto& [name, classes] : g.partition_specs) p[name] = classes;
    j["partitions"] = p;
  }
  return j;
}

inline Multigraph instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance: expected an object");
  try {
    InstanceSpec spec;
    spec.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("instance: each edge must be a [u, v] pair");
      spec.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    spec.terminals = j.at("terminals").get<std::vector<std::string>>();
    if (j.contains("partitions"))
      for (const auto& [name, classes] : j.at("partitions").items())
        spec.partitions[name] = classes.get<std::vector<std::vector<std::string>>>();
    return build_graph(spec);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
}

// ---- vectors over the terminal set -----------------------------------------

inline json demand_to_json(const Multigraph& g, const DemandVector& m) {
  json j = json::object();
  for (int r = 0; r < g.num_terminals(); ++r) j[g.names[g.terminals[r]]] = m.at(r);
  return j;
}

inline DemandVector demand_from_json(const Multigraph& g, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("demand: expected {terminal: integer}");
  DemandVector m;
  for (int r = 0; r < g.num_terminals(); ++r) {
    const std::string& name = g.names[g.terminals[r]];
    if (!j.contains(name))
      throw std::invalid_argument("demand: missing terminal '" + name + "'");
    if (!j.at(name).is_number_integer())
      throw std::invalid_argument("demand: value for '" + name + "' must be an integer");
    m.push_back(j.at(name).get<int>());
  }
  if (j.size() != static_cast<size_t>(g.num_terminals()))
    throw std::invalid_argument("demand: object mentions a non-terminal key");
  return m;
}

inline json rational_point_to_json(const Multigraph& g, const RationalVector& x) {
  json j = json::object();
  for (int r = 0; r < g.num_terminals(); ++r)
    j[g.names[g.terminals[r]]] = rational_to_string(x.at(r));
  return j;
}

/// Accepts integers or "p/q" strings per terminal; used for points and for
/// weight vectors (negatives allowed).
inline RationalVector rational_point_from_json(const Multigraph& g, const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("point: expected {terminal: integer or \"p/q\"}");
  RationalVector x;
  for (int r = 0; r < g.num_terminals(); ++r) {
    const std::string& name = g.names[g.terminals[r]];
    if (!j.contains(name)) throw std::invalid_argument("point: missing terminal '" + name + "'");
    const json& v = j.at(name);
    if (v.is_number_integer()) x.push_back(Rational(v.get<long long>()));
    else if (v.is_string()) x.push_back(parse_rational(v.get<std::string>()));
    else throw std::invalid_argument("point: value for '" + name + "' must be int or \"p/q\"");
  }
  if (j.size() != static_cast<size_t>(g.num_terminals()))
    throw std::invalid_argument("point: object mentions a non-terminal key");
  return x;
}

// ---- paths and systems ------------------------------------------------------

inline json path_to_json(const Multigraph& g, const TPath& p) {
  json j;
  j["vertices"] = json::array();
  for (int v : p.vertices) j["vertices"].push_back(g.names.at(v));
  j["edges"] = p.edges;
  return j;
}

inline TPath path_from_json(const Multigraph& g, const json& j) {
  try {
    TPath p;
    for (const auto& name : j.at("vertices")) {
      auto v = g.find_vertex(name.get<std::string>());
      if (!v)
        throw std::invalid_argument("path: unknown vertex '" + name.get<std::string>() + "'");
      p.vertices.push_back(*v);
    }
    p.edges = j.at("edges").get<std::vector<int>>();
    return p;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("path: ") + e.what());
  }
}

inline json system_to_json(const Multigraph& g, const PathSystem& s) {
  json j;
  j["mode"] = to_string(s.mode);
  j["paths"] = json::array();
  for (const auto& p : s.paths) j["paths"].push_back(path_to_json(g, p));
  return j;
}

inline PathSystem system_from_json(const Multigraph& g, const json& j) {
  try {
    PathSystem s;
    s.mode = mode_from_string(j.at("mode").get<std::string>());
    for (const auto& p : j.at("paths")) s.paths.push_back(path_from_json(g, p));
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("system: ") + e.what());
  }
}

// ---- polyhedral objects -----------------------------------------------------

inline json mask_to_names(const Multigraph& g, uint32_t mask) {
  json out = json::array();
  for (int r = 0; r < g.num_terminals(); ++r)
    if ((mask >> r) & 1) out.push_back(g.names[g.terminals[r]]);
  return out;
}

inline json inequality_to_json(const Multigraph& g, const Inequality& r) {
  json j;
  j["A"] = mask_to_names(g, r.a_mask);
  j["B"] = mask_to_names(g, r.b_mask);
  j["bound"] = r.bound;
  return j;
}

inline json rows_to_json(const Multigraph& g, const ReducedInequalitySystem& sys) {
  json out = json::array();
  for (const auto& r : sys.rows) out.push_back(inequality_to_json(g, r));
  return out;
}

inline json vertices_to_json(const Multigraph& g, const std::vector<RationalVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(rational_point_to_json(g, v));
  return out;
}

inline json pair_function_to_json(const Multigraph& g, const PairFunction& f) {
  json out = json::array();
  for (const auto& [key, value] : f.values) {
    json row;
    row["A"] = mask_to_names(g, key.first);
    row["B"] = mask_to_names(g, key.second);
    row["value"] = rational_to_string(value);
    out.push_back(std::move(row));
  }
  return out;
}

// ---- exchange results -------------------------------------------------------

inline json trace_to_json(const std::vector<TraceRecord>& trace) {
  json out = json::array();
  for (const auto& t : trace) {
    json row;
    row["depth"] = t.depth;
    row["rule"] = t.rule;
    row["terminal"] = t.terminal;
    row["path_edges"] = t.path_edges;
    row["parameter"] = t.parameter;
    out.push_back(std::move(row));
  }
  return out;
}

inline json exchange_result_to_json(const Multigraph& g, const ExchangeResult& r) {
  json j;
  j["first_step_feasible"] = r.first_step_feasible();
  j["second"] = r.second ? json(step_to_string(*r.second, ground_names(g))) : json(nullptr);
  j["witness"] = system_to_json(g, r.witness);
  j["trace"] = trace_to_json(r.trace);
  return j;
}

}  // namespace tpj
