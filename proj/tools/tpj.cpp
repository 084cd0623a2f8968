// Command-line front end: every library capability as a subcommand with
// machine-readable output.
//
// Exit codes: 0 = success / property verified, 1 = a checked property failed
// (counterexample found), 2 = usage or input error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpj/tpj.hpp"

namespace {

using tpj::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

struct Run {
  std::string command;
  std::string digest;  // of the instance file, when one was read
  bool json_output = false;
  json result = json::object();
  bool ok = true;
  std::vector<std::string> lines;  // human-readable report
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void note(const std::string& line) { lines.push_back(line); }

  int finish(int code) {
    if (json_output) {
      json report;
      report["command"] = command;
      if (!digest.empty()) report["input_digest"] = digest;
      report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
      report["ok"] = ok;
      report["result"] = result;
      std::cout << report.dump(2) << "\n";
    } else {
      for (const auto& l : lines) std::cout << l << "\n";
    }
    return code;
  }
};

tpj::Multigraph load_instance(const std::string& path, Run& run) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  run.digest = fnv1a_hex(buf.str());
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw std::invalid_argument("instance file is not valid JSON: " + std::string(e.what()));
  }
  return tpj::instance_from_json(j);
}

json parse_inline_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string fmt_demand(const tpj::Multigraph& g, const tpj::DemandVector& m) {
  std::string s = "(";
  for (int r = 0; r < g.num_terminals(); ++r) {
    if (r) s += ", ";
    s += g.names[g.terminals[r]] + "=" + std::to_string(m[r]);
  }
  return s + ")";
}

std::string fmt_point(const tpj::Multigraph& g, const tpj::RationalVector& x) {
  std::string s = "(";
  for (int r = 0; r < g.num_terminals(); ++r) {
    if (r) s += ", ";
    s += g.names[g.terminals[r]] + "=" + tpj::rational_to_string(x[r]);
  }
  return s + ")";
}

const tpj::TerminalPartition* maybe_partition(const tpj::Multigraph& g, const std::string& name,
                                              std::optional<tpj::TerminalPartition>& storage) {
  if (name.empty()) return nullptr;
  storage = tpj::partition_by_name(g, name);
  return &*storage;
}

// ---- subcommand bodies ------------------------------------------------------

int run_enumerate(Run& run, const tpj::Multigraph& g, tpj::Mode mode,
                  const std::string& partition) {
  std::optional<tpj::TerminalPartition> tau;
  auto j = tpj::enumerate_feasible(g, mode, maybe_partition(g, partition, tau));
  run.result["ground"] = tpj::ground_names(g);
  run.result["count"] = j.vectors.size();
  run.result["vectors"] = json::array();
  for (const auto& m : j.vectors) run.result["vectors"].push_back(tpj::demand_to_json(g, m));
  run.note("feasible vectors: " + std::to_string(j.vectors.size()));
  for (const auto& m : j.vectors) run.note("  " + fmt_demand(g, m));
  return kOk;
}

int run_max_packing(Run& run, const tpj::Multigraph& g, tpj::Mode mode,
                    const std::string& partition) {
  std::optional<tpj::TerminalPartition> tau;
  auto r = tpj::max_packing(g, mode, maybe_partition(g, partition, tau));
  if (!tpj::is_valid_system(g, r.system) ||
      static_cast<int>(r.system.paths.size()) != r.count) {
    run.ok = false;
    run.result["error"] = "reported maximum is not certified by its witness";
    run.note("witness failed verification");
    return kViolation;
  }
  run.result["count"] = r.count;
  run.result["system"] = tpj::system_to_json(g, r.system);
  run.result["verified"] = true;
  run.note("maximum packing: " + std::to_string(r.count) + " paths (witness verified)");
  return kOk;
}

int run_member(Run& run, const tpj::Multigraph& g, tpj::Mode mode, const std::string& demand,
               const std::string& via) {
  auto m = tpj::demand_from_json(g, parse_inline_json(demand, "--demand"));
  bool did_search = false, did_reduction = false;
  bool search_ans = false, reduction_ans = false;
  if (via == "search" || via == "both") {
    did_search = true;
    auto w = tpj::realize(g, mode, m);
    search_ans = w.has_value();
    if (w) run.result["witness"] = tpj::system_to_json(g, *w);
  }
  if (via == "reduction" || via == "both") {
    did_reduction = true;
    reduction_ans = tpj::member_via_reduction(g, mode, m);
  }
  run.result["demand"] = tpj::demand_to_json(g, m);
  if (did_search) run.result["member_search"] = search_ans;
  if (did_reduction) run.result["member_reduction"] = reduction_ans;
  bool answer = did_search ? search_ans : reduction_ans;
  run.result["member"] = answer;
  run.note("demand " + fmt_demand(g, m) + ": " + (answer ? "feasible" : "infeasible"));
  if (did_search && did_reduction && search_ans != reduction_ans) {
    run.result["divergence"] = true;
    run.note("note: the terminal-copy reduction and the direct search disagree "
             "(reduction admits routes through terminals)");
  }
  return kOk;
}

int run_check_jump(Run& run, const tpj::Multigraph& g, tpj::Mode mode,
                   const std::string& partition) {
  std::optional<tpj::TerminalPartition> tau;
  auto j = tpj::enumerate_feasible(g, mode, maybe_partition(g, partition, tau));
  auto v = tpj::check_two_step_axiom(j);
  auto even = tpj::check_even_sum(j);
  run.result["size"] = j.vectors.size();
  run.result["axiom_holds"] = v.ok();
  run.result["even_sums"] = even.ok();
  if (!v.ok()) {
    run.ok = false;
    run.result["counterexample"] = {{"x", tpj::demand_to_json(g, v.counterexample->x)},
                                    {"y", tpj::demand_to_json(g, v.counterexample->y)},
                                    {"first_step", tpj::demand_to_json(g, v.counterexample->first)}};
    run.note("axiom VIOLATED at x=" + fmt_demand(g, v.counterexample->x) +
             " y=" + fmt_demand(g, v.counterexample->y));
    return kViolation;
  }
  run.note("axiom verified, |J|=" + std::to_string(j.vectors.size()));
  return kOk;
}

int run_exchange(Run& run, const tpj::Multigraph& g, const std::string& m1s,
                 const std::string& m2s, const std::string& step, bool constructive) {
  auto m1 = tpj::demand_from_json(g, parse_inline_json(m1s, "--m1"));
  auto m2 = tpj::demand_from_json(g, parse_inline_json(m2s, "--m2"));
  tpj::Step sigma = tpj::parse_step(step, tpj::ground_names(g));
  tpj::ExchangeResult r;
  if (constructive) {
    auto p1 = tpj::realize(g, tpj::Mode::edge, m1);
    auto p2 = tpj::realize(g, tpj::Mode::edge, m2);
    if (!p1) throw std::invalid_argument("--m1 is not edge-realizable");
    if (!p2) throw std::invalid_argument("--m2 is not edge-realizable");
    r = tpj::exchange_step_edge(g, *p1, *p2, sigma);
  } else {
    r = tpj::exchange_step_generic(g, tpj::Mode::edge, m1, m2, sigma);
  }
  run.result = tpj::exchange_result_to_json(g, r);
  run.result["constructive"] = constructive;
  if (r.second)
    run.note("second step " + tpj::step_to_string(*r.second, tpj::ground_names(g)) +
             " restores feasibility (witness verified)");
  else
    run.note("the step is feasible on its own (witness verified)");
  return kOk;
}

int run_polytope_rows(Run& run, const tpj::Multigraph& g, const tpj::TerminalPartition& tau) {
  auto sys = tpj::reduced_inequalities(g, tau);
  run.result["rows"] = tpj::rows_to_json(g, sys);
  run.result["count"] = sys.rows.size();
  run.note("reduced inequalities: " + std::to_string(sys.rows.size()));
  return kOk;
}

int run_polytope_vertices(Run& run, const tpj::Multigraph& g,
                          const tpj::TerminalPartition& tau) {
  auto sys = tpj::reduced_inequalities(g, tau);
  auto vs = tpj::enumerate_vertices(sys);
  bool integral = true;
  for (const auto& v : vs) integral = integral && tpj::is_integral(v);
  run.result["vertices"] = tpj::vertices_to_json(g, vs);
  run.result["count"] = vs.size();
  run.result["all_integral"] = integral;
  run.note("vertices: " + std::to_string(vs.size()) +
           (integral ? " (all integral)" : " (FRACTIONAL vertex present)"));
  // integrality of this polytope is a theorem for singleton-free instances;
  // surface a violation loudly rather than asserting it here
  return integral ? kOk : kViolation;
}

int run_polytope_member(Run& run, const tpj::Multigraph& g, const tpj::TerminalPartition& tau,
                        const std::string& point) {
  auto x = tpj::rational_point_from_json(g, parse_inline_json(point, "--point"));
  auto sys = tpj::reduced_inequalities(g, tau);
  bool inside = tpj::polytope_member(sys, x);
  run.result["point"] = tpj::rational_point_to_json(g, x);
  run.result["inside"] = inside;
  run.note("point " + fmt_point(g, x) + (inside ? " is inside" : " is outside"));
  return kOk;
}

int run_polytope_support(Run& run, const tpj::Multigraph& g, const tpj::TerminalPartition& tau) {
  auto sys = tpj::reduced_inequalities(g, tau);
  auto f = tpj::support_pair_function(tpj::enumerate_vertices(sys), sys.num_terminals);
  run.result["support"] = tpj::pair_function_to_json(g, f);
  run.note("support function evaluated on " + std::to_string(f.values.size()) +
           " disjoint pairs");
  return kOk;
}

int run_polytope_bisubmodular(Run& run, const tpj::Multigraph& g,
                              const tpj::TerminalPartition& tau) {
  auto sys = tpj::reduced_inequalities(g, tau);
  auto f = tpj::support_pair_function(tpj::enumerate_vertices(sys), sys.num_terminals);
  auto v = tpj::check_bisubmodular(f);
  run.result["bisubmodular"] = v.ok();
  if (!v.ok()) {
    run.ok = false;
    run.result["violation"] = {{"A1", tpj::mask_to_names(g, v.violation->a1)},
                               {"B1", tpj::mask_to_names(g, v.violation->b1)},
                               {"A2", tpj::mask_to_names(g, v.violation->a2)},
                               {"B2", tpj::mask_to_names(g, v.violation->b2)},
                               {"lhs", tpj::rational_to_string(v.violation->lhs)},
                               {"rhs", tpj::rational_to_string(v.violation->rhs)}};
    run.note("bisubmodular inequality VIOLATED");
    return kViolation;
  }
  run.note("support function is bisubmodular");
  return kOk;
}

int run_polytope_relaxed(Run& run, const tpj::Multigraph& g, const tpj::TerminalPartition& tau,
                         const std::string& point) {
  auto x = tpj::rational_point_from_json(g, parse_inline_json(point, "--point"));
  auto packing = tpj::relaxed_feasible(g, tau, x);
  run.result["point"] = tpj::rational_point_to_json(g, x);
  run.result["feasible"] = packing.has_value();
  if (packing) {
    json lst = json::array();
    for (const auto& [p, lambda] : *packing)
      lst.push_back({{"path", tpj::path_to_json(g, p)},
                     {"weight", tpj::rational_to_string(lambda)}});
    run.result["packing"] = lst;
    run.note("fractionally routable with " + std::to_string(packing->size()) +
             " weighted paths");
  } else {
    run.note("no fractional routing exists");
  }
  return kOk;
}

int run_parity(Run& run, const tpj::Multigraph& g, const tpj::TerminalPartition& tau) {
  auto rep = tpj::parity_feasibility_check(g, tau);
  run.result["vacuous"] = rep.vacuous;
  run.result["points_checked"] = rep.points_checked;
  run.result["holds"] = rep.ok();
  if (rep.vacuous) {
    run.note("vacuous: a non-terminal vertex has odd degree");
    return kOk;
  }
  if (!rep.ok()) {
    run.ok = false;
    run.result["counterexample"] = tpj::demand_to_json(g, *rep.counterexample);
    run.note("parity claim VIOLATED at " + fmt_demand(g, *rep.counterexample));
    return kViolation;
  }
  run.note("verified on " + std::to_string(rep.points_checked) + " matching-parity points");
  return kOk;
}

int run_intersect(Run& run, const tpj::Multigraph& g, const std::string& t1,
                  const std::string& t2) {
  auto tau1 = tpj::partition_by_name(g, t1);
  auto tau2 = tpj::partition_by_name(g, t2);
  auto rep = tpj::intersect_and_check(g, tau1, tau2);
  run.result["rows"] = tpj::rows_to_json(g, rep.merged);
  run.result["vertices"] = tpj::vertices_to_json(g, rep.vertices);
  run.result["all_integral"] = rep.all_integral;
  run.result["max_sum"] = tpj::rational_to_string(rep.max_sum);
  run.result["max_sum_attained"] = rep.attainer.has_value();
  if (rep.attainer) run.result["attainer"] = tpj::demand_to_json(g, *rep.attainer);
  json flags = json::array();
  for (size_t i = 0; i < rep.vertices.size(); ++i)
    flags.push_back({{"vertex", tpj::rational_point_to_json(g, rep.vertices[i])},
                     {"attainable", rep.vertex_attainable[i]}});
  run.result["vertex_attainability"] = flags;  // conjectured, reported only
  if (!rep.theorem_ok()) {
    run.ok = false;
    run.note("intersection claim VIOLATED");
    return kViolation;
  }
  run.note("intersection has " + std::to_string(rep.vertices.size()) +
           " integral vertices; max coordinate sum " + tpj::rational_to_string(rep.max_sum) +
           " attained by a doubly-joined realization");
  for (size_t i = 0; i < rep.vertices.size(); ++i)
    if (!rep.vertex_attainable[i])
      run.note("reported: vertex " + fmt_point(g, rep.vertices[i]) +
               " is not itself attainable (conjecture instance)");
  return kOk;
}

int run_greedy(Run& run, const tpj::Multigraph& g, tpj::Mode mode, const std::string& weights) {
  auto w = tpj::rational_point_from_json(g, parse_inline_json(weights, "--weights"));
  auto j = tpj::enumerate_feasible(g, mode);
  auto r = tpj::greedy_optimize(j, w);
  run.result["vector"] = tpj::demand_to_json(g, r.optimum);
  run.result["value"] = tpj::rational_to_string(r.value);
  json order = json::array();
  for (int t : r.order) order.push_back(g.names[g.terminals[t]]);
  run.result["order"] = order;
  run.note("optimum " + fmt_demand(g, r.optimum) + " with value " +
           tpj::rational_to_string(r.value));
  return kOk;
}

int run_suite(Run& run, const std::string& family, uint32_t seed) {
  std::vector<tpj::CriterionResult> rs;
  auto want = [&](const std::string& key) { return family == "all" || family == key; };
  if (want("axioms")) {
    rs.push_back(tpj::criterion_edge_axiom());
    rs.push_back(tpj::criterion_vertex_axiom());
  }
  if (want("exchange")) rs.push_back(tpj::criterion_exchange());
  if (want("polytope")) rs.push_back(tpj::criterion_polytope());
  if (want("gap")) rs.push_back(tpj::criterion_gap_example());
  if (want("intersection")) rs.push_back(tpj::criterion_intersection());
  if (want("bisubmodular")) rs.push_back(tpj::criterion_bisubmodular());
  if (want("parity")) rs.push_back(tpj::criterion_parity());
  if (want("greedy")) rs.push_back(tpj::criterion_greedy(seed));
  if (want("reduction")) rs.push_back(tpj::criterion_reduction());
  if (rs.empty())
    throw std::invalid_argument("unknown family '" + family + "'");
  int failures = 0;
  json arr = json::array();
  for (const auto& r : rs) {
    if (!r.ok) ++failures;
    json e;
    e["name"] = r.name;
    e["ok"] = r.ok;
    e["checks"] = r.checks;
    e["findings"] = r.findings;
    if (!r.ok) e["detail"] = r.detail;
    arr.push_back(std::move(e));
    run.note(std::string(r.ok ? "PASS" : "FAIL") + "  " + r.name);
    if (!r.ok) run.note("      reason: " + r.detail);
    for (const auto& f : r.findings) run.note("      finding: " + f);
  }
  run.result["criteria"] = arr;
  run.result["failures"] = failures;
  run.ok = failures == 0;
  run.note(failures == 0 ? "all criteria passed"
                         : std::to_string(failures) + " criteria failed");
  return failures == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disjoint terminal-path packings, their jump systems, and the"
               " associated polyhedra - exact verification tools"};
  app.require_subcommand(1);
  app.fallthrough();  // lets global flags like --json follow the subcommand

  bool json_out = false;
  app.add_flag("--json", json_out, "emit a machine-readable JSON report");

  std::string input, partition, demand, point, weights, m1, m2, step, via = "search",
                                                                      t1, t2, family = "all";
  std::string mode_name = "edge";
  bool constructive = false;
  uint32_t seed = 0;

  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", input, "instance file (JSON)")->required();
  };
  auto add_mode = [&](CLI::App* c) {
    c->add_option("--mode", mode_name, "disjointness mode: edge|vertex")
        ->check(CLI::IsMember({"edge", "vertex"}));
  };

  auto* c_enum = app.add_subcommand("enumerate", "list every feasible demand vector");
  add_input(c_enum);
  add_mode(c_enum);
  c_enum->add_option("--partition", partition, "restrict paths to joined terminal pairs");

  auto* c_max = app.add_subcommand("max-packing", "maximum disjoint path packing");
  add_input(c_max);
  add_mode(c_max);
  c_max->add_option("--partition", partition, "restrict paths to joined terminal pairs");

  auto* c_mem = app.add_subcommand("member", "test whether a demand vector is realizable");
  add_input(c_mem);
  add_mode(c_mem);
  c_mem->add_option("--demand", demand, "demand vector as {terminal: int}")->required();
  c_mem->add_option("--via", via, "oracle: reduction|search|both")
      ->check(CLI::IsMember({"reduction", "search", "both"}));

  auto* c_jump = app.add_subcommand("check-jump", "verify the two-step axiom on the "
                                                  "feasible set");
  add_input(c_jump);
  add_mode(c_jump);
  c_jump->add_option("--partition", partition, "restrict paths to joined terminal pairs");

  auto* c_ex = app.add_subcommand("exchange", "compensate a unit step between two "
                                              "feasible vectors");
  add_input(c_ex);
  c_ex->add_option("--m1", m1, "starting demand vector (JSON)")->required();
  c_ex->add_option("--m2", m2, "target demand vector (JSON)")->required();
  c_ex->add_option("--step", step, "first step: +name, -name or stay")->required();
  c_ex->add_flag("--constructive", constructive,
                 "use the path-surgery procedure instead of search");

  auto* c_poly = app.add_subcommand("polytope", "polyhedral computations");
  c_poly->require_subcommand(1);
  auto* p_rows = c_poly->add_subcommand("rows", "reduced inequality system");
  auto* p_verts = c_poly->add_subcommand("vertices", "exact vertex enumeration");
  auto* p_mem = c_poly->add_subcommand("member", "membership test for a rational point");
  auto* p_sup = c_poly->add_subcommand("support", "support function on disjoint pairs");
  auto* p_bis = c_poly->add_subcommand("bisubmodular", "verify bisubmodularity of the support");
  auto* p_rel = c_poly->add_subcommand("relaxed", "fractional routing feasibility");
  for (auto* c : {p_rows, p_verts, p_mem, p_sup, p_bis, p_rel}) {
    add_input(c);
    c->add_option("--partition", partition, "terminal partition name")
        ->default_val("singletons");
  }
  p_mem->add_option("--point", point, "rational point as {terminal: int or \"p/q\"}")
      ->required();
  p_rel->add_option("--point", point, "rational point as {terminal: int or \"p/q\"}")
      ->required();

  auto* c_par = app.add_subcommand("parity-check", "realizability of matching-parity "
                                                   "integer points");
  add_input(c_par);
  c_par->add_option("--partition", partition, "terminal partition name")
      ->default_val("singletons");

  auto* c_int = app.add_subcommand("intersect", "intersect the polyhedra of two partitions");
  add_input(c_int);
  c_int->add_option("--t1", t1, "first partition name")->required();
  c_int->add_option("--t2", t2, "second partition name")->required();

  auto* c_greedy = app.add_subcommand("greedy", "maximize a linear objective over the "
                                                "feasible set");
  add_input(c_greedy);
  add_mode(c_greedy);
  c_greedy->add_option("--weights", weights, "weight vector as {terminal: int or \"p/q\"}")
      ->required();

  auto* c_suite = app.add_subcommand("suite", "run the verification battery");
  c_suite->add_option("--family", family,
                      "all|axioms|exchange|polytope|gap|intersection|bisubmodular|parity|"
                      "greedy|reduction");
  c_suite->add_option("--seed", seed, "seed for sampled weight vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  Run run;
  run.json_output = json_out;
  for (int i = 1; i < argc; ++i) run.command += std::string(i > 1 ? " " : "") + argv[i];

  try {
    tpj::Mode mode = tpj::mode_from_string(mode_name);
    if (c_suite->parsed()) return run.finish(run_suite(run, family, seed));
    tpj::Multigraph g = load_instance(input, run);
    if (c_enum->parsed()) return run.finish(run_enumerate(run, g, mode, partition));
    if (c_max->parsed()) return run.finish(run_max_packing(run, g, mode, partition));
    if (c_mem->parsed()) return run.finish(run_member(run, g, mode, demand, via));
    if (c_jump->parsed()) return run.finish(run_check_jump(run, g, mode, partition));
    if (c_ex->parsed()) return run.finish(run_exchange(run, g, m1, m2, step, constructive));
    if (c_poly->parsed()) {
      tpj::TerminalPartition tau = tpj::partition_by_name(g, partition);
      if (p_rows->parsed()) return run.finish(run_polytope_rows(run, g, tau));
      if (p_verts->parsed()) return run.finish(run_polytope_vertices(run, g, tau));
      if (p_mem->parsed()) return run.finish(run_polytope_member(run, g, tau, point));
      if (p_sup->parsed()) return run.finish(run_polytope_support(run, g, tau));
      if (p_bis->parsed()) return run.finish(run_polytope_bisubmodular(run, g, tau));
      if (p_rel->parsed()) return run.finish(run_polytope_relaxed(run, g, tau, point));
    }
    if (c_par->parsed()) {
      tpj::TerminalPartition tau = tpj::partition_by_name(g, partition);
      return run.finish(run_parity(run, g, tau));
    }
    if (c_int->parsed()) return run.finish(run_intersect(run, g, t1, t2));
    if (c_greedy->parsed()) return run.finish(run_greedy(run, g, mode, weights));
    std::cerr << "no subcommand dispatched\n";
    return kUsage;
  } catch (const tpj::theorem_violation& e) {
    run.ok = false;
    run.result["error"] = e.what();
    run.result["instance_dump"] = e.dump;
    run.note(std::string("PROPERTY VIOLATION: ") + e.what());
    return run.finish(kViolation);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kViolation;
  }
}
