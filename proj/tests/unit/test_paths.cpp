#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "tpj/families.hpp"
#include "tpj/paths.hpp"

using namespace tpj;

TEST_CASE("strict path enumeration matches a direct recursion", "[paths]") {
  for (const auto& ni : named_instances()) {
    auto lib = oracle::canonical_set(ni.graph, enumerate_t_paths(ni.graph));
    auto ref = oracle::all_strict_paths(ni.graph);
    INFO(ni.name);
    CHECK(lib == ref);
  }
}

TEST_CASE("loose path enumeration matches a direct recursion", "[paths]") {
  for (const auto& ni : named_instances()) {
    auto lib = oracle::canonical_set(ni.graph, enumerate_linking_paths(ni.graph));
    auto ref = oracle::all_loose_paths(ni.graph);
    INFO(ni.name);
    CHECK(lib == ref);
  }
}

TEST_CASE("partition filters keep exactly the separated pairs", "[paths]") {
  Multigraph g = star();
  TerminalPartition split = partition_by_name(g, "split");
  auto lib = oracle::canonical_set(g, enumerate_t_paths(g, &split));
  auto ref = oracle::all_strict_paths(g, &split);
  CHECK(lib == ref);
  // b and c share a class, so only a-b and a-c survive out of three paths
  CHECK(enumerate_t_paths(g).size() == 3);
  CHECK(enumerate_t_paths(g, &split).size() == 2);
}

TEST_CASE("frozen path counts on the named instances", "[paths]") {
  auto count = [](const Multigraph& g) { return enumerate_t_paths(g).size(); };
  CHECK(count(single_edge()) == 1);
  CHECK(count(double_edge()) == 2);
  CHECK(count(star()) == 3);
  CHECK(count(triangle()) == 3);
  CHECK(count(theta()) == 3);   // direct edge plus the two middle routes
  CHECK(count(square()) == 2);  // two arcs between opposite corners
  // loose enumeration may pass through terminals: triangle gains a-b via c etc.
  CHECK(enumerate_linking_paths(triangle()).size() == 6);
}

TEST_CASE("strict paths reject interior terminals, loose paths accept them", "[paths]") {
  Multigraph g = triangle();
  int a = g.index_of.at("a"), b = g.index_of.at("b"), c = g.index_of.at("c");
  int ab = -1, bc = -1, ca = -1;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges[e];
    if ((u == a && v == b) || (u == b && v == a)) ab = e;
    if ((u == b && v == c) || (u == c && v == b)) bc = e;
    if ((u == c && v == a) || (u == a && v == c)) ca = e;
  }
  TPath through{{a, c, b}, {ca, bc}};
  CHECK_FALSE(validate_t_path(g, through).ok);
  CHECK(validate_linking_path(g, through).ok);
  TPath direct{{a, b}, {ab}};
  CHECK(validate_t_path(g, direct).ok);
}

TEST_CASE("path validation rejects broken sequences", "[paths]") {
  Multigraph g = star();
  int a = g.index_of.at("a"), b = g.index_of.at("b"), v = g.index_of.at("v");
  int av = -1, bv = -1;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [x, y] = g.edges[e];
    if (x == a || y == a) av = e;
    if (x == b || y == b) bv = e;
  }
  CHECK(validate_t_path(g, TPath{{a, v, b}, {av, bv}}).ok);
  // wrong edge for a hop
  CHECK_FALSE(validate_t_path(g, TPath{{a, v, b}, {av, av}}).ok);
  // endpoints must be distinct terminals
  CHECK_FALSE(validate_t_path(g, TPath{{a, v}, {av}}).ok);
  CHECK_FALSE(validate_t_path(g, TPath{{v, a}, {av}}).ok);
  // repeated vertex
  CHECK_FALSE(validate_t_path(g, TPath{{a, v, a}, {av, av}}).ok);
  // empty
  CHECK_FALSE(validate_t_path(g, TPath{}).ok);
}

TEST_CASE("disjointness distinguishes the two modes", "[paths]") {
  Multigraph g = theta();
  auto paths = enumerate_t_paths(g);
  REQUIRE(paths.size() == 3);
  // the two length-2 routes share no edge but that is all we need for edge mode
  const TPath *viaX = nullptr, *viaY = nullptr;
  for (const auto& p : paths) {
    if (p.length() != 2) continue;
    for (int v : p.vertices) {
      if (g.names[v] == "x") viaX = &p;
      if (g.names[v] == "y") viaY = &p;
    }
  }
  REQUIRE(viaX != nullptr);
  REQUIRE(viaY != nullptr);
  CHECK(are_disjoint(g, *viaX, *viaY, Mode::edge));
  CHECK(are_disjoint(g, *viaX, *viaY, Mode::vertex));

  // parallel direct edges are disjoint in both modes: no shared edge and no
  // interior at all (endpoints never count as shared vertices)
  Multigraph de = double_edge();
  auto dep = enumerate_t_paths(de);
  REQUIRE(dep.size() == 2);
  CHECK(are_disjoint(de, dep[0], dep[1], Mode::edge));
  CHECK(are_disjoint(de, dep[0], dep[1], Mode::vertex));
  CHECK_FALSE(are_disjoint(de, dep[0], dep[0], Mode::edge));
}

TEST_CASE("system validation checks paths, pairwise disjointness and demand", "[paths]") {
  Multigraph g = star();
  auto paths = enumerate_t_paths(g);
  PathSystem empty{.paths = {}, .mode = Mode::edge};
  CHECK(is_valid_system(g, empty));
  CHECK(demand_of(g, empty) == DemandVector{0, 0, 0});

  PathSystem one{.paths = {paths[0]}, .mode = Mode::edge};
  CHECK(is_valid_system(g, one));

  PathSystem clash{.paths = {paths[0], paths[0]}, .mode = Mode::edge};
  CHECK_FALSE(is_valid_system(g, clash));

  PathSystem vclash{.paths = {paths[0], paths[1]}, .mode = Mode::vertex};
  CHECK_FALSE(is_valid_system(g, vclash));  // both spokes pass through the hub
}

TEST_CASE("demand counts endpoints by terminal rank", "[paths]") {
  Multigraph g = triangle();
  auto paths = enumerate_t_paths(g);
  PathSystem all{.paths = paths, .mode = Mode::edge};
  REQUIRE(is_valid_system(g, all));
  CHECK(demand_of(g, all) == DemandVector{2, 2, 2});
}

TEST_CASE("transitions record end edges at terminals and edge pairs inside", "[paths]") {
  Multigraph g = triangle();
  auto paths = enumerate_t_paths(g);
  // a single-edge path has one terminal transition at each endpoint
  auto tr1 = transitions_of(paths[0]);
  REQUIRE(tr1.size() == 2);
  for (const auto& t : tr1) {
    CHECK(t.at_terminal);
    CHECK(t.b == paths[0].edges.front());
  }
  auto tr_all = transitions_of(paths);
  CHECK(tr_all.size() == 6);
  CHECK(transition_difference(paths, paths) == 0);
  CHECK(transition_difference(paths, {paths[0]}) == 4);
  CHECK(transition_difference({paths[0]}, paths) == 0);

  // a two-edge path additionally records its interior edge pair
  Multigraph s = star();
  auto sp = enumerate_t_paths(s);
  auto tr2 = transitions_of(sp[0]);
  REQUIRE(sp[0].length() == 2);
  CHECK(tr2.size() == 3);
  int interior = 0;
  for (const auto& t : tr2)
    if (!t.at_terminal) {
      ++interior;
      CHECK(t.a == std::min(sp[0].edges[0], sp[0].edges[1]));
      CHECK(t.b == std::max(sp[0].edges[0], sp[0].edges[1]));
    }
  CHECK(interior == 1);
}
