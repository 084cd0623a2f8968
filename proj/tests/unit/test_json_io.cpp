#include <catch2/catch_amalgamated.hpp>

#include "tpj/families.hpp"
#include "tpj/json_io.hpp"
#include "tpj/packing.hpp"
#include "tpj/polytope.hpp"

using namespace tpj;

TEST_CASE("instances round-trip through their serialized form", "[jsonio]") {
  for (const auto& ni : named_instances()) {
    json j = instance_to_json(ni.graph);
    Multigraph back = instance_from_json(j);
    INFO(ni.name);
    CHECK(back == ni.graph);
    CHECK(instance_to_json(back) == j);
  }
}

TEST_CASE("instance parsing validates structure", "[jsonio]") {
  json good = instance_to_json(star());
  json bad = good;
  bad.erase("vertices");
  CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
  bad = good;
  bad["edges"].push_back(json::array({"a"}));
  CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
  bad = good;
  bad["terminals"].push_back("nope");
  CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
  bad = good;
  bad["partitions"]["odd"] = json::array({json::array({"a"})});
  CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
}

TEST_CASE("demand vectors serialize as name-keyed objects", "[jsonio]") {
  Multigraph g = star();
  DemandVector m{2, 0, 1};
  json j = demand_to_json(g, m);
  CHECK(j == json({{"a", 2}, {"b", 0}, {"c", 1}}));
  CHECK(demand_from_json(g, j) == m);
  CHECK_THROWS_AS(demand_from_json(g, json({{"a", 1}})), std::invalid_argument);
  CHECK_THROWS_AS(demand_from_json(g, json({{"a", 1}, {"b", 0}, {"z", 1}})),
                  std::invalid_argument);
}

TEST_CASE("rational points accept integers and p/q strings", "[jsonio]") {
  Multigraph g = star();
  RationalVector x{Rational(1, 2), Rational(3), Rational(0)};
  json j = rational_point_to_json(g, x);
  CHECK(j["a"] == "1/2");
  CHECK(j["b"] == "3/1");
  CHECK(rational_point_from_json(g, j) == x);
  json mixed = {{"a", 1}, {"b", "2/4"}, {"c", 0}};
  RationalVector got = rational_point_from_json(g, mixed);
  CHECK(got == RationalVector{Rational(1), Rational(1, 2), Rational(0)});
  CHECK_THROWS_AS(rational_point_from_json(g, json({{"a", "1/0"}, {"b", 0}, {"c", 0}})),
                  std::invalid_argument);
}

TEST_CASE("paths and systems round-trip", "[jsonio]") {
  Multigraph g = triangle();
  auto w = realize(g, Mode::edge, {2, 2, 2});
  REQUIRE(w);
  json j = system_to_json(g, *w);
  PathSystem back = system_from_json(g, j);
  CHECK(back.mode == w->mode);
  CHECK(back.paths == w->paths);
  CHECK(is_valid_system(g, back));
  json jp = path_to_json(g, w->paths[0]);
  CHECK(path_from_json(g, jp) == w->paths[0]);
}

TEST_CASE("inequalities and vertex lists surface names not indices", "[jsonio]") {
  Multigraph g = single_edge();
  auto sys = reduced_inequalities(g, singleton_partition(g));
  json rows = rows_to_json(g, sys);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 4);
  bool saw_cap = false;
  for (const auto& r : rows)
    if (r["A"] == json::array({"a"}) && r["B"] == json::array() && r["bound"] == 1)
      saw_cap = true;
  CHECK(saw_cap);
  json vs = vertices_to_json(g, enumerate_vertices(sys));
  REQUIRE(vs.size() == 2);
  CHECK(vs[0]["a"] == "0/1");
  CHECK(vs[1]["a"] == "1/1");
}

TEST_CASE("rationals parse strictly", "[jsonio]") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(rational_to_string(Rational(5, 10)) == "1/2");
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("exchange results serialize their trace", "[jsonio]") {
  Multigraph g = star();
  auto p1 = realize(g, Mode::edge, {1, 1, 0});
  auto p2 = realize(g, Mode::edge, {0, 1, 1});
  auto r = exchange_step_edge(g, *p1, *p2, Step{Step::Kind::decrement, 0});
  json j = exchange_result_to_json(g, r);
  CHECK(j["first_step_feasible"] == false);
  CHECK(j["second"] == "+c");
  REQUIRE(j["trace"].is_array());
  CHECK(j["trace"].size() == 2);
  CHECK(j["trace"][0]["rule"] == "case1-delete-recurse");
  for (const auto& t : j["trace"]) CHECK(t.contains("parameter"));
}
