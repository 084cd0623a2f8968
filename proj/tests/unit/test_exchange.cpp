#include <catch2/catch_amalgamated.hpp>
#include <climits>
#include <string>
#include <vector>

#include "tpj/exchange.hpp"
#include "tpj/families.hpp"
#include "tpj/packing.hpp"

using namespace tpj;

namespace {

std::vector<std::string> rules_of(const ExchangeResult& r) {
  std::vector<std::string> out;
  for (const auto& t : r.trace) out.push_back(t.rule);
  return out;
}

// Re-verify everything the procedure promises, independently of its own
// certification: the witness is a valid system, its demand matches the step
// equation, the second step is legal, and the trace parameter strictly drops.
void verify(const Multigraph& g, const FiniteJumpSystem& j, const DemandVector& m1,
            const DemandVector& m2, const Step& sigma, const ExchangeResult& r) {
  REQUIRE(is_valid_system(g, r.witness));
  DemandVector x1 = tpj::apply(sigma, m1);
  if (r.second) {
    CHECK(legal_step(*r.second, x1, m2));
    DemandVector x2 = tpj::apply(*r.second, x1);
    CHECK(demand_of(g, r.witness) == x2);
    CHECK(j.contains(x2));
  } else {
    CHECK(demand_of(g, r.witness) == x1);
    CHECK(j.contains(x1));
  }
  int prev = INT_MAX;
  for (const auto& t : r.trace) {
    CHECK(t.parameter < prev);
    prev = t.parameter;
  }
}

}  // namespace

TEST_CASE("frozen hub-and-spokes exchanges", "[exchange]") {
  Multigraph g = star();
  auto p1 = realize(g, Mode::edge, {1, 1, 0});
  auto p2 = realize(g, Mode::edge, {0, 1, 1});
  REQUIRE(p1);
  REQUIRE(p2);

  SECTION("deleting at a forces the compensating addition at c") {
    auto r = exchange_step_edge(g, *p1, *p2, Step{Step::Kind::decrement, 0});
    REQUIRE(r.second);
    CHECK(*r.second == Step{Step::Kind::increment, 2});
    CHECK(rules_of(r) == std::vector<std::string>{"case1-delete-recurse", "case2-add"});
    CHECK(demand_of(g, r.witness) == DemandVector{0, 1, 1});
  }

  SECTION("adding at c reroutes through the shared spoke and drops a") {
    auto r = exchange_step_edge(g, *p1, *p2, Step{Step::Kind::increment, 2});
    REQUIRE(r.second);
    CHECK(*r.second == Step{Step::Kind::decrement, 0});
    CHECK(rules_of(r) == std::vector<std::string>{"case2-reroute"});
    CHECK(demand_of(g, r.witness) == DemandVector{0, 1, 1});
  }

  SECTION("staying put returns the first system unchanged") {
    auto r = exchange_step_edge(g, *p1, *p1, Step{Step::Kind::stay, -1});
    CHECK(r.first_step_feasible());
    CHECK(demand_of(g, r.witness) == DemandVector{1, 1, 0});
  }
}

TEST_CASE("exchange rejects malformed calls", "[exchange]") {
  Multigraph g = star();
  auto p1 = realize(g, Mode::edge, {1, 1, 0});
  auto p2 = realize(g, Mode::edge, {0, 1, 1});
  // vertex-mode systems are not what the procedure is stated for
  PathSystem v1 = *p1;
  v1.mode = Mode::vertex;
  PathSystem v2 = *p2;
  v2.mode = Mode::vertex;
  CHECK_THROWS_AS(exchange_step_edge(g, v1, v2, Step{Step::Kind::decrement, 0}),
                  std::invalid_argument);
  // an illegal first step (increment where m1 already exceeds m2)
  CHECK_THROWS_AS(exchange_step_edge(g, *p1, *p2, Step{Step::Kind::increment, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(exchange_step_edge(g, *p1, *p2, Step{Step::Kind::stay, -1}),
                  std::invalid_argument);
  // a system that does not match the graph
  PathSystem broken = *p1;
  broken.paths[0].edges[0] = 2;
  CHECK_THROWS_AS(exchange_step_edge(g, broken, *p2, Step{Step::Kind::decrement, 0}),
                  std::invalid_argument);
}

static void full_differential(const Multigraph& g) {
  auto j = enumerate_feasible(g, Mode::edge);
  std::vector<PathSystem> realized;
  for (const auto& m : j.vectors) realized.push_back(*realize(g, Mode::edge, m));
  for (size_t i = 0; i < j.vectors.size(); ++i)
    for (size_t k = 0; k < j.vectors.size(); ++k)
      for (const auto& sigma : steps_toward(j.vectors[i], j.vectors[k])) {
        auto r = exchange_step_edge(g, realized[i], realized[k], sigma);
        verify(g, j, j.vectors[i], j.vectors[k], sigma, r);
        auto r2 = exchange_step_generic(g, Mode::edge, j.vectors[i], j.vectors[k], sigma);
        verify(g, j, j.vectors[i], j.vectors[k], sigma, r2);
        // the search-based oracle realizes the single step whenever possible,
        // so the constructive procedure may not claim it is impossible
        if (r.first_step_feasible()) CHECK(r2.first_step_feasible());
      }
}

TEST_CASE("constructive and search-based exchanges verify on every pair", "[exchange]") {
  full_differential(star());
  full_differential(triangle());
  full_differential(square());
  full_differential(doubled_star());
}

TEST_CASE("rerouting survives a tail that collides with the prefix", "[exchange]") {
  // Hand-built instance where the rerouted walk meets the other system's path
  // in the middle, and the spliced replacement must stay simple even though
  // the tail re-enters the prefix.
  Multigraph g = build_graph(
      {"s", "x", "u", "v", "t2", "q2", "q", "y"},
      {{"s", "x"}, {"x", "u"}, {"u", "v"}, {"v", "t2"}, {"q2", "u"}, {"v", "x"}, {"x", "q"},
       {"s", "y"}, {"y", "u"}},
      {"s", "q", "q2", "t2"});
  full_differential(g);
}

TEST_CASE("search-based exchange picks the lowest-ranked compensation", "[exchange]") {
  Multigraph g = star();
  auto r = exchange_step_generic(g, Mode::edge, {1, 1, 0}, {0, 1, 1},
                                 Step{Step::Kind::decrement, 0});
  REQUIRE(r.second);
  // from (0,1,0) toward (0,1,1) only +c is available
  CHECK(*r.second == Step{Step::Kind::increment, 2});

  auto r2 = exchange_step_generic(g, Mode::edge, {1, 1, 0}, {0, 0, 0},
                                  Step{Step::Kind::decrement, 0});
  REQUIRE(r2.second);
  // from (0,1,0) toward (0,0,0) the only move is -b
  CHECK(*r2.second == Step{Step::Kind::decrement, 1});
}

TEST_CASE("search-based exchange covers the vertex mode", "[exchange]") {
  Multigraph g = square();
  auto j = enumerate_feasible(g, Mode::vertex);
  for (size_t i = 0; i < j.vectors.size(); ++i)
    for (size_t k = 0; k < j.vectors.size(); ++k)
      for (const auto& sigma : steps_toward(j.vectors[i], j.vectors[k])) {
        auto r = exchange_step_generic(g, Mode::vertex, j.vectors[i], j.vectors[k], sigma);
        REQUIRE(is_valid_system(g, r.witness));
        DemandVector x1 = tpj::apply(sigma, j.vectors[i]);
        if (r.second) {
          CHECK(legal_step(*r.second, x1, j.vectors[k]));
          CHECK(demand_of(g, r.witness) == tpj::apply(*r.second, x1));
        } else {
          CHECK(demand_of(g, r.witness) == x1);
        }
      }
}
