#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "support/oracles.hpp"
#include "tpj/jump.hpp"

using namespace tpj;

static FiniteJumpSystem sys(std::vector<DemandVector> vs, int width) {
  std::vector<std::string> ground;
  for (int i = 0; i < width; ++i) ground.push_back(std::string(1, char('a' + i)));
  return make_system(std::move(ground), std::move(vs));
}

TEST_CASE("steps apply and report legality", "[jump]") {
  DemandVector x{1, 2}, y{3, 2};
  Step up{Step::Kind::increment, 0};
  Step down{Step::Kind::decrement, 0};
  Step stay{Step::Kind::stay, -1};
  CHECK(tpj::apply(up, x) == DemandVector{2, 2});
  CHECK(tpj::apply(down, x) == DemandVector{0, 2});
  CHECK(tpj::apply(stay, x) == x);
  CHECK(legal_step(up, x, y));        // moves toward y
  CHECK_FALSE(legal_step(down, x, y));
  CHECK_FALSE(legal_step(stay, x, y));  // stay is only legal when already there
  CHECK(legal_step(stay, x, x));
  CHECK_FALSE(legal_step(up, x, x));
  // a step on an agreeing coordinate is never legal
  CHECK_FALSE(legal_step(Step{Step::Kind::increment, 1}, x, y));
  CHECK_FALSE(legal_step(Step{Step::Kind::decrement, 1}, x, y));
}

TEST_CASE("steps_toward lists the legal first steps in coordinate order", "[jump]") {
  auto s = steps_toward({1, 5, 3}, {2, 5, 0});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Step{Step::Kind::increment, 0});
  CHECK(s[1] == Step{Step::Kind::decrement, 2});
  auto same = steps_toward({4, 4}, {4, 4});
  REQUIRE(same.size() == 1);
  CHECK(same[0].kind == Step::Kind::stay);
}

TEST_CASE("step strings round-trip", "[jump]") {
  std::vector<std::string> ground{"a", "b"};
  for (const auto& text : {"+a", "-b", "stay"}) {
    CHECK(step_to_string(parse_step(text, ground), ground) == text);
  }
  CHECK_THROWS_AS(parse_step("+z", ground), std::invalid_argument);
  CHECK_THROWS_AS(parse_step("a", ground), std::invalid_argument);
  CHECK_THROWS_AS(parse_step("", ground), std::invalid_argument);
}

TEST_CASE("systems normalize to sorted unique vectors with a tight box", "[jump]") {
  auto j = sys({{2, 0}, {0, 1}, {2, 0}, {1, 1}}, 2);
  REQUIRE(j.vectors.size() == 3);
  CHECK(std::is_sorted(j.vectors.begin(), j.vectors.end()));
  CHECK(j.box == DemandVector{2, 1});
  CHECK(j.contains({1, 1}));
  CHECK_FALSE(j.contains({2, 1}));
}

TEST_CASE("two-step axiom holds on hand-built jump systems", "[jump]") {
  // integer points of a box
  std::vector<DemandVector> box;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 1; ++b) box.push_back({a, b});
  CHECK(check_two_step_axiom(sys(box, 2)).ok());

  // even-sum points (the degree system of a graph restricted to two coords)
  std::vector<DemandVector> even;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      if ((a + b) % 2 == 0) even.push_back({a, b});
  CHECK(check_two_step_axiom(sys(even, 2)).ok());

  // bases of the rank-1 uniform matroid on two elements
  CHECK(check_two_step_axiom(sys({{1, 0}, {0, 1}}, 2)).ok());
}

TEST_CASE("two-step axiom rejects a gapped line with a counterexample", "[jump]") {
  auto j = sys({{0, 0}, {3, 0}}, 2);
  auto v = check_two_step_axiom(j);
  REQUIRE_FALSE(v.ok());
  CHECK(v.counterexample->x == DemandVector{0, 0});
  CHECK(v.counterexample->y == DemandVector{3, 0});
  CHECK(v.counterexample->first == DemandVector{1, 0});
  // the failure is mutual
  CHECK_FALSE(check_two_step_axiom(sys({{0, 0}, {0, 3}}, 2)).ok());
  // distance two is fine: one step plus one step lands on y
  CHECK(check_two_step_axiom(sys({{0, 0}, {2, 0}}, 2)).ok());
}

TEST_CASE("axiom verdicts agree with direct quantification on random sets", "[jump]") {
  std::mt19937 rng(12021);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<DemandVector> vs;
    int count = 1 + rng() % 6;
    for (int i = 0; i < count; ++i) vs.push_back({int(rng() % 4), int(rng() % 4)});
    auto j = sys(vs, 2);
    CHECK(check_two_step_axiom(j).ok() == oracle::two_step_holds(j.vectors));
  }
}

TEST_CASE("delta-matroid check agrees with the axiom on 0-1 systems", "[jump]") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DemandVector> vs;
    int count = 1 + rng() % 5;
    for (int i = 0; i < count; ++i) vs.push_back({int(rng() % 2), int(rng() % 2), int(rng() % 2)});
    auto j = sys(vs, 3);
    CHECK(check_delta_matroid(j).ok() == check_two_step_axiom(j).ok());
  }
}

TEST_CASE("even-sum verdict flags odd vectors", "[jump]") {
  CHECK(check_even_sum(sys({{0, 0}, {1, 1}, {2, 0}}, 2)).ok());
  auto v = check_even_sum(sys({{0, 0}, {1, 0}}, 2));
  REQUIRE_FALSE(v.ok());
  CHECK(*v.offender == DemandVector{1, 0});
}
