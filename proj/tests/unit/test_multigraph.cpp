#include <catch2/catch_amalgamated.hpp>

#include "tpj/families.hpp"
#include "tpj/multigraph.hpp"

using namespace tpj;

TEST_CASE("vertices, edges and terminals resolve by name", "[multigraph]") {
  Multigraph g = build_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "b"}}, {"c", "a"});
  REQUIRE(g.num_vertices() == 3);
  REQUIRE(g.num_edges() == 3);
  REQUIRE(g.num_terminals() == 2);
  // terminal ranks follow the order given, not vertex order
  CHECK(g.names[g.terminals[0]] == "c");
  CHECK(g.names[g.terminals[1]] == "a");
  CHECK(g.terminal_rank_of[g.index_of.at("a")] == 1);
  CHECK(g.terminal_rank_of[g.index_of.at("b")] == -1);
  CHECK(g.is_terminal(g.index_of.at("c")));
  CHECK_FALSE(g.is_terminal(g.index_of.at("b")));
}

TEST_CASE("degree counts parallel edges", "[multigraph]") {
  Multigraph g = double_edge();
  CHECK(g.degree(g.index_of.at("a")) == 2);
  CHECK(g.degree(g.index_of.at("b")) == 2);
  Multigraph s = star();
  CHECK(s.degree(s.index_of.at("v")) == 3);
  for (auto t : {"a", "b", "c"}) CHECK(s.degree(s.index_of.at(t)) == 1);
}

TEST_CASE("malformed specifications are rejected", "[multigraph]") {
  CHECK_THROWS_AS(build_graph({"a", "a"}, {}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph({"a", "b"}, {{"a", "z"}}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph({"a", "b"}, {{"a", "a"}}, {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph({"a", "b"}, {{"a", "b"}}, {"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(build_graph({"a", "b"}, {{"a", "b"}}, {"z"}), std::invalid_argument);
}

TEST_CASE("sum of vertex cut degrees counts each edge twice", "[multigraph]") {
  for (const auto& ni : named_instances()) {
    long long total = 0;
    for (int v = 0; v < ni.graph.num_vertices(); ++v) total += cut_degree(ni.graph, {v});
    CHECK(total == 2LL * ni.graph.num_edges());
  }
}

TEST_CASE("cut degree is symmetric under complement", "[multigraph]") {
  Multigraph g = k4();
  int nv = g.num_vertices();
  for (uint32_t X = 0; X < (uint32_t{1} << nv); ++X) {
    std::vector<int> in, out;
    for (int v = 0; v < nv; ++v) (((X >> v) & 1) ? in : out).push_back(v);
    CHECK(cut_degree(g, in) == cut_degree(g, out));
  }
}

TEST_CASE("partitions resolve to ranks and separate classes", "[multigraph]") {
  Multigraph g = star();
  TerminalPartition singles = singleton_partition(g);
  REQUIRE(singles.num_classes() == 3);
  CHECK(singles.separates(0, 1));
  CHECK(singles.separates(1, 2));

  TerminalPartition split = partition_by_name(g, "split");
  REQUIRE(split.num_classes() == 2);
  CHECK(split.separates(0, 1));   // a vs b
  CHECK(split.separates(0, 2));   // a vs c
  CHECK_FALSE(split.separates(1, 2));  // b and c share a class
  CHECK_FALSE(split.separates(1, 1));
}

TEST_CASE("partition lookups validate their input", "[multigraph]") {
  Multigraph g = star();
  CHECK_THROWS_AS(partition_by_name(g, "no-such"), std::invalid_argument);
  // every terminal must be covered exactly once
  CHECK_THROWS_AS(resolve_partition(g, {{"a"}, {"b"}}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_partition(g, {{"a", "b"}, {"b", "c"}}), std::invalid_argument);
  CHECK_THROWS_AS(resolve_partition(g, {{"a", "v"}, {"b", "c"}}), std::invalid_argument);
}

TEST_CASE("terminal copies attach with the demanded multiplicity", "[multigraph]") {
  Multigraph g = star();
  Augmented aug = augment_with_copies(g, {2, 0, 3});
  REQUIRE(aug.graph.num_vertices() == 4 + 3);
  CHECK(aug.graph.num_edges() == 3 + 5);
  // new terminals are the copies, in the original rank order
  REQUIRE(aug.graph.num_terminals() == 3);
  CHECK(aug.graph.names[aug.graph.terminals[0]] == "a'");
  CHECK(aug.graph.names[aug.graph.terminals[2]] == "c'");
  CHECK(aug.graph.degree(aug.graph.index_of.at("a'")) == 2);
  CHECK(aug.graph.degree(aug.graph.index_of.at("b'")) == 0);
  CHECK(aug.graph.degree(aug.graph.index_of.at("c'")) == 3);
  // original terminals become interior vertices
  CHECK_FALSE(aug.graph.is_terminal(aug.graph.index_of.at("a")));
}

TEST_CASE("copy names avoid collisions with existing vertices", "[multigraph]") {
  Multigraph g = build_graph({"a", "a'", "b"}, {{"a", "b"}, {"a'", "b"}}, {"a", "a'"});
  Augmented aug = augment_with_copies(g, {1, 1});
  std::string n0 = aug.graph.names[aug.graph.terminals[0]];
  std::string n1 = aug.graph.names[aug.graph.terminals[1]];
  CHECK(n0 != n1);
  CHECK(aug.graph.index_of.count(n0) == 1);
  CHECK(g.index_of.count(n0) == 0);
}
