#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>

#include <twodom/twodom.hpp>

using namespace twodom;

namespace {

errc parse_failure(const std::string& text, int* line = nullptr) {
  try {
    (void)parse_graph(text);
  } catch (const error& e) {
    if (line) *line = e.detail();
    return e.kind();
  }
  FAIL("expected a parse failure");
  return errc::parse;
}

}  // namespace

TEST_CASE("graph text parses directives comments and accumulation") {
  MultiGraph g = parse_graph(
      "# header comment\n"
      "n 5\n"
      "\n"
      "e 0 1\n"
      "e 0 1 2   # accumulates to 3\n"
      "e 2 3 1\n"
      "loop 4\n"
      "loop 4 2\n");
  REQUIRE(g.vertex_count() == 5);
  REQUIRE(g.multiplicity(0, 1) == 3);
  REQUIRE(g.multiplicity(2, 3) == 1);
  REQUIRE(g.loop_count(4) == 3);
  REQUIRE(g.edge_count() == 7);
}

TEST_CASE("graph text parse errors carry line numbers") {
  int line = 0;

  REQUIRE(parse_failure("e 0 1\nn 2\n", &line) == errc::parse);
  REQUIRE(line == 1);

  REQUIRE(parse_failure("n 3\nn 4\n", &line) == errc::parse);
  REQUIRE(line == 2);

  REQUIRE(parse_failure("n 2\ne 0 3\n", &line) == errc::parse);
  REQUIRE(line == 2);

  REQUIRE(parse_failure("n 2\ne 1 1\n", &line) == errc::parse);
  REQUIRE(line == 2);

  REQUIRE(parse_failure("n 2\ne 0 1 0\n", &line) == errc::parse);
  REQUIRE(line == 2);

  REQUIRE(parse_failure("n 2\n\nedge 0 1\n", &line) == errc::parse);
  REQUIRE(line == 3);

  REQUIRE(parse_failure("n 2\ne 0 -1\n", &line) == errc::parse);
  REQUIRE(parse_failure("n two\n", &line) == errc::parse);
  REQUIRE(parse_failure("n 2\nloop 2\n", &line) == errc::parse);
  REQUIRE(parse_failure("n 2\ne 0 1 2 3\n", &line) == errc::parse);
  REQUIRE(parse_failure("", &line) == errc::parse);
  REQUIRE(parse_failure("# only a comment\n", &line) == errc::parse);

  try {
    (void)parse_graph("n 1\ne 0 1\n");
    FAIL("expected a throw");
  } catch (const error& e) {
    REQUIRE(e.kind() == errc::parse);
    REQUIRE(e.what() == std::string("line 2: vertex id out of range"));
  }
}

TEST_CASE("writer output is canonical and round trips") {
  MultiGraph g(4);
  g.add_edge(2, 0, 2);
  g.add_edge(3, 1);
  g.add_loop(2);
  std::string text = write_graph(g);
  REQUIRE(text ==
          "n 4\n"
          "e 0 2 2\n"
          "e 1 3\n"
          "loop 2\n");
  REQUIRE(parse_graph(text) == g);

  REQUIRE(write_graph(MultiGraph(0)) == "n 0\n");
  REQUIRE(parse_graph("n 0\n").vertex_count() == 0);
}

TEST_CASE("round trip over random multigraphs is exact") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    MultiGraph g = random_multigraph(7, 3, 0.25, seed);
    REQUIRE(parse_graph(write_graph(g)) == g);
  }
}

TEST_CASE("dot export lists every vertex and edge copy") {
  MultiGraph g(3);
  g.add_edge(0, 1, 2);
  g.add_loop(2);
  REQUIRE(to_dot(g) ==
          "graph G {\n"
          "  0;\n"
          "  1;\n"
          "  2;\n"
          "  0 -- 1;\n"
          "  0 -- 1;\n"
          "  2 -- 2;\n"
          "}\n");
}
