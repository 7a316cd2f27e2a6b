#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <twodom/twodom.hpp>

using namespace twodom;

namespace {

// Two degree-3 hubs joined by three length-3 paths; the smallest minimal
// graph that is not itself a subdivision graph.
MultiGraph theta() {
  MultiGraph g(8);
  g.add_edge(0, 1);
  g.add_edge(1, 4);
  g.add_edge(4, 7);
  g.add_edge(0, 2);
  g.add_edge(2, 5);
  g.add_edge(5, 7);
  g.add_edge(0, 3);
  g.add_edge(3, 6);
  g.add_edge(6, 7);
  return g;
}

errc error_kind(const std::function<void()>& fn, int* detail = nullptr) {
  try {
    fn();
  } catch (const error& e) {
    if (detail) *detail = e.detail();
    return e.kind();
  }
  FAIL("expected a throw");
  return errc::parse;
}

}  // namespace

TEST_CASE("contractibility") {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2, 2);
  g.add_loop(3);
  REQUIRE(is_contractible(g, 0));
  REQUIRE_FALSE(is_contractible(g, 1));
  REQUIRE_FALSE(is_contractible(g, 2));
  REQUIRE_FALSE(is_contractible(g, 3));
}

TEST_CASE("make_partition sorts blocks and validates") {
  MultiGraph c6 = cycle(6);
  Partition p = make_partition(c6, 0, {{1, 5}});
  REQUIRE(p.center == 0);
  REQUIRE(p.blocks.size() == 1);
  REQUIRE(p.blocks[0] == VertexSet::of(6, {1, 5}));

  MultiGraph t = theta();
  Partition q = make_partition(t, 0, {{2, 3}, {1}});
  REQUIRE(q.blocks[0] == VertexSet::of(8, {1}));
  REQUIRE(q.blocks[1] == VertexSet::of(8, {2, 3}));

  SECTION("rejections") {
    REQUIRE(error_kind([&] { make_partition(c6, 6, {{1}}); }) == errc::invalid_vertex);
    REQUIRE(error_kind([&] { make_partition(c6, 0, {{1}}); }) == errc::bad_partition);
    REQUIRE(error_kind([&] { make_partition(c6, 0, {{1, 5}, {5}}); }) == errc::bad_partition);
    REQUIRE(error_kind([&] { make_partition(c6, 0, {{1, 5, 2}}); }) == errc::bad_partition);
    REQUIRE(error_kind([&] { make_partition(c6, 0, {{1, 1, 5}}); }) == errc::bad_partition);
    REQUIRE(error_kind([&] { make_partition(c6, 0, {}); }) == errc::bad_partition);
    MultiGraph doubled = cycle(2);
    REQUIRE(error_kind([&] { make_partition(doubled, 0, {{1}}); }) == errc::not_contractible);
  }
}

TEST_CASE("contraction of C_6 with one merged block") {
  MultiGraph c6 = cycle(6);
  Partition p = make_partition(c6, 0, {{1, 5}});
  ContractionOutcome outcome = p_contraction_detailed(c6, p);

  MultiGraph want(5);
  want.add_edge(0, 4);
  want.add_edge(1, 2);
  want.add_edge(1, 4);
  want.add_edge(2, 3);
  want.add_edge(3, 4);
  REQUIRE(outcome.graph == want);
  REQUIRE(outcome.vertex_map == std::vector<int>{0, -1, 1, 2, 3, -1});
  REQUIRE(outcome.block_ids == std::vector<int>{4});

  // Degree laws: the center ends at the block count, each block vertex at
  // 1 + sum(d(u) - 1) over its members.
  REQUIRE(outcome.graph.degree(0) == 1);
  REQUIRE(outcome.graph.degree(4) == 3);
  // Edge conservation: |E'| = |E| - d(v) + k.
  REQUIRE(outcome.graph.edge_count() == c6.edge_count() - c6.degree(0) + 1);
}

TEST_CASE("contraction with singleton blocks is isomorphic to the input") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MultiGraph g = subdivide(random_multigraph(5, 2, 0.2, seed, true));
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!is_contractible(g, v)) continue;
      std::vector<std::vector<int>> singles;
      for (int u : g.neighbors(v)) singles.push_back({u});
      MultiGraph c = p_contraction(g, make_partition(g, v, singles));
      REQUIRE(are_isomorphic(c, g));
    }
  }
}

TEST_CASE("contraction multiplicities follow the block sums") {
  // Center 0 in K_{2,3} with both midpoints merged: survivor 1 keeps one
  // edge per absorbed midpoint, giving a parallel pair into the block.
  MultiGraph g = complete_bipartite(2, 3);
  Partition p = make_partition(g, 0, {{2, 3}, {4}});
  ContractionOutcome outcome = p_contraction_detailed(g, p);
  int b0 = outcome.block_ids[0], b1 = outcome.block_ids[1];
  REQUIRE(outcome.graph.multiplicity(outcome.vertex_map[1], b1) == 2);
  REQUIRE(outcome.graph.multiplicity(outcome.vertex_map[0], b1) == 1);
  REQUIRE(outcome.graph.multiplicity(outcome.vertex_map[1], b0) == 1);
  REQUIRE(outcome.graph.multiplicity(outcome.vertex_map[0], b0) == 1);
  REQUIRE(outcome.graph.edge_count() == g.edge_count() - g.degree(0) + 2);

  REQUIRE(error_kind([&] { p_contraction(complete(3), make_partition(complete(3), 0, {{1, 2}})); }) ==
          errc::precondition);
}

TEST_CASE("partition validity lemma cases") {
  MultiGraph c6 = cycle(6);
  REQUIRE(validate_partition(c6, make_partition(c6, 0, {{1}, {5}})));
  REQUIRE_FALSE(validate_partition(c6, make_partition(c6, 0, {{1, 5}})));

  MultiGraph t = theta();
  REQUIRE(validate_partition(t, make_partition(t, 0, {{1}, {2, 3}})));
  REQUIRE(validate_partition(t, make_partition(t, 0, {{1}, {2}, {3}})));
  REQUIRE_FALSE(validate_partition(t, make_partition(t, 0, {{1, 2, 3}})));

  MultiGraph k23 = complete_bipartite(2, 3);
  REQUIRE_FALSE(validate_partition(k23, make_partition(k23, 0, {{2}, {3, 4}})));
  REQUIRE_FALSE(validate_partition(k23, make_partition(k23, 2, {{0, 1}})));
  REQUIRE(validate_partition(k23, make_partition(k23, 0, {{2}, {3}, {4}})));

  REQUIRE(error_kind([&] {
    MultiGraph k4 = complete(4);
    (void)validate_partition(k4, Partition{0, {VertexSet::of(4, {1, 2, 3})}});
  }) == errc::precondition);
}

TEST_CASE("validity lemma matches recomputed minimality") {
  for (const MultiGraph& g : enumerate_connected(6, 2)) {
    if (!is_minimal_22_structural(g)) continue;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!is_contractible(g, v)) continue;
      auto nb = g.neighbors(v);
      int d = int(nb.size());
      auto probe = [&](const std::vector<std::vector<int>>& blocks) {
        Partition p = make_partition(g, v, blocks);
        REQUIRE(validate_partition(g, p) == is_minimal_22_structural(p_contraction(g, p)));
      };
      probe({nb});
      for (unsigned mask = 0; mask + 1 < (1u << (d - 1)); ++mask) {
        std::vector<int> s1{nb[0]}, s2;
        for (int i = 1; i < d; ++i) ((mask >> (i - 1)) & 1 ? s1 : s2).push_back(nb[i]);
        probe({s1, s2});
      }
    }
  }
}

TEST_CASE("subdivision graph construction") {
  REQUIRE(subdivide(complete(3)) == parse_graph("n 6\ne 0 3\ne 0 4\ne 1 3\ne 1 5\ne 2 4\ne 2 5\n"));

  MultiGraph loop1(1);
  loop1.add_loop(0);
  REQUIRE(subdivide(loop1) == cycle(2));

  MultiGraph triple(2);
  triple.add_edge(0, 1, 3);
  MultiGraph s = subdivide(triple);
  REQUIRE(s.vertex_count() == 5);
  REQUIRE(s.edge_count() == 6);
  REQUIRE(are_isomorphic(s, complete_bipartite(2, 3)));

  REQUIRE(subdivide(MultiGraph(0)) == MultiGraph(0));
  REQUIRE(subdivide(MultiGraph(3)) == MultiGraph(3));
}

TEST_CASE("subdivisions of min-degree-2 graphs are minimal") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    MultiGraph h = random_multigraph(5, 3, 0.3, seed, true);
    if (!is_connected(h)) continue;
    MultiGraph s = subdivide(h);
    REQUIRE(is_minimal_22_structural(s));
    auto back = is_subdivision_graph(s);
    REQUIRE(back.has_value());
    REQUIRE(are_isomorphic(*back, h));
  }
}

TEST_CASE("expansion is absent exactly on subdivision graphs") {
  REQUIRE_FALSE(expand(cycle(6)).has_value());
  REQUIRE_FALSE(expand(subdivide(complete(4))).has_value());
  REQUIRE_FALSE(expand(complete_bipartite(2, 3)).has_value());
  REQUIRE(expand(theta()).has_value());
  REQUIRE(error_kind([] { (void)expand(complete(4)); }) == errc::precondition);
}

TEST_CASE("expansion undoes itself through the recorded step") {
  MultiGraph t = theta();
  auto ex = expand(t);
  REQUIRE(ex.has_value());

  REQUIRE(is_minimal_22_structural(ex->graph));
  REQUIRE(is_connected(ex->graph));
  REQUIRE(ex->record.split_vertex == 0);
  REQUIRE(ex->record.anchor == 1);
  REQUIRE(ex->record.parallel_pairs.empty());
  REQUIRE(ex->record.singles == std::vector<int>{2, 3});
  REQUIRE(ex->graph.vertex_count() == t.vertex_count() + 1);

  DegreeSplit before = degree_split(t);
  DegreeSplit after = degree_split(ex->graph);
  int measure_before = std::min(before.a3.count(), before.b3.count());
  int measure_after = std::min(after.a3.count(), after.b3.count());
  REQUIRE(measure_before == 1);
  REQUIRE(measure_after == 0);

  MultiGraph undone = p_contraction(ex->graph, ex->step.partition);
  REQUIRE(are_isomorphic(undone, t));
}

TEST_CASE("decompose on a subdivision graph is a bare seed") {
  Certificate cert = decompose(cycle(6));
  REQUIRE(cert.steps.empty());
  REQUIRE(cert.seed == cycle(6));
  REQUIRE(replay(cert) == cycle(6));
}

TEST_CASE("decompose theta yields one replayable step") {
  MultiGraph t = theta();
  Certificate cert = decompose(t);
  REQUIRE(cert.steps.size() == 1);
  REQUIRE(is_subdivision_graph(cert.seed).has_value());
  REQUIRE(are_isomorphic(replay(cert), t));
}

TEST_CASE("decompose round trip on generated graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto [g, made] = random_f_graph(complete_bipartite(2, 3), int(seed % 3) + 1, seed);
    DegreeSplit split = degree_split(g);
    Certificate cert = decompose(g);
    REQUIRE(int(cert.steps.size()) == std::min(split.a3.count(), split.b3.count()));
    REQUIRE(is_subdivision_graph(cert.seed).has_value());
    REQUIRE(are_isomorphic(replay(cert), g));
  }
}

TEST_CASE("certificate text round trips byte for byte") {
  auto [g, cert] = random_f_graph(complete_bipartite(2, 3), 2, 9);
  REQUIRE(replay(cert) == g);

  std::string text = write_certificate(cert);
  Certificate back = parse_certificate(text);
  REQUIRE(back.seed == cert.seed);
  REQUIRE(back.steps.size() == cert.steps.size());
  REQUIRE(write_certificate(back) == text);
  REQUIRE(are_isomorphic(replay(back), g));

  Certificate bare = decompose(cycle(6));
  REQUIRE(write_certificate(parse_certificate(write_certificate(bare))) == write_certificate(bare));
}

TEST_CASE("certificate parse errors") {
  REQUIRE(error_kind([] { (void)parse_certificate("n 2\nstep 0 |\n"); }) == errc::parse);
  REQUIRE(error_kind([] { (void)parse_certificate("n 4\ne 0 1\nstep 0 1 2\n"); }) == errc::parse);
  REQUIRE(error_kind([] { (void)parse_certificate("n 4\nstep 0 | 1 1\n"); }) == errc::parse);
  REQUIRE(error_kind([] { (void)parse_certificate("step 0 | 1\n"); }) == errc::parse);
}

TEST_CASE("replay rejects invalid certificates with the failing step") {
  int detail = -2;

  SECTION("bad seed") {
    Certificate cert;
    cert.seed = theta();
    REQUIRE(error_kind([&] { (void)replay(cert); }, &detail) == errc::bad_certificate);
    REQUIRE(detail == -1);

    Certificate k4;
    k4.seed = complete(4);
    REQUIRE(error_kind([&] { (void)replay(k4); }, &detail) == errc::bad_certificate);
  }

  SECTION("invalid step is reported by index") {
    auto [g, cert] = random_f_graph(complete_bipartite(2, 3), 1, 3);
    REQUIRE(cert.steps.size() == 1);
    Certificate broken = cert;
    broken.steps[0].partition.center = cert.seed.vertex_count() + 5;
    REQUIRE(error_kind([&] { (void)replay(broken); }, &detail) == errc::bad_certificate);
    REQUIRE(detail == 0);

    // A merged block violating the validity conditions: K_{2,3} seed,
    // contract a midpoint whose single block has a degree-3 outside
    // neighbor.
    Certificate invalid;
    invalid.seed = complete_bipartite(2, 3);
    invalid.steps.push_back(
        {Partition{2, {VertexSet::of(5, {0, 1})}}, {}});
    REQUIRE(error_kind([&] { (void)replay(invalid); }, &detail) == errc::bad_certificate);
    REQUIRE(detail == 0);
  }
}
