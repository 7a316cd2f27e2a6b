#pragma once

// Cross-validation harnesses shared by the CLI selftest and the acceptance
// runner. Every check returns a pass flag and a one-line summary; limits are
// parameterized so the quick selftest and the full acceptance run share code.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "domination.hpp"
#include "generate.hpp"
#include "multigraph.hpp"
#include "recognition.hpp"
#include "transform.hpp"

namespace twodom {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct CheckLimits {
  int simple_enum_n = 8;         // recognizer equivalence, simple corpus
  int multi_enum_n = 6;          // recognizer equivalence, multiplicity <= 2 corpus
  int product_order = 4;         // factors per side of the product check
  int subdiv_raw_n = 4;          // exhaustive subdivision corpus incl. loops up to this order
  int subdiv_mult3_n = 5;        // loop-free subdivision corpus, multiplicities <= 3
  int subdiv_mult2_n = 6;        // loop-free subdivision corpus, multiplicities <= 2
  int subdiv_random_samples = 1500;
  int observation_samples = 1000;
  int lemma_vertex_cap = 12;
  int lemma_random_samples = 150;
  int roundtrip_vertex_cap = 14;
  int roundtrip_random_samples = 250;
};

inline CheckLimits quick_limits() {
  CheckLimits lim;
  lim.simple_enum_n = 7;
  lim.multi_enum_n = 5;
  lim.product_order = 3;
  lim.subdiv_raw_n = 3;
  lim.subdiv_mult3_n = 4;
  lim.subdiv_mult2_n = 5;
  lim.subdiv_random_samples = 200;
  lim.observation_samples = 250;
  lim.lemma_vertex_cap = 10;
  lim.lemma_random_samples = 50;
  lim.roundtrip_vertex_cap = 12;
  lim.roundtrip_random_samples = 60;
  return lim;
}

namespace detail {

// Deterministic stream of contracted-subdivision samples over a rotating
// family of base graphs; returns false when the index yields no usable base.
inline bool make_f_sample(std::uint64_t idx, std::pair<MultiGraph, Certificate>& out) {
  MultiGraph h;
  switch (idx % 6) {
    case 0: h = cycle(3 + int(idx / 6 % 4)); break;
    case 1: h = complete(3 + int(idx / 6 % 3)); break;
    case 2: h = complete_bipartite(2 + int(idx / 6 % 2), 2 + int(idx / 12 % 2)); break;
    case 3: h = random_multigraph(4 + int(idx / 6 % 3), 2, 0.0, idx, true); break;
    case 4: h = random_multigraph(4 + int(idx / 6 % 2), 3, 0.25, idx, true); break;
    default: h = random_multigraph(5, 1, 0.0, idx, true); break;
  }
  if (!is_connected(h)) return false;
  out = random_f_graph(h, int(idx % 4), idx);
  return true;
}

// All multiplicity assignments on n vertices with off-diagonal counts up to
// max_mult and loop counts up to max_loops.
template <typename F>
inline void for_each_raw_multigraph(int n, int max_mult, int max_loops, F&& f) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  size_t pair_count = slots.size();
  for (int v = 0; v < n; ++v) slots.emplace_back(v, v);
  std::vector<int> val(slots.size(), 0);
  for (;;) {
    MultiGraph g(n);
    for (size_t i = 0; i < slots.size(); ++i) {
      if (val[i] == 0) continue;
      if (i < pair_count)
        g.add_edge(slots[i].first, slots[i].second, val[i]);
      else
        g.add_loop(slots[i].first, val[i]);
    }
    f(g);
    size_t pos = slots.size();
    while (pos > 0 && val[pos - 1] == (pos - 1 < pair_count ? max_mult : max_loops)) {
      val[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
    ++val[pos - 1];
  }
}

inline bool min_degree_at_least(const MultiGraph& g, int d) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) < d) return false;
  return true;
}

}  // namespace detail

// Structural recognizer against the deletion oracle over the enumerated
// connected corpus.
inline CheckResult check_recognizer_equivalence(const CheckLimits& lim) {
  long long simple = 0, multi = 0, mismatches = 0;
  for (const MultiGraph& g : enumerate_connected(lim.simple_enum_n, 1)) {
    ++simple;
    if (is_minimal_22_structural(g) != is_minimal_22_oracle(g)) ++mismatches;
  }
  for (const MultiGraph& g : enumerate_connected(lim.multi_enum_n, 2)) {
    ++multi;
    if (is_minimal_22_structural(g) != is_minimal_22_oracle(g)) ++mismatches;
  }
  std::ostringstream os;
  os << simple << " simple + " << multi << " multigraph classes, " << mismatches
     << " disagreements";
  return {"recognizer-equivalence", mismatches == 0, os.str()};
}

// Complete graphs, even/odd cycles, complete bipartite graphs.
inline CheckResult check_closed_form_laws() {
  long long cases = 0, failures = 0;
  auto expect = [&](bool actual, bool want) {
    ++cases;
    if (actual != want) ++failures;
  };
  for (int n = 2; n <= 8; ++n) {
    MultiGraph g = complete(n);
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) expect(is_kl_dominated(g, k, l), k + l <= n);
  }
  for (int n = 3; n <= 12; ++n) expect(is_kl_dominated(cycle(n), 2, 2), n % 2 == 0);
  for (int n = 3; n <= 11; n += 2) expect(is_kl_dominated(cycle(n), 1, 2), true);
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) expect(is_kl_dominated(complete_bipartite(m, n), m, n), true);
  std::ostringstream os;
  os << cases << " law instances, " << failures << " failures";
  return {"closed-form-laws", failures == 0, os.str()};
}

// The two showcase products, including the solver-derived absence, computed
// twice to pin down witness stability.
inline CheckResult check_figure_products() {
  MultiGraph prism = cartesian_product(complete(2), cycle(5));
  MultiGraph box = cartesian_product(complete(2), complete(4));
  bool ok = true;
  std::string note;
  auto run_twice = [&](const MultiGraph& g, int k, int l, bool want) {
    auto p1 = find_kl_pair(g, k, l);
    auto p2 = find_kl_pair(g, k, l);
    if (p1.has_value() != want) ok = false;
    if (p1.has_value() != p2.has_value()) ok = false;
    if (p1 && !(p1->d1 == p2->d1 && p1->d2 == p2->d2)) ok = false;
    if (p1 && !is_kl_pair(g, *p1)) ok = false;
  };
  run_twice(prism, 2, 2, true);
  run_twice(box, 3, 3, true);
  run_twice(box, 1, 4, true);
  run_twice(box, 3, 4, false);
  return {"figure-products", ok,
          "prism (2,2) yes; box (3,3) yes, (1,4) yes, (3,4) no; witnesses stable"};
}

// Cartesian products of connected simple factors are (2,2)-dominated.
inline CheckResult check_product_corollary(const CheckLimits& lim) {
  std::vector<MultiGraph> factors;
  for (const MultiGraph& g : enumerate_connected(lim.product_order, 1))
    if (g.vertex_count() >= 2) factors.push_back(g);
  long long products = 0, counterexamples = 0;
  for (const MultiGraph& g : factors)
    for (const MultiGraph& h : factors) {
      ++products;
      if (!is_kl_dominated(cartesian_product(g, h), 2, 2)) ++counterexamples;
    }
  std::ostringstream os;
  os << factors.size() << " factors, " << products << " products, " << counterexamples
     << " counterexamples";
  return {"product-corollary", counterexamples == 0, os.str()};
}

// Subdivisions of connected graphs with minimum degree 2 are minimal, and
// recognition reconstructs the base graph. Exhaustive with loops at small
// orders, isomorph-free loop-free enumeration in the middle, seeded random
// loopy samples at the top.
inline CheckResult check_subdivision_roundtrip(const CheckLimits& lim) {
  long long cases = 0, failures = 0;
  auto visit = [&](const MultiGraph& h) {
    ++cases;
    MultiGraph s = subdivide(h);
    if (!is_minimal_22_structural(s)) {
      ++failures;
      return;
    }
    auto back = is_subdivision_graph(s);
    if (!back || !are_isomorphic(*back, h)) ++failures;
  };
  for (int n = 1; n <= lim.subdiv_raw_n; ++n) {
    int max_loops = n <= 2 ? 3 : 2;
    detail::for_each_raw_multigraph(n, 3, max_loops, [&](const MultiGraph& h) {
      if (detail::min_degree_at_least(h, 2) && is_connected(h)) visit(h);
    });
  }
  for (const MultiGraph& h : enumerate_connected(lim.subdiv_mult3_n, 3))
    if (h.vertex_count() > lim.subdiv_raw_n && detail::min_degree_at_least(h, 2)) visit(h);
  for (const MultiGraph& h : enumerate_connected(lim.subdiv_mult2_n, 2))
    if (h.vertex_count() > lim.subdiv_mult3_n && detail::min_degree_at_least(h, 2)) visit(h);
  int accepted = 0;
  for (std::uint64_t seed = 1; accepted < lim.subdiv_random_samples && seed < 200000; ++seed) {
    int n = lim.subdiv_mult3_n + int(seed % 2);
    MultiGraph h = random_multigraph(n, 3, 0.3, seed, true);
    if (!is_connected(h)) continue;
    visit(h);
    ++accepted;
  }
  std::ostringstream os;
  os << cases << " base graphs, " << failures << " round-trip failures";
  return {"subdivision-roundtrip", failures == 0, os.str()};
}

namespace detail {

// Bipartiteness, the two degree formulas, degree preservation outside the
// closed second neighborhood, the singleton-partition isomorphism, and edge
// conservation, on one (graph, partition) pair.
inline bool contraction_observations_hold(const MultiGraph& g, const Partition& p) {
  ContractionOutcome outcome = p_contraction_detailed(g, p);
  const MultiGraph& c = outcome.graph;
  if (!bipartition(c)) return false;
  if (c.degree(outcome.vertex_map[p.center]) != int(p.blocks.size())) return false;
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    int want = 1;
    for (int u : p.blocks[i].members()) want += g.degree(u) - 1;
    if (c.degree(outcome.block_ids[i]) != want) return false;
  }
  VertexSet near = neighborhood(g, p.center).unite(neighborhood_2(g, p.center));
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == p.center || near.contains(v)) continue;
    if (c.degree(outcome.vertex_map[v]) != g.degree(v)) return false;
  }
  if (c.edge_count() != g.edge_count() - g.degree(p.center) + int(p.blocks.size())) return false;
  std::vector<std::vector<int>> singletons;
  for (int u : g.neighbors(p.center)) singletons.push_back({u});
  MultiGraph same = p_contraction(g, make_partition(g, p.center, singletons));
  return are_isomorphic(same, g);
}

}  // namespace detail

inline CheckResult check_contraction_observations(const CheckLimits& lim) {
  long long pairs = 0, violations = 0;
  std::pair<MultiGraph, Certificate> sample;
  for (std::uint64_t idx = 1; pairs < lim.observation_samples && idx < 200000; ++idx) {
    if (!detail::make_f_sample(idx, sample)) continue;
    MultiGraph r = sample.second.seed;
    for (const ContractionStep& step : sample.second.steps) {
      ++pairs;
      if (!detail::contraction_observations_hold(r, step.partition)) ++violations;
      r = p_contraction(r, step.partition);
    }
  }
  std::ostringstream os;
  os << pairs << " contraction pairs, " << violations << " violations";
  return {"contraction-observations", pairs >= lim.observation_samples && violations == 0,
          os.str()};
}

// validate_partition against recomputing minimality of the contraction, for
// every 1- and 2-block partition at every contractible vertex.
inline CheckResult check_partition_lemma(const CheckLimits& lim) {
  std::vector<MultiGraph> corpus;
  auto admit = [&](const MultiGraph& g) {
    if (g.vertex_count() <= lim.lemma_vertex_cap && is_minimal_22_structural(g))
      corpus.push_back(g);
  };
  for (const MultiGraph& g : enumerate_connected(std::min(lim.simple_enum_n, 8), 1)) admit(g);
  for (const MultiGraph& g : enumerate_connected(std::min(lim.multi_enum_n, 6), 2)) admit(g);
  {
    int taken = 0;
    std::pair<MultiGraph, Certificate> sample;
    for (std::uint64_t idx = 1; taken < lim.lemma_random_samples && idx < 200000; ++idx) {
      if (!detail::make_f_sample(idx, sample)) continue;
      ++taken;
      admit(sample.first);
      admit(sample.second.seed);
    }
  }
  long long partitions = 0, disagreements = 0;
  for (const MultiGraph& g : corpus) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!is_contractible(g, v)) continue;
      auto nb = g.neighbors(v);
      int d = int(nb.size());
      auto probe = [&](const std::vector<std::vector<int>>& blocks) {
        ++partitions;
        Partition p = make_partition(g, v, blocks);
        bool lhs = validate_partition(g, p);
        bool rhs = is_minimal_22_structural(p_contraction(g, p));
        if (lhs != rhs) ++disagreements;
      };
      probe({nb});
      for (unsigned mask = 0; mask + 1 < (1u << (d - 1)); ++mask) {
        std::vector<int> s1{nb[0]}, s2;
        for (int i = 1; i < d; ++i) ((mask >> (i - 1)) & 1 ? s1 : s2).push_back(nb[i]);
        probe({s1, s2});
      }
    }
  }
  std::ostringstream os;
  os << corpus.size() << " minimal graphs, " << partitions << " partitions, " << disagreements
     << " disagreements";
  return {"partition-lemma", disagreements == 0, os.str()};
}

// Decomposition into a subdivision seed plus replayable steps: seed
// recognized, step count equals the initial min(|A3|,|B3|), replay
// isomorphic to the input.
inline CheckResult check_decompose_roundtrip(const CheckLimits& lim) {
  std::vector<MultiGraph> corpus;
  for (const MultiGraph& g : enumerate_connected(lim.simple_enum_n, 1))
    if (is_minimal_22_structural(g)) corpus.push_back(g);
  for (const MultiGraph& g : enumerate_connected(lim.multi_enum_n, 2))
    if (is_minimal_22_structural(g)) corpus.push_back(g);
  {
    int taken = 0;
    std::pair<MultiGraph, Certificate> sample;
    for (std::uint64_t idx = 1; taken < lim.roundtrip_random_samples && idx < 200000; ++idx) {
      if (!detail::make_f_sample(idx, sample)) continue;
      if (sample.first.vertex_count() > lim.roundtrip_vertex_cap) continue;
      ++taken;
      corpus.push_back(sample.first);
    }
  }
  long long failures = 0;
  for (const MultiGraph& g : corpus) {
    DegreeSplit split = degree_split(g);
    int want_steps = std::min(split.a3.count(), split.b3.count());
    Certificate cert = decompose(g);
    bool ok = is_connected(cert.seed) && is_subdivision_graph(cert.seed).has_value() &&
              int(cert.steps.size()) == want_steps && are_isomorphic(replay(cert), g);
    if (!ok) ++failures;
  }
  std::ostringstream os;
  os << corpus.size() << " minimal graphs, " << failures << " round-trip failures";
  return {"decompose-roundtrip", failures == 0, os.str()};
}

inline std::vector<CheckResult> run_library_checks(const CheckLimits& lim) {
  return {
      check_recognizer_equivalence(lim), check_closed_form_laws(),
      check_figure_products(),           check_product_corollary(lim),
      check_subdivision_roundtrip(lim),  check_contraction_observations(lim),
      check_partition_lemma(lim),        check_decompose_roundtrip(lim),
  };
}

}  // namespace twodom
