#pragma once

// Named graph families, Cartesian products, seeded random generators, and
// isomorph-free enumeration of small connected multigraphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "multigraph.hpp"
#include "transform.hpp"

namespace twodom {

inline MultiGraph path_graph(int n) {
  if (n < 1) throw error(errc::invalid_parameter, "path needs at least one vertex");
  MultiGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

// cycle(1) is a loop, cycle(2) the double edge.
inline MultiGraph cycle(int n) {
  if (n < 1) throw error(errc::invalid_parameter, "cycle needs at least one vertex");
  MultiGraph g(n);
  if (n == 1) {
    g.add_loop(0);
  } else if (n == 2) {
    g.add_edge(0, 1, 2);
  } else {
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  }
  return g;
}

inline MultiGraph complete(int n) {
  if (n < 1) throw error(errc::invalid_parameter, "complete graph needs at least one vertex");
  MultiGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Sides are 0..m-1 and m..m+n-1.
inline MultiGraph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1)
    throw error(errc::invalid_parameter, "complete bipartite graph needs nonempty sides");
  MultiGraph g(m + n);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v) g.add_edge(u, m + v);
  return g;
}

inline bool is_simple(const MultiGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.loop_count(v) > 0) return false;
    for (int u : g.neighbors(v))
      if (g.multiplicity(u, v) > 1) return false;
  }
  return true;
}

// Vertex (a, x) of the product gets id a * |V(h)| + x.
inline MultiGraph cartesian_product(const MultiGraph& g, const MultiGraph& h) {
  if (!is_simple(g) || !is_simple(h))
    throw error(errc::unsupported, "cartesian product is defined on simple graphs");
  int nh = h.vertex_count();
  MultiGraph out(g.vertex_count() * nh);
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int x = 0; x < nh; ++x) {
      for (int y : h.neighbors(x))
        if (y > x) out.add_edge(a * nh + x, a * nh + y);
      for (int b : g.neighbors(a))
        if (b > a) out.add_edge(a * nh + x, b * nh + x);
    }
  return out;
}

namespace detail {

// The standard <random> distributions are implementation-defined; seeded
// outputs must reproduce bit-for-bit across toolchains, so draws are fixed
// bit arithmetic over the mt19937_64 stream.
inline double unit_draw(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline int draw_below(std::mt19937_64& rng, int bound) {
  return int(rng() % std::uint64_t(bound));
}

}  // namespace detail

// Each pair is adjacent with probability 1/2 (multiplicity uniform in
// 1..max_mult), each vertex looped with probability loop_prob. With the
// degree filter on, whole graphs are redrawn until the minimum degree
// reaches 2.
inline MultiGraph random_multigraph(int n, int max_mult, double loop_prob, std::uint64_t seed,
                                    bool require_min_degree_2 = false) {
  if (n < 1) throw error(errc::invalid_parameter, "random graph needs at least one vertex");
  if (max_mult < 1) throw error(errc::invalid_parameter, "multiplicity bound must be positive");
  if (!(loop_prob >= 0.0 && loop_prob <= 1.0))
    throw error(errc::invalid_parameter, "loop probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (detail::unit_draw(rng) < 0.5) g.add_edge(u, v, 1 + detail::draw_below(rng, max_mult));
    for (int v = 0; v < n; ++v)
      if (detail::unit_draw(rng) < loop_prob) g.add_loop(v);
    if (!require_min_degree_2) return g;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) ok = g.degree(v) >= 2;
    if (ok) return g;
  }
  throw error(errc::invalid_parameter, "degree filter is not satisfiable for these parameters");
}

// Subdivides h, then applies up to `steps` random contractions of the
// closure-rule shape (contractible center of degree >= 3, one singleton
// block, all outside neighbors of the big block of degree 2), skipping out
// early when no candidate remains. The certificate replays to the returned
// graph exactly: steps are recorded in the labeling of the graph they were
// applied to.
inline std::pair<MultiGraph, Certificate> random_f_graph(const MultiGraph& h, int steps,
                                                         std::uint64_t seed) {
  if (!is_connected(h)) throw error(errc::precondition, "subdivision seed must be connected");
  for (int v = 0; v < h.vertex_count(); ++v)
    if (h.degree(v) < 2) throw error(errc::precondition, "subdivision seed must have minimum degree 2");
  if (steps < 0) throw error(errc::invalid_parameter, "step count must be nonnegative");

  Certificate cert;
  cert.seed = subdivide(h);
  MultiGraph g = cert.seed;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < steps; ++s) {
    std::vector<std::pair<int, int>> candidates;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) < 3 || !is_contractible(g, v)) continue;
      for (int x : g.neighbors(v)) {
        bool ok = true;
        for (int y : g.neighbors(v)) {
          if (y == x) continue;
          for (int z : g.neighbors(y))
            if (z != v && g.degree(z) != 2) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
        if (ok) candidates.emplace_back(v, x);
      }
    }
    if (candidates.empty()) break;
    auto [v, x] = candidates[detail::draw_below(rng, int(candidates.size()))];
    std::vector<int> rest;
    for (int y : g.neighbors(v))
      if (y != x) rest.push_back(y);
    Partition p = make_partition(g, v, {{x}, rest});
    ContractionOutcome outcome = p_contraction_detailed(g, p);
    cert.steps.push_back({std::move(p), std::move(outcome.block_ids)});
    g = std::move(outcome.graph);
  }
  return {std::move(g), std::move(cert)};
}

namespace detail {

inline std::string invariant_key(const MultiGraph& g) {
  auto colors = refinement_colors(g);
  std::sort(colors.begin(), colors.end());
  std::string key = std::to_string(g.vertex_count()) + "|" + std::to_string(g.edge_count());
  for (int c : colors) {
    key += ',';
    key += std::to_string(c);
  }
  return key;
}

// Connected simple graphs, one per isomorphism class, grouped by order.
// Every connected graph on n vertices arises from a connected graph on n-1
// vertices by adding a non-cut vertex, so augmenting each representative
// with every nonempty attachment set and deduplicating is exhaustive.
inline std::vector<std::vector<MultiGraph>> connected_simple_classes(int n_max) {
  std::vector<std::vector<MultiGraph>> by_n(n_max + 1);
  if (n_max >= 1) by_n[1].push_back(MultiGraph(1));
  for (int n = 2; n <= n_max; ++n) {
    std::unordered_set<std::string> seen;
    for (const MultiGraph& parent : by_n[n - 1]) {
      for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        MultiGraph cand(n);
        for (int u = 0; u < n - 1; ++u)
          for (int v = u + 1; v < n - 1; ++v)
            if (parent.multiplicity(u, v) > 0) cand.add_edge(u, v);
        for (int u = 0; u < n - 1; ++u)
          if (mask >> u & 1) cand.add_edge(u, n - 1);
        if (seen.insert(canonical_code(cand)).second) by_n[n].push_back(std::move(cand));
      }
    }
  }
  return by_n;
}

inline std::vector<std::vector<int>> automorphisms(const MultiGraph& g) {
  int n = g.vertex_count();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if (g.multiplicity(u, v) != g.multiplicity(perm[u], perm[v])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

// One representative per isomorphism class of connected loop-free
// multigraphs with the given multiplicity bound, in a fixed deterministic
// order. Multigraph classes are built per simple support: two assignments
// of multiplicities collide exactly when an automorphism of the support
// maps one to the other, so keeping the lexicographically smallest
// assignment of each orbit is an exact dedup.
inline std::vector<MultiGraph> enumerate_connected(int n_max, int max_mult = 1) {
  if (n_max < 1) throw error(errc::invalid_parameter, "enumeration needs at least one vertex");
  if (max_mult < 1) throw error(errc::invalid_parameter, "multiplicity bound must be positive");
  if (max_mult == 1 && n_max > 8)
    throw error(errc::too_large, "simple enumeration limited to 8 vertices");
  if (max_mult > 1 && n_max > 6)
    throw error(errc::too_large, "multigraph enumeration limited to 6 vertices");

  auto by_n = detail::connected_simple_classes(n_max);
  std::vector<MultiGraph> out;
  for (int n = 1; n <= n_max; ++n) {
    for (const MultiGraph& support : by_n[n]) {
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (support.multiplicity(u, v) > 0) edges.emplace_back(u, v);
      if (max_mult == 1 || edges.empty()) {
        out.push_back(support);
        continue;
      }
      std::map<std::pair<int, int>, int> edge_index;
      for (size_t j = 0; j < edges.size(); ++j) edge_index[edges[j]] = int(j);
      std::vector<std::vector<int>> inverse_actions;
      for (const auto& perm : detail::automorphisms(support)) {
        std::vector<int> act(edges.size());
        bool identity = true;
        for (size_t j = 0; j < edges.size(); ++j) {
          int a = perm[edges[j].first], b = perm[edges[j].second];
          if (a > b) std::swap(a, b);
          act[j] = edge_index.at({a, b});
          if (act[j] != int(j)) identity = false;
        }
        if (identity) continue;
        std::vector<int> inv(edges.size());
        for (size_t j = 0; j < edges.size(); ++j) inv[act[j]] = int(j);
        inverse_actions.push_back(std::move(inv));
      }
      std::vector<int> assign(edges.size(), 1);
      for (;;) {
        bool canonical = true;
        for (const auto& inv : inverse_actions) {
          int cmp = 0;
          for (size_t j = 0; j < edges.size() && cmp == 0; ++j) cmp = assign[inv[j]] - assign[j];
          if (cmp < 0) {
            canonical = false;
            break;
          }
        }
        if (canonical) {
          MultiGraph g(n);
          for (size_t j = 0; j < edges.size(); ++j)
            g.add_edge(edges[j].first, edges[j].second, assign[j]);
          out.push_back(std::move(g));
        }
        size_t pos = edges.size();
        while (pos > 0 && assign[pos - 1] == max_mult) {
          assign[pos - 1] = 1;
          --pos;
        }
        if (pos == 0) break;
        ++assign[pos - 1];
      }
    }
  }
  return out;
}

// Generator expression: name(arg, ..., key=value, ...), nested specs allowed.
//   cycle(n) path(n) complete(n) complete_bipartite(m,n)
//   product(spec, spec)
//   random(n, mult=M, loop=P, mindeg2=0|1)
//   random_f(spec, steps=S)
struct GenSpec {
  std::string family;
  std::vector<double> args;
  std::map<std::string, double> kwargs;
  std::vector<GenSpec> children;
  std::uint64_t seed = 0;
};

struct Generated {
  MultiGraph graph;
  std::optional<Certificate> certificate;
};

namespace detail {

struct GenSpecParser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw error(errc::parse, "generator spec: " + msg + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string ident() {
    size_t start = pos;
    while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) ++pos;
    if (pos == start) fail("expected a name");
    return text.substr(start, pos - start);
  }

  double number() {
    size_t start = pos;
    while (pos < text.size() && (std::isdigit((unsigned char)text[pos]) || text[pos] == '.')) ++pos;
    if (pos == start) fail("expected a number");
    try {
      return std::stod(text.substr(start, pos - start));
    } catch (const std::exception&) {
      fail("bad number '" + text.substr(start, pos - start) + "'");
    }
  }

  GenSpec spec() {
    skip_ws();
    GenSpec s;
    s.family = ident();
    skip_ws();
    if (peek() != '(') return s;
    ++pos;
    skip_ws();
    if (peek() == ')') {
      ++pos;
      return s;
    }
    for (;;) {
      skip_ws();
      if (std::isalpha((unsigned char)peek())) {
        size_t save = pos;
        std::string name = ident();
        skip_ws();
        if (peek() == '=') {
          ++pos;
          skip_ws();
          s.kwargs[name] = number();
        } else {
          pos = save;
          s.children.push_back(spec());
        }
      } else {
        s.args.push_back(number());
      }
      skip_ws();
      if (peek() == ',') {
        ++pos;
        continue;
      }
      expect(')');
      return s;
    }
  }
};

inline int genspec_int(double v, const std::string& what) {
  int i = int(v);
  if (double(i) != v) throw error(errc::parse, "generator spec: " + what + " must be an integer");
  return i;
}

}  // namespace detail

inline GenSpec parse_genspec(const std::string& text) {
  detail::GenSpecParser p{text};
  GenSpec s = p.spec();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters");
  return s;
}

inline Generated build_genspec(const GenSpec& spec) {
  auto arity = [&](size_t positional, size_t children) {
    if (spec.args.size() != positional || spec.children.size() != children)
      throw error(errc::parse, "generator spec: wrong arguments for '" + spec.family + "'");
  };
  auto allow_kwargs = [&](std::initializer_list<const char*> names) {
    for (const auto& [key, value] : spec.kwargs) {
      bool known = false;
      for (const char* n : names) known = known || key == n;
      if (!known) throw error(errc::parse, "generator spec: unknown option '" + key + "'");
    }
  };
  auto pos_int = [&](size_t i) { return detail::genspec_int(spec.args[i], "argument"); };
  auto kw = [&](const char* name, double fallback) {
    auto it = spec.kwargs.find(name);
    return it == spec.kwargs.end() ? fallback : it->second;
  };
  auto child = [&](size_t i) {
    GenSpec c = spec.children[i];
    c.seed = spec.seed;
    return build_genspec(c);
  };

  if (spec.family == "cycle") {
    arity(1, 0);
    allow_kwargs({});
    return {cycle(pos_int(0)), std::nullopt};
  }
  if (spec.family == "path") {
    arity(1, 0);
    allow_kwargs({});
    return {path_graph(pos_int(0)), std::nullopt};
  }
  if (spec.family == "complete") {
    arity(1, 0);
    allow_kwargs({});
    return {complete(pos_int(0)), std::nullopt};
  }
  if (spec.family == "complete_bipartite") {
    arity(2, 0);
    allow_kwargs({});
    return {complete_bipartite(pos_int(0), pos_int(1)), std::nullopt};
  }
  if (spec.family == "product" || spec.family == "cartesian_product") {
    arity(0, 2);
    allow_kwargs({});
    return {cartesian_product(child(0).graph, child(1).graph), std::nullopt};
  }
  if (spec.family == "random" || spec.family == "random_multigraph") {
    arity(1, 0);
    allow_kwargs({"mult", "loop", "mindeg2"});
    int mult = detail::genspec_int(kw("mult", 1), "mult");
    double loop = kw("loop", 0.0);
    int mindeg2 = detail::genspec_int(kw("mindeg2", 0), "mindeg2");
    return {random_multigraph(pos_int(0), mult, loop, spec.seed, mindeg2 != 0), std::nullopt};
  }
  if (spec.family == "random_f") {
    arity(0, 1);
    allow_kwargs({"steps"});
    int steps = detail::genspec_int(kw("steps", 1), "steps");
    auto [graph, cert] = random_f_graph(child(0).graph, steps, spec.seed);
    return {std::move(graph), std::move(cert)};
  }
  throw error(errc::parse, "generator spec: unknown family '" + spec.family + "'");
}

}  // namespace twodom
