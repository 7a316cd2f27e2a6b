#pragma once

// Subdivision graphs, P-contractions, and the decomposition of connected
// minimal (2,2)-dominated graphs into a subdivision-graph seed plus a
// replayable sequence of validity-preserving contractions.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"
#include "multigraph.hpp"
#include "recognition.hpp"

namespace twodom {

namespace detail {

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("internal invariant violated: ") + what);
}

}  // namespace detail

// A center is contractible when no parallel edge or loop is incident to it.
inline bool is_contractible(const MultiGraph& g, int v) {
  if (g.loop_count(v) > 0) return false;
  for (int u : g.neighbors(v))
    if (g.multiplicity(u, v) > 1) return false;
  return true;
}

// Partition of the neighborhood of a contractible center into nonempty
// blocks, ordered by size and then by members.
struct Partition {
  int center = -1;
  std::vector<VertexSet> blocks;
};

namespace detail {

inline void sort_blocks(std::vector<VertexSet>& blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const VertexSet& x, const VertexSet& y) {
    int cx = x.count(), cy = y.count();
    if (cx != cy) return cx < cy;
    return x.members() < y.members();
  });
}

inline void check_partition(const MultiGraph& g, const Partition& p) {
  if (p.center < 0 || p.center >= g.vertex_count())
    throw error(errc::invalid_vertex, "partition center " + std::to_string(p.center) + " out of range");
  if (!is_contractible(g, p.center))
    throw error(errc::not_contractible,
                "vertex " + std::to_string(p.center) + " has an incident parallel edge or loop");
  if (p.blocks.empty()) throw error(errc::bad_partition, "partition has no blocks");
  VertexSet seen(g.vertex_count());
  for (const VertexSet& s : p.blocks) {
    if (s.universe() != g.vertex_count())
      throw error(errc::bad_partition, "block universe does not match the graph");
    if (s.empty()) throw error(errc::bad_partition, "empty partition block");
    if (!s.disjoint_with(seen)) throw error(errc::bad_partition, "overlapping partition blocks");
    seen = seen.unite(s);
  }
  if (!(seen == neighborhood(g, p.center)))
    throw error(errc::bad_partition, "blocks do not partition the neighborhood of the center");
}

}  // namespace detail

inline Partition make_partition(const MultiGraph& g, int center,
                                const std::vector<std::vector<int>>& blocks) {
  Partition p;
  p.center = center;
  for (const auto& raw : blocks) {
    VertexSet s(g.vertex_count());
    for (int v : raw) {
      if (s.contains(v)) throw error(errc::bad_partition, "repeated vertex in a partition block");
      s.add(v);
    }
    p.blocks.push_back(std::move(s));
  }
  detail::sort_blocks(p.blocks);
  detail::check_partition(g, p);
  return p;
}

// One contraction together with the result ids assigned to its blocks.
struct ContractionStep {
  Partition partition;
  std::vector<int> block_ids;
};

// Seed graph plus the contraction steps that rebuild a target graph, each
// step expressed in the labeling of the graph it applies to.
struct Certificate {
  MultiGraph seed;
  std::vector<ContractionStep> steps;
};

struct ContractionOutcome {
  MultiGraph graph;
  std::vector<int> vertex_map;  // old id -> new id, -1 for the removed neighborhood
  std::vector<int> block_ids;   // per block of the partition
};

// Replaces N(v) by one vertex per block: v keeps a single edge to each block
// vertex, every other survivor u is joined to a block vertex with
// multiplicity equal to the edge count between u and that block, and
// everything else is copied verbatim. Survivors are relabeled in id order,
// block vertices appended after them.
inline ContractionOutcome p_contraction_detailed(const MultiGraph& g, const Partition& p) {
  if (!bipartition(g)) throw error(errc::precondition, "contraction requires a bipartite graph");
  detail::check_partition(g, p);

  int n = g.vertex_count();
  VertexSet removed = neighborhood(g, p.center);
  std::vector<int> vmap(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (!removed.contains(v)) vmap[v] = next++;

  int k = int(p.blocks.size());
  MultiGraph out(next + k);
  for (int u = 0; u < n; ++u) {
    if (vmap[u] == -1) continue;
    for (int v = u + 1; v < n; ++v)
      if (vmap[v] != -1 && g.multiplicity(u, v) > 0) out.add_edge(vmap[u], vmap[v], g.multiplicity(u, v));
  }
  std::vector<int> block_ids(k);
  for (int i = 0; i < k; ++i) {
    int b = next + i;
    block_ids[i] = b;
    out.add_edge(vmap[p.center], b);
    for (int u = 0; u < n; ++u) {
      if (vmap[u] == -1 || u == p.center) continue;
      int c = 0;
      for (int x : p.blocks[i].members()) c += g.multiplicity(u, x);
      if (c > 0) out.add_edge(vmap[u], b, c);
    }
  }
  return {std::move(out), std::move(vmap), std::move(block_ids)};
}

inline MultiGraph p_contraction(const MultiGraph& g, const Partition& p) {
  return p_contraction_detailed(g, p).graph;
}

// Lemma test: the contraction of a minimal graph stays minimal exactly when
// every block is a singleton, or there are two blocks and every outside
// neighbor of each non-singleton block has degree 2.
inline bool validate_partition(const MultiGraph& g, const Partition& p) {
  if (!is_minimal_22_structural(g))
    throw error(errc::precondition, "partition validity is defined on minimal (2,2)-dominated graphs");
  detail::check_partition(g, p);
  int k = int(p.blocks.size());
  if (k == int(g.neighbors(p.center).size())) return true;
  if (k != 2) return false;
  for (const VertexSet& s : p.blocks) {
    if (s.count() < 2) continue;
    for (int x : s.members())
      for (int u : g.neighbors(x))
        if (u != p.center && g.degree(u) != 2) return false;
  }
  return true;
}

// New vertex in every edge and every loop; a loop becomes a parallel pair
// between its vertex and the new vertex. New ids follow the original ones:
// edge midpoints first (pairs in lexicographic order, parallel copies
// consecutively), then loop midpoints by vertex.
inline MultiGraph subdivide(const MultiGraph& h) {
  int n = h.vertex_count();
  int extra = h.edge_count();
  MultiGraph out(n + extra);
  int next = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int i = 0; i < h.multiplicity(u, v); ++i) {
        out.add_edge(u, next);
        out.add_edge(v, next);
        ++next;
      }
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < h.loop_count(v); ++i) {
      out.add_edge(v, next, 2);
      ++next;
    }
  return out;
}

struct ExpansionRecord {
  int split_vertex = -1;            // the removed degree->=3 vertex, in the input labeling
  int anchor = -1;                  // its path neighbor that absorbs the new vertices
  std::vector<int> parallel_pairs;  // neighbors joined to the split vertex by a double edge
  std::vector<int> singles;         // remaining neighbors of the split vertex
  std::vector<int> new_vertices;    // replacement vertices, in the result labeling
};

struct Expansion {
  MultiGraph graph;
  ContractionStep step;  // contracting graph with this step reproduces the input up to isomorphism
  ExpansionRecord record;
};

// Inverse contraction step. Absent when either side of the bipartition has
// no vertex of degree >= 3 (the graph is then a subdivision graph). The
// split vertex is taken from the side with fewer degree->=3 vertices (on
// ties, the side holding the smallest such id); among minimum-distance
// cross pairs the smallest split id and then the smallest far id win, and
// shortest paths walk smallest-id predecessors.
inline std::optional<Expansion> expand(const MultiGraph& g) {
  if (!is_connected(g)) throw error(errc::precondition, "expansion requires a connected graph");
  if (!is_minimal_22_structural(g))
    throw error(errc::precondition, "expansion requires a minimal (2,2)-dominated graph");
  DegreeSplit split = degree_split(g);
  if (split.a3.empty() || split.b3.empty()) return std::nullopt;

  VertexSet vside = split.a3, uside = split.b3;
  int ca = split.a3.count(), cb = split.b3.count();
  bool take_a = ca < cb || (ca == cb && split.a3.members().front() < split.b3.members().front());
  if (!take_a) std::swap(vside, uside);

  int best_d = -1, v = -1, u = -1;
  std::vector<int> dist;
  for (int x : vside.members()) {
    auto dx = bfs_distances(g, x);
    for (int y : uside.members())
      if (best_d == -1 || dx[y] < best_d) {
        best_d = dx[y];
        v = x;
        u = y;
        dist = dx;
      }
  }
  detail::internal_check(best_d >= 3 && best_d % 2 == 1, "cross-side distance must be odd and at least 3");

  std::vector<int> path{u};
  for (int cur = u; cur != v;) {
    int pred = -1;
    for (int x : g.neighbors(cur))
      if (dist[x] == dist[cur] - 1) {
        pred = x;
        break;
      }
    detail::internal_check(pred != -1, "shortest path reconstruction failed");
    path.push_back(pred);
    cur = pred;
  }
  std::reverse(path.begin(), path.end());
  int v1 = path[1], v2 = path[2];
  detail::internal_check(g.multiplicity(v, v1) == 1, "path neighbor of the split vertex must be simply attached");

  std::vector<int> pairs, singles;
  for (int x : g.neighbors(v)) {
    if (x == v1) continue;
    int m = g.multiplicity(v, x);
    detail::internal_check(m <= 2 && g.degree(x) == 2, "neighbors of a degree->=3 vertex must have degree 2");
    (m == 2 ? pairs : singles).push_back(x);
  }

  int n = g.vertex_count();
  std::vector<int> vmap(n, -1);
  int next = 0;
  for (int w = 0; w < n; ++w)
    if (w != v) vmap[w] = next++;
  int base = n - 1;
  int fresh_count = 2 * int(pairs.size()) + int(singles.size());
  MultiGraph out(base + fresh_count);
  for (int a = 0; a < n; ++a) {
    if (a == v) continue;
    for (int b = a + 1; b < n; ++b)
      if (b != v && g.multiplicity(a, b) > 0) out.add_edge(vmap[a], vmap[b], g.multiplicity(a, b));
  }
  std::vector<int> fresh(fresh_count);
  for (int i = 0; i < fresh_count; ++i) fresh[i] = base + i;
  for (int x : fresh) out.add_edge(vmap[v1], x);
  for (size_t i = 0; i < pairs.size(); ++i) {
    out.add_edge(vmap[pairs[i]], base + 2 * int(i));
    out.add_edge(vmap[pairs[i]], base + 2 * int(i) + 1);
  }
  for (size_t j = 0; j < singles.size(); ++j)
    out.add_edge(vmap[singles[j]], base + 2 * int(pairs.size()) + int(j));

  detail::internal_check(is_minimal_22_structural(out), "expansion must preserve minimality");

  Expansion e;
  e.step.partition = make_partition(out, vmap[v1], {{vmap[v2]}, fresh});
  int survivors = out.vertex_count() - (1 + fresh_count);
  e.step.block_ids = {survivors, survivors + 1};
  e.record = {v, v1, pairs, singles, fresh};
  e.graph = std::move(out);
  return e;
}

// Expands until a subdivision graph remains, then replays the contractions
// forward from the seed, re-expressing every recorded step in the labeling
// of the graph it is applied to (stages are only defined up to isomorphism,
// so each step is transported along an explicit isomorphism first).
inline Certificate decompose(const MultiGraph& g) {
  std::vector<MultiGraph> chain{g};
  std::vector<ContractionStep> raw;
  while (auto ex = expand(chain.back())) {
    chain.push_back(std::move(ex->graph));
    raw.push_back(std::move(ex->step));
  }
  Certificate cert;
  cert.seed = chain.back();
  MultiGraph r = cert.seed;
  for (int i = int(raw.size()); i >= 1; --i) {
    const MultiGraph& stage = chain[i];
    const Partition& sp = raw[i - 1].partition;
    Partition p;
    if (r == stage) {
      p = sp;
    } else {
      auto phi = find_isomorphism(stage, r);
      detail::internal_check(phi.has_value(), "decomposition stages must remain isomorphic");
      std::vector<std::vector<int>> blocks;
      for (const VertexSet& b : sp.blocks) {
        std::vector<int> mapped;
        for (int x : b.members()) mapped.push_back((*phi)[x]);
        blocks.push_back(std::move(mapped));
      }
      p = make_partition(r, (*phi)[sp.center], blocks);
    }
    ContractionOutcome outcome = p_contraction_detailed(r, p);
    cert.steps.push_back({std::move(p), std::move(outcome.block_ids)});
    r = std::move(outcome.graph);
  }
  detail::internal_check(are_isomorphic(r, g), "certificate replay must reproduce the input");
  return cert;
}

// Applies the certificate mechanically, validating the seed and every step.
inline MultiGraph replay(const Certificate& cert) {
  MultiGraph r = cert.seed;
  if (!is_connected(r) || !is_minimal_22_structural(r) || !is_subdivision_graph(r))
    throw error(errc::bad_certificate, "seed is not a connected minimal subdivision graph", -1);
  for (size_t i = 0; i < cert.steps.size(); ++i) {
    try {
      std::vector<std::vector<int>> blocks;
      for (const VertexSet& b : cert.steps[i].partition.blocks) blocks.push_back(b.members());
      Partition p = make_partition(r, cert.steps[i].partition.center, blocks);
      if (!validate_partition(r, p))
        throw error(errc::bad_certificate,
                    "step " + std::to_string(i) + " violates the contraction validity conditions", int(i));
      r = p_contraction(r, p);
    } catch (const error& e) {
      if (e.kind() == errc::bad_certificate) throw;
      throw error(errc::bad_certificate, "step " + std::to_string(i) + ": " + e.what(), int(i));
    }
  }
  return r;
}

// Certificate text: the seed in the graph format, then one line per step,
// "step <center> | <block> ; <block> ; ...", blocks smallest-first.
inline std::string write_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << write_graph(cert.seed);
  for (const ContractionStep& s : cert.steps) {
    os << "step " << s.partition.center << " |";
    for (size_t i = 0; i < s.partition.blocks.size(); ++i) {
      if (i > 0) os << " ;";
      for (int v : s.partition.blocks[i].members()) os << " " << v;
    }
    os << "\n";
  }
  return os.str();
}

inline Certificate parse_certificate(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  size_t first_step = lines.size();
  for (size_t i = 0; i < lines.size(); ++i) {
    auto toks = detail::tokenize(lines[i]);
    if (!toks.empty() && toks[0] == "step") {
      first_step = i;
      break;
    }
  }

  std::ostringstream head;
  for (size_t i = 0; i < first_step; ++i) head << lines[i] << "\n";
  Certificate cert;
  cert.seed = parse_graph(head.str());

  for (size_t i = first_step; i < lines.size(); ++i) {
    int lineno = int(i) + 1;
    auto toks = detail::tokenize(lines[i]);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw error(errc::parse, "line " + std::to_string(lineno) + ": " + msg, lineno);
    };
    if (toks[0] != "step") fail("expected a 'step' line after the seed graph");
    if (toks.size() < 4) fail("'step' takes a center, '|', and at least one block");
    int center = detail::parse_int(toks[1], lineno, "center");
    if (toks[2] != "|") fail("expected '|' after the step center");
    std::vector<std::vector<int>> blocks(1);
    int max_id = center;
    for (size_t t = 3; t < toks.size(); ++t) {
      if (toks[t] == ";") {
        if (blocks.back().empty()) fail("empty partition block");
        blocks.emplace_back();
      } else {
        int v = detail::parse_int(toks[t], lineno, "vertex id");
        for (int w : blocks.back())
          if (w == v) fail("repeated vertex in a partition block");
        blocks.back().push_back(v);
        max_id = std::max(max_id, v);
      }
    }
    if (blocks.back().empty()) fail("empty partition block");
    ContractionStep step;
    step.partition.center = center;
    for (const auto& raw : blocks) {
      VertexSet s(max_id + 1);
      for (int v : raw) s.add(v);
      step.partition.blocks.push_back(std::move(s));
    }
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

inline Certificate parse_certificate(const std::string& text) {
  std::istringstream is(text);
  return parse_certificate(is);
}

}  // namespace twodom
