#pragma once

// Minimal (2,2)-dominated graphs: connected graphs that are (2,2)-dominated
// while no proper spanning subgraph is. Structurally these are exactly the
// bipartite graphs with minimum degree 2 in which every edge has an endpoint
// of degree 2. The brute-force recognizer rechecks that definition by edge
// deletion and is the ground truth the structural test is validated against.

#include <optional>
#include <utility>

#include "domination.hpp"
#include "multigraph.hpp"

namespace twodom {

inline constexpr int kOracleVertexLimit = 16;

// Bipartition refined by degree: a2/b2 hold the degree-2 vertices of each
// side, a3/b3 the vertices of degree >= 3.
struct DegreeSplit {
  VertexSet a2, a3, b2, b3;
};

// The empty graph carries no (2,2)-pair, so it is excluded up front; the
// three structural properties would hold vacuously.
inline bool is_minimal_22_structural(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n == 0) return false;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) < 2) return false;
  if (!bipartition(g)) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.multiplicity(u, v) > 0 && g.degree(u) != 2 && g.degree(v) != 2) return false;
  return true;
}

inline bool is_minimal_22_oracle(const MultiGraph& g, int max_vertices = kOracleVertexLimit) {
  if (!is_connected(g)) throw error(errc::precondition, "oracle requires a connected graph");
  if (g.vertex_count() > max_vertices)
    throw error(errc::too_large, "oracle limited to " + std::to_string(max_vertices) + " vertices");
  if (!is_kl_dominated(g, 2, 2, max_vertices)) return false;
  for (int u = 0; u < g.vertex_count(); ++u) {
    if (g.loop_count(u) > 0 && is_kl_dominated(delete_edge(g, u, u), 2, 2, max_vertices)) return false;
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.multiplicity(u, v) > 0 && is_kl_dominated(delete_edge(g, u, v), 2, 2, max_vertices))
        return false;
  }
  return true;
}

// In a minimal graph the bipartition itself is a (2,2)-pair: minimum degree
// 2 sends at least two edges from every vertex across to the other side.
inline KLPair extract_partition_pair(const MultiGraph& g) {
  if (!is_minimal_22_structural(g))
    throw error(errc::not_minimal, "graph is not a minimal (2,2)-dominated graph");
  auto bp = bipartition(g);
  return KLPair{bp->first, bp->second, 2, 2};
}

inline DegreeSplit degree_split(const MultiGraph& g) {
  auto bp = bipartition(g);
  if (!bp) throw error(errc::precondition, "degree split requires a bipartite graph");
  int n = g.vertex_count();
  DegreeSplit s{VertexSet(n), VertexSet(n), VertexSet(n), VertexSet(n)};
  for (int v = 0; v < n; ++v) {
    int d = g.degree(v);
    if (d < 2) throw error(errc::precondition, "degree split requires minimum degree 2");
    bool in_a = bp->first.contains(v);
    (d == 2 ? (in_a ? s.a2 : s.b2) : (in_a ? s.a3 : s.b3)).add(v);
  }
  return s;
}

// Recognizes subdivision graphs and reconstructs the subdivided multigraph:
// one side of the bipartition must consist entirely of degree-2 vertices,
// which become the edge midpoints. A midpoint joined to two distinct
// vertices yields an edge of H; a midpoint joined to one vertex by a
// parallel pair yields a loop. When both sides qualify the larger side is
// taken as midpoints, ties going to B.
inline std::optional<MultiGraph> is_subdivision_graph(const MultiGraph& g) {
  if (!is_connected(g)) throw error(errc::precondition, "subdivision recognition requires a connected graph");
  auto bp = bipartition(g);
  if (!bp) return std::nullopt;
  auto all_degree_2 = [&](const VertexSet& s) {
    for (int v : s.members())
      if (g.degree(v) != 2) return false;
    return true;
  };
  bool qa = all_degree_2(bp->first);
  bool qb = all_degree_2(bp->second);
  const VertexSet* mids;
  if (qa && qb)
    mids = bp->first.count() > bp->second.count() ? &bp->first : &bp->second;
  else if (qa)
    mids = &bp->first;
  else if (qb)
    mids = &bp->second;
  else
    return std::nullopt;

  std::vector<int> label(g.vertex_count(), -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!mids->contains(v)) label[v] = next++;
  MultiGraph h(next);
  for (int w : mids->members()) {
    auto nb = g.neighbors(w);
    if (nb.size() == 2 && g.multiplicity(nb[0], w) == 1 && g.multiplicity(nb[1], w) == 1)
      h.add_edge(label[nb[0]], label[nb[1]]);
    else if (nb.size() == 1 && g.multiplicity(nb[0], w) == 2)
      h.add_loop(label[nb[0]]);
    else
      return std::nullopt;
  }
  return h;
}

}  // namespace twodom
