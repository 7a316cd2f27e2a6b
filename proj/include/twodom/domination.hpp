#pragma once

// (k,l)-domination: a set D is k-dominating when every vertex outside D has
// at least k edge endpoints (counting multiplicity) inside D. Loops never
// contribute. A (k,l)-pair is two disjoint, nonempty, proper sets, the first
// k-dominating and the second l-dominating; the sets need not cover V.

#include <cstdint>
#include <optional>
#include <vector>

#include "multigraph.hpp"

namespace twodom {

// Default cap for the exact solver; the search is exponential in |V|.
inline constexpr int kSolverVertexLimit = 24;

struct KLPair {
  VertexSet d1, d2;
  int k = 1;
  int l = 1;
};

inline bool is_k_dominating(const MultiGraph& g, const VertexSet& d, int k) {
  if (k < 1) throw error(errc::invalid_parameter, "domination order must be positive");
  if (d.universe() != g.vertex_count())
    throw error(errc::invalid_parameter, "set universe does not match the graph");
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (d.contains(v)) continue;
    int have = 0;
    for (int u : g.neighbors(v)) {
      if (!d.contains(u)) continue;
      have += g.multiplicity(u, v);
      if (have >= k) break;
    }
    if (have < k) return false;
  }
  return true;
}

inline bool is_kl_pair(const MultiGraph& g, const KLPair& p) {
  if (p.k < 1 || p.l < 1) throw error(errc::invalid_parameter, "domination orders must be positive");
  int n = g.vertex_count();
  if (p.d1.universe() != n || p.d2.universe() != n)
    throw error(errc::invalid_parameter, "set universe does not match the graph");
  auto proper_nonempty = [&](const VertexSet& d) { return !d.empty() && d.count() < n; };
  if (!proper_nonempty(p.d1) || !proper_nonempty(p.d2)) return false;
  if (!p.d1.disjoint_with(p.d2)) return false;
  return is_k_dominating(g, p.d1, p.k) && is_k_dominating(g, p.d2, p.l);
}

// First (k,l)-pair in lowest-bitmask order of d1, with d2 = V \ d1. Taking
// the full complement loses nothing: l-domination is preserved under
// supersets, so any valid d2 can be grown to the complement. Vertices of
// degree < k must lie in d1 and vertices of degree < l must lie outside it,
// which prunes the scan without changing the first witness.
inline std::optional<KLPair> find_kl_pair(const MultiGraph& g, int k, int l,
                                          int max_vertices = kSolverVertexLimit) {
  if (k < 1 || l < 1) throw error(errc::invalid_parameter, "domination orders must be positive");
  if (max_vertices < 0) throw error(errc::invalid_parameter, "vertex limit must be nonnegative");
  int n = g.vertex_count();
  int limit = std::min(max_vertices, 62);
  if (n > limit)
    throw error(errc::too_large, "exact search limited to " + std::to_string(limit) + " vertices");
  if (n < 2) return std::nullopt;

  using u64 = std::uint64_t;
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) mult[u][v] = mult[v][u] = g.multiplicity(u, v);

  u64 all = (u64{1} << n) - 1;
  u64 forced_in = 0, forced_out = 0;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) < k) forced_in |= u64{1} << v;
    if (g.degree(v) < l) forced_out |= u64{1} << v;
  }
  if (forced_in & forced_out) return std::nullopt;
  u64 free = all & ~forced_in & ~forced_out;

  auto dominates = [&](u64 d, int need) {
    for (int v = 0; v < n; ++v) {
      if (d >> v & 1) continue;
      int have = 0;
      for (u64 rest = d; rest;) {
        int u = std::countr_zero(rest);
        rest &= rest - 1;
        have += mult[v][u];
        if (have >= need) break;
      }
      if (have < need) return false;
    }
    return true;
  };

  for (u64 sub = 0;; sub = (sub - free) & free) {
    u64 d1 = forced_in | sub;
    if (d1 != 0 && d1 != all && dominates(d1, k) && dominates(all & ~d1, l)) {
      KLPair p{VertexSet(n), VertexSet(n), k, l};
      for (int v = 0; v < n; ++v) (d1 >> v & 1 ? p.d1 : p.d2).add(v);
      return p;
    }
    if (sub == free) break;
  }
  return std::nullopt;
}

inline bool is_kl_dominated(const MultiGraph& g, int k, int l,
                            int max_vertices = kSolverVertexLimit) {
  return find_kl_pair(g, k, l, max_vertices).has_value();
}

}  // namespace twodom
