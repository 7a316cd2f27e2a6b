#pragma once

// Undirected multigraphs with parallel edges and loops, vertex subsets,
// and the structural queries shared by the rest of the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace twodom {

enum class errc {
  invalid_vertex,
  invalid_parameter,
  missing_edge,
  precondition,
  parse,
  too_large,
  unsupported,
  io,
  not_minimal,
  not_contractible,
  bad_partition,
  bad_certificate,
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what, int detail = -1)
      : std::runtime_error(what), kind_(kind), detail_(detail) {}

  errc kind() const { return kind_; }

  // Parse line number or certificate step index; -1 when unused.
  int detail() const { return detail_; }

 private:
  errc kind_;
  int detail_;
};

// Subset of {0, ..., universe-1} backed by a bitset, so it stays cheap for
// the large vertex counts subdivision graphs produce.
class VertexSet {
 public:
  VertexSet() = default;

  explicit VertexSet(int universe) {
    if (universe < 0) throw error(errc::invalid_parameter, "vertex set universe must be nonnegative");
    n_ = universe;
    bits_.assign((size_t(universe) + 63) / 64, 0);
  }

  static VertexSet of(int universe, std::initializer_list<int> members) {
    VertexSet s(universe);
    for (int v : members) s.add(v);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int v) const {
    check(v);
    return bits_[size_t(v) >> 6] >> (v & 63) & 1;
  }

  void add(int v) {
    check(v);
    bits_[size_t(v) >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void remove(int v) {
    check(v);
    bits_[size_t(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const VertexSet& o) const {
    match(o);
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  bool disjoint_with(const VertexSet& o) const {
    match(o);
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & o.bits_[i]) return false;
    return true;
  }

  VertexSet complement() const {
    VertexSet out(n_);
    for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = ~bits_[i];
    if (n_ & 63) out.bits_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    return out;
  }

  VertexSet unite(const VertexSet& o) const {
    match(o);
    VertexSet out(n_);
    for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | o.bits_[i];
    return out;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (bits_[size_t(v) >> 6] >> (v & 63) & 1) out.push_back(v);
    return out;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  void check(int v) const {
    if (v < 0 || v >= n_)
      throw error(errc::invalid_vertex, "vertex " + std::to_string(v) + " outside universe of size " + std::to_string(n_));
  }

  void match(const VertexSet& o) const {
    if (n_ != o.n_) throw error(errc::invalid_parameter, "vertex sets over different universes");
  }

  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Vertices are 0..n-1. The symmetric multiplicity matrix stores parallel
// edge counts off the diagonal and loop counts on it. A loop contributes 2
// to the degree of its vertex.
class MultiGraph {
 public:
  MultiGraph() = default;

  explicit MultiGraph(int n) {
    if (n < 0) throw error(errc::invalid_parameter, "vertex count must be nonnegative");
    n_ = n;
    mult_.assign(size_t(n) * n, 0);
  }

  int vertex_count() const { return n_; }

  // Parallel copies counted individually; each loop counts once.
  int edge_count() const {
    int total = 0;
    for (int u = 0; u < n_; ++u) {
      total += at(u, u);
      for (int v = u + 1; v < n_; ++v) total += at(u, v);
    }
    return total;
  }

  // Number of parallel u-v edges; 0 when u == v (loops are reported by loop_count).
  int multiplicity(int u, int v) const {
    check(u);
    check(v);
    return u == v ? 0 : at(u, v);
  }

  int loop_count(int v) const {
    check(v);
    return at(v, v);
  }

  int degree(int v) const {
    check(v);
    int d = 2 * at(v, v);
    for (int u = 0; u < n_; ++u)
      if (u != v) d += at(u, v);
    return d;
  }

  // Distinct adjacent vertices other than v, ascending.
  std::vector<int> neighbors(int v) const {
    check(v);
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
      if (u != v && at(u, v) > 0) out.push_back(u);
    return out;
  }

  void add_edge(int u, int v, int count = 1) {
    check(u);
    check(v);
    if (u == v) throw error(errc::invalid_parameter, "loops are added with add_loop");
    if (count < 1) throw error(errc::invalid_parameter, "edge multiplicity must be positive");
    at(u, v) += count;
    at(v, u) += count;
  }

  void add_loop(int v, int count = 1) {
    check(v);
    if (count < 1) throw error(errc::invalid_parameter, "loop count must be positive");
    at(v, v) += count;
  }

  // Copy with one copy of u-v removed; u == v removes one loop at u.
  MultiGraph without_edge_copy(int u, int v) const {
    check(u);
    check(v);
    if (at(u, v) < 1)
      throw error(errc::missing_edge,
                  u == v ? "no loop at vertex " + std::to_string(u)
                         : "no edge between " + std::to_string(u) + " and " + std::to_string(v));
    MultiGraph out = *this;
    out.at(u, v) -= 1;
    if (u != v) out.at(v, u) -= 1;
    return out;
  }

  bool operator==(const MultiGraph&) const = default;

 private:
  int& at(int u, int v) { return mult_[size_t(u) * n_ + v]; }
  int at(int u, int v) const { return mult_[size_t(u) * n_ + v]; }

  void check(int v) const {
    if (v < 0 || v >= n_)
      throw error(errc::invalid_vertex, "vertex " + std::to_string(v) + " outside graph of order " + std::to_string(n_));
  }

  int n_ = 0;
  std::vector<int> mult_;
};

inline MultiGraph delete_edge(const MultiGraph& g, int u, int v) { return g.without_edge_copy(u, v); }

// Distinct adjacent vertices; v itself belongs to its neighborhood exactly
// when it carries a loop.
inline VertexSet neighborhood(const MultiGraph& g, int v) {
  VertexSet out(g.vertex_count());
  for (int u : g.neighbors(v)) out.add(u);
  if (g.loop_count(v) > 0) out.add(v);
  return out;
}

// BFS hop distances over distinct-vertex adjacency; -1 marks unreachable.
inline std::vector<int> bfs_distances(const MultiGraph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  if (g.vertex_count() == 0) return dist;
  dist[src] = 0;
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    int w = q.front();
    q.pop();
    for (int u : g.neighbors(w))
      if (dist[u] == -1) {
        dist[u] = dist[w] + 1;
        q.push(u);
      }
  }
  return dist;
}

inline VertexSet neighborhood_2(const MultiGraph& g, int v) {
  auto dist = bfs_distances(g, v);
  VertexSet out(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u)
    if (dist[u] == 2) out.add(u);
  return out;
}

// Total multiplicity of edges with one endpoint in a and the other in b.
inline int edges_between(const MultiGraph& g, const VertexSet& a, const VertexSet& b) {
  if (a.universe() != g.vertex_count() || b.universe() != g.vertex_count())
    throw error(errc::invalid_parameter, "set universe does not match the graph");
  if (!a.disjoint_with(b)) throw error(errc::precondition, "edges_between requires disjoint sets");
  int total = 0;
  for (int u : a.members())
    for (int v : b.members()) total += g.multiplicity(u, v);
  return total;
}

inline bool is_connected(const MultiGraph& g) {
  int n = g.vertex_count();
  if (n == 0) return true;
  auto dist = bfs_distances(g, 0);
  for (int v = 0; v < n; ++v)
    if (dist[v] == -1) return false;
  return true;
}

// Two-coloring with parts (A, B); absent when some component is not
// two-colorable or the graph has a loop. The BFS root of each component
// (its smallest vertex) lands in A, so the split is deterministic.
inline std::optional<std::pair<VertexSet, VertexSet>> bipartition(const MultiGraph& g) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.loop_count(v) > 0) return std::nullopt;
  std::vector<int> side(n, -1);
  for (int root = 0; root < n; ++root) {
    if (side[root] != -1) continue;
    side[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int w = q.front();
      q.pop();
      for (int u : g.neighbors(w)) {
        if (side[u] == -1) {
          side[u] = 1 - side[w];
          q.push(u);
        } else if (side[u] == side[w]) {
          return std::nullopt;
        }
      }
    }
  }
  VertexSet a(n), b(n);
  for (int v = 0; v < n; ++v) (side[v] == 0 ? a : b).add(v);
  return std::make_pair(a, b);
}

namespace detail {

// Iterated degree refinement. Colors are ranks of content-ordered vertex
// signatures, so isomorphic vertices of two graphs receive equal colors
// even when the colorings are computed independently. Signatures live in
// one flat buffer to keep the refinement allocation-free per round.
inline std::vector<int> refinement_colors(const MultiGraph& g) {
  int n = g.vertex_count();
  std::vector<int> color(n, 0);
  if (n == 0) return color;

  std::vector<int> flat, next_flat;
  std::vector<size_t> off(n + 1, 0), next_off(n + 1, 0);
  std::vector<int> idx(n);

  auto rerank = [&]() {
    for (int v = 0; v < n; ++v) idx[v] = v;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return std::lexicographical_compare(flat.begin() + off[a], flat.begin() + off[a + 1],
                                          flat.begin() + off[b], flat.begin() + off[b + 1]);
    });
    int classes = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        int a = idx[i - 1], b = idx[i];
        bool same = off[a + 1] - off[a] == off[b + 1] - off[b] &&
                    std::equal(flat.begin() + off[a], flat.begin() + off[a + 1],
                               flat.begin() + off[b]);
        if (!same) ++classes;
      }
      color[idx[i]] = classes;
    }
    return classes + 1;
  };

  for (int v = 0; v < n; ++v) {
    off[v] = flat.size();
    flat.push_back(g.degree(v));
    flat.push_back(g.loop_count(v));
  }
  off[n] = flat.size();
  int classes = rerank();

  std::vector<std::pair<int, int>> nb;
  for (int round = 0; round < n; ++round) {
    next_flat.clear();
    for (int v = 0; v < n; ++v) {
      next_off[v] = next_flat.size();
      next_flat.push_back(color[v]);
      next_flat.push_back(g.loop_count(v));
      nb.clear();
      for (int u = 0; u < n; ++u) {
        int m = g.multiplicity(u, v);
        if (m > 0) nb.emplace_back(m, color[u]);
      }
      std::sort(nb.begin(), nb.end());
      for (auto& [m, c] : nb) {
        next_flat.push_back(m);
        next_flat.push_back(c);
      }
    }
    next_off[n] = next_flat.size();
    flat.swap(next_flat);
    off.swap(next_off);
    int next = rerank();
    if (next == classes) break;
    classes = next;
  }
  return color;
}

// Exact canonical form: the lexicographically smallest loop-and-upper-
// triangle byte encoding over every relabeling that lists the refinement
// classes in color order. Codes of two graphs are equal exactly when the
// graphs are isomorphic. The search space is the product of per-class
// permutations, at most n! and usually a single candidate, so this is for
// small graphs only.
inline std::string canonical_code(const MultiGraph& g) {
  int n = g.vertex_count();
  std::vector<int> color = refinement_colors(g);
  std::vector<int> verts(n);
  for (int v = 0; v < n; ++v) verts[v] = v;
  std::sort(verts.begin(), verts.end(),
            [&](int a, int b) { return std::make_pair(color[a], a) < std::make_pair(color[b], b); });
  std::vector<std::pair<int, int>> segments;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && color[verts[j]] == color[verts[i]]) ++j;
    if (j - i > 1) segments.emplace_back(i, j);
    i = j;
  }

  std::string best, code;
  code.resize(size_t(n) * (n + 1) / 2);
  for (;;) {
    size_t at = 0;
    for (int i = 0; i < n; ++i) {
      code[at++] = char(g.loop_count(verts[i]));
      for (int j = i + 1; j < n; ++j) code[at++] = char(g.multiplicity(verts[i], verts[j]));
    }
    if (best.empty() || code < best) best = code;
    int k = int(segments.size()) - 1;
    while (k >= 0 && !std::next_permutation(verts.begin() + segments[k].first,
                                            verts.begin() + segments[k].second))
      --k;
    if (k < 0) break;
  }
  return best;
}

}  // namespace detail

// Vertex bijection phi with m_g(u, v) = m_h(phi(u), phi(v)) and matching
// loop counts, or absent when none exists.
inline std::optional<std::vector<int>> find_isomorphism(const MultiGraph& g, const MultiGraph& h) {
  int n = g.vertex_count();
  if (h.vertex_count() != n) return std::nullopt;
  if (g.edge_count() != h.edge_count()) return std::nullopt;

  auto cg = detail::refinement_colors(g);
  auto ch = detail::refinement_colors(h);
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  std::map<int, int> class_size;
  for (int c : cg) class_size[c]++;
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return std::make_tuple(class_size[cg[x]], cg[x], x) < std::make_tuple(class_size[cg[y]], cg[y], y);
  });

  std::vector<int> phi(n, -1);
  std::vector<char> used(n, 0);

  auto consistent = [&](int idx, int v, int w) {
    if (cg[v] != ch[w]) return false;
    if (g.loop_count(v) != h.loop_count(w)) return false;
    for (int j = 0; j < idx; ++j) {
      int u = order[j];
      if (g.multiplicity(v, u) != h.multiplicity(w, phi[u])) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int idx) -> bool {
    if (idx == n) return true;
    int v = order[idx];
    for (int w = 0; w < n; ++w) {
      if (used[w] || !consistent(idx, v, w)) continue;
      phi[v] = w;
      used[w] = 1;
      if (self(self, idx + 1)) return true;
      phi[v] = -1;
      used[w] = 0;
    }
    return false;
  };

  if (!dfs(dfs, 0)) return std::nullopt;
  return phi;
}

inline bool are_isomorphic(const MultiGraph& g, const MultiGraph& h) {
  return find_isomorphism(g, h).has_value();
}

}  // namespace twodom
