#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "designkit/decomposition.hpp"
#include "designkit/deficiency.hpp"
#include "designkit/designs.hpp"
#include "designkit/factor.hpp"
#include "designkit/graph.hpp"
#include "designkit/latin.hpp"

namespace designkit {

// K_n minus every edge inside {0..s-1}, except the first `keep` of them.
inline Graph complete_minus_clique(int n, int s, int keep = 0) {
  GraphBuilder b(Graph::complete(static_cast<std::size_t>(n)));
  int kept = 0;
  for (int u = 0; u < s; ++u) {
    for (int v = u + 1; v < s; ++v) {
      if (kept < keep) {
        ++kept;
        continue;
      }
      b.remove_edge(u, v);
    }
  }
  return std::move(b).build();
}

// K_{n-t} on 0..n-t-1 plus t isolated vertices.
inline Graph ham_g1(int n, int t) {
  GraphBuilder b(static_cast<std::size_t>(n));
  for (int u = 0; u < n - t; ++u)
    for (int v = u + 1; v < n - t; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

// Extremal graphs for G * K_t non-Hamiltonian: one graph, or two at a tie.
inline std::vector<Graph> ham_extremal(int n, int t) {
  if (n < 3 || t < 1 || t >= n) throw InputError("ham_extremal requires n >= 3 and 1 <= t < n");
  const HamBound b = ham_max_edges(n, t);
  std::vector<Graph> out;
  if (b.regime != Regime::kLargeT) out.push_back(ham_g1(n, t));
  if (b.regime != Regime::kSmallT) {
    out.push_back(b.even ? complete_minus_clique(n, (n + t + 2) / 2, 1) : complete_minus_clique(n, (n + t + 1) / 2));
  }
  return out;
}

// t odd: the first (t+1)/2 vertices isolated. t even: the first t/2+1 vertices keep only
// their edges to the next vertex v.
inline Graph triangle_extremal(int n, int t) {
  const TriangleBound tb = triangle_max_edges(n, t);
  const int k = tb.k;
  if (k + (t % 2 == 0 ? 1 : 0) > n) throw InputError("triangle_extremal: n too small for t");
  GraphBuilder b(Graph::complete(static_cast<std::size_t>(n)));
  for (int s = 0; s < k; ++s) {
    for (int v = 0; v < n; ++v) {
      if (v == s) continue;
      if (t % 2 == 0 && v == k) continue;
      b.remove_edge(s, v);
    }
  }
  return std::move(b).build();
}

// K_n minus every edge inside a set of (n+t)/3 + 1 vertices. No optimality claim.
inline Graph triangle_large_t(int n, int t) {
  if (t < 1 || (n + t) % 3 != 0) throw InputError("triangle_large_t requires t >= 1 and 3 | n+t");
  const int s = (n + t) / 3 + 1;
  if (s > n) throw InputError("triangle_large_t: independent set larger than n");
  return complete_minus_clique(n, s);
}

struct DesignSharpness {
  PartialDesign design;
  Vertex v = 0;
  std::vector<Vertex> v_prime;
  int requested = 0;    // |V'| asked for
  bool adjusted = false;
  int min_extra = 0;    // (k-2)|V'| added points needed by any embedding
};

namespace detail {

// Blocks of a K_k-decomposition of the clique on `points`, if one exists.
inline std::optional<std::vector<Block>> clique_design(const std::vector<Vertex>& points, int k) {
  const int s = static_cast<int>(points.size());
  if (s == 0) return std::vector<Block>{};
  if (!design_admissible(s, k)) return std::nullopt;
  auto dec = find_kk_decomposition(Graph::complete(static_cast<std::size_t>(s)), k);
  if (!dec) return std::nullopt;
  std::vector<Block> out;
  for (const auto& q : dec->cliques) {
    Block b;
    for (Vertex x : q) b.push_back(points[x]);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace detail

// Point v = 0, V' = {1..s} carrying a design, and blocks {v} + consecutive (k-1)-sets of the rest.
// An infeasible s snaps to the nearest size with a design on V' (smaller first on ties).
inline DesignSharpness design_sharpness_sized(int n, int k, int s) {
  if (k < 3) throw InputError("design_sharpness requires k >= 3");
  if (s < 0 || s > n - 1) throw InputError("design_sharpness: |V'| must lie in 0..n-1");
  DesignSharpness out;
  out.requested = s;
  std::optional<std::vector<Block>> inner;
  int chosen = -1;
  for (int d = 0; d <= n && chosen < 0; ++d) {
    for (int cand : {s - d, s + d}) {
      if (cand < 0 || cand > n - 1) continue;
      std::vector<Vertex> pts;
      for (int i = 1; i <= cand; ++i) pts.push_back(i);
      if ((inner = detail::clique_design(pts, k))) {
        chosen = cand;
        break;
      }
    }
  }
  out.adjusted = chosen != s;
  std::vector<Block> blocks = *inner;
  for (int i = 1; i <= chosen; ++i) out.v_prime.push_back(i);
  for (int start = chosen + 1; start + (k - 1) <= n; start += k - 1) {
    Block b{0};
    for (int i = 0; i < k - 1; ++i) b.push_back(start + i);
    blocks.push_back(std::move(b));
  }
  out.design = validate_partial_design(n, k, std::move(blocks));
  // Each V' point needs its own block through v with k-2 points from the leftovers or new ones.
  const int leftover = (n - 1 - chosen) % (k - 1);
  out.min_extra = std::max(0, (k - 2) * chosen - leftover);
  return out;
}

// Sized by |V'| = k√r/2 (rounded). Outside 2n < r <= 4n²/k² only when `relax` is set.
inline DesignSharpness design_sharpness(int n, int k, int r, bool relax = false) {
  if (k < 3 || r < 0) throw InputError("design_sharpness requires k >= 3, r >= 0");
  const std::int64_t kk = static_cast<std::int64_t>(k) * k;
  if (!relax && !(2LL * n < r && kk * r <= 4LL * n * n)) {
    throw InputError("design_sharpness: r outside (2n, 4n²/k²]; pass relax to override");
  }
  const int s = static_cast<int>(std::lround(k * std::sqrt(static_cast<double>(r)) / 2.0));
  return design_sharpness_sized(n, k, std::min(s, n - 1));
}

struct MolsSharpness {
  CliqueFamily family;
  int requested = 0;  // |X_i| asked for
  int x = 0;          // |X_i| used
  bool adjusted = false;
  int min_extra = 0;  // (k-2)|X_i| new vertices per class needed by any containing decomposition
};

// X_i = labels 0..x-1 of each class carrying a K_k-decomposition; v_1 = label x of class 1
// joined to the K_{k-1}-factor {label j in classes 2..k}, j = x..n-1.
inline MolsSharpness mols_sharpness_sized(int n, int k, int x) {
  if (k < 3) throw InputError("mols_sharpness requires k >= 3");
  if (x < 0 || x > n - 1) throw InputError("mols_sharpness: |X_i| must lie in 0..n-1");
  MolsSharpness out;
  out.requested = x;
  std::optional<Decomposition> inner;
  int chosen = -1;
  for (int d = 0; d <= n && chosen < 0; ++d) {
    for (int cand : {x - d, x + d}) {
      if (cand < 0 || cand > n - 1) continue;
      if (cand == 0) {
        inner = Decomposition{k, {}};
      } else {
        inner = find_kk_decomposition(complete_multipartite_graph(static_cast<std::size_t>(k), static_cast<std::size_t>(cand)), k);
      }
      if (inner) {
        chosen = cand;
        break;
      }
    }
  }
  std::vector<CliqueFamily::PartiteClique> cliques;
  for (const auto& q : inner->cliques) {
    CliqueFamily::PartiteClique c(static_cast<std::size_t>(k), kEmpty);
    for (Vertex v : q) c[v / chosen] = v % chosen;
    cliques.push_back(std::move(c));
  }
  for (int j = chosen; j < n; ++j) {
    CliqueFamily::PartiteClique c(static_cast<std::size_t>(k), j);
    c[0] = chosen;
    cliques.push_back(std::move(c));
  }
  out.family = CliqueFamily(k, n, std::move(cliques));
  out.x = chosen;
  out.adjusted = chosen != x;
  out.min_extra = (k - 2) * chosen;
  return out;
}

// Sized by |X_i| = √(m/2) (rounded).
inline MolsSharpness mols_sharpness(int n, int k, int m) {
  if (m < 0) throw InputError("mols_sharpness requires m >= 0");
  const int x = static_cast<int>(std::lround(std::sqrt(m / 2.0)));
  return mols_sharpness_sized(n, k, std::min(x, n - 1));
}

// Order-n square: symbol 1 on the diagonal except the last cell, which holds 2.
inline PartialLatinSquare evans_sharpness(int n) {
  if (n < 2) throw InputError("evans_sharpness requires n >= 2");
  std::vector<int> cells(static_cast<std::size_t>(n) * n, kEmpty);
  for (int i = 0; i + 1 < n; ++i) cells[static_cast<std::size_t>(i) * n + i] = 0;
  cells.back() = 1;
  return validate_latin(n, std::move(cells));
}

struct NearFactorInstance {
  Graph g;
  std::vector<Vertex> s_set, t_set;
  RemovedEdgeSet removed;
};

// Complete graph on S ∪ T, |S| = ⌊k√r⌋, |T| = (k-1)|S| - 1, every S-S edge removed:
// S-vertices need more T-partners than exist.
inline NearFactorInstance lemma31_sharpness(int k, int r) {
  if (k < 2 || r < 1) throw InputError("lemma31_sharpness requires k >= 2, r >= 1");
  const int s = static_cast<int>(floor_sqrt(static_cast<std::int64_t>(k) * k * r));
  const int t = (k - 1) * s - 1;
  NearFactorInstance out;
  out.g = Graph::complete(static_cast<std::size_t>(s + t));
  std::vector<Edge> removed;
  for (int u = 0; u < s; ++u) {
    out.s_set.push_back(u);
    for (int v = u + 1; v < s; ++v) removed.emplace_back(u, v);
  }
  for (int v = s; v < s + t; ++v) out.t_set.push_back(v);
  out.removed = RemovedEdgeSet(out.g.order(), removed);
  return out;
}

struct MultipartiteInstance {
  MultipartiteGraph mg;
  std::vector<PartSplit> splits;
  RemovedEdgeSet removed;
};

// k classes with |S_i| = ⌊√m⌋ and |T_i| = (k-1)|S_i| - 1, every S-S edge removed.
inline MultipartiteInstance lemma42_sharpness(int k, int m) {
  if (k < 2 || m < 1) throw InputError("lemma42_sharpness requires k >= 2, m >= 1");
  const int s = static_cast<int>(floor_sqrt(m));
  const int size = s + (k - 1) * s - 1;
  std::vector<PartSplit> splits(static_cast<std::size_t>(k));
  std::vector<Edge> removed;
  for (int p = 0; p < k; ++p) {
    for (int i = 0; i < size; ++i) (i < s ? splits[p].s : splits[p].t).push_back(p * size + i);
  }
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      for (Vertex u : splits[p].s)
        for (Vertex v : splits[q].s) removed.emplace_back(u, v);
  auto mg = MultipartiteGraph::complete(static_cast<std::size_t>(k), static_cast<std::size_t>(size));
  RemovedEdgeSet rs(mg.graph().order(), removed);
  return {std::move(mg), std::move(splits), std::move(rs)};
}

}  // namespace designkit
