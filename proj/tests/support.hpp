#pragma once

// Naive reference implementations used as oracles by the tests. Nothing here calls the
// library's solvers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "designkit/graph.hpp"
#include "designkit/latin.hpp"

namespace testing_support {

using designkit::Graph;
using designkit::GraphBuilder;
using designkit::Vertex;

inline std::vector<designkit::Edge> all_pairs(int n) {
  std::vector<designkit::Edge> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
  GraphBuilder b(static_cast<std::size_t>(n));
  const auto pairs = all_pairs(n);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if ((mask >> i) & 1) b.add_edge(pairs[i].first, pairs[i].second);
  return std::move(b).build();
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  GraphBuilder b(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  return std::move(b).build();
}

inline bool naive_hamiltonian(const Graph& g) {
  const int n = static_cast<int>(g.order());
  if (n < 3) return false;
  std::vector<int> p(static_cast<std::size_t>(n - 1));
  std::iota(p.begin(), p.end(), 1);
  do {
    bool ok = g.adjacent(0, p.front()) && g.adjacent(p.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = g.adjacent(p[i], p[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Least number of vertex-disjoint paths covering g: the fewest breaks over all orderings, plus one.
inline int naive_path_cover(const Graph& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  int best = n;
  do {
    int paths = 1;
    for (int i = 0; i + 1 < n; ++i) paths += g.adjacent(p[i], p[i + 1]) ? 0 : 1;
    best = std::min(best, paths);
  } while (best > 1 && std::next_permutation(p.begin(), p.end()));
  return best;
}

inline bool naive_triangle_factor(const Graph& g, std::vector<char>& used) {
  const int n = static_cast<int>(g.order());
  int a = 0;
  while (a < n && used[a]) ++a;
  if (a == n) return true;
  used[a] = 1;
  for (int b = a + 1; b < n; ++b) {
    if (used[b] || !g.adjacent(a, b)) continue;
    used[b] = 1;
    for (int c = b + 1; c < n; ++c) {
      if (used[c] || !g.adjacent(a, c) || !g.adjacent(b, c)) continue;
      used[c] = 1;
      if (naive_triangle_factor(g, used)) return true;
      used[c] = 0;
    }
    used[b] = 0;
  }
  used[a] = 0;
  return false;
}

inline bool naive_triangle_factor(const Graph& g) {
  if (g.order() % 3 != 0) return false;
  std::vector<char> used(g.order(), 0);
  return naive_triangle_factor(g, used);
}

// Random complete Latin square of order n (0-indexed symbols): cyclic square with rows,
// columns and symbols permuted.
inline std::vector<int> random_latin(int n, std::mt19937_64& rng) {
  std::vector<int> r(n), c(n), s(n);
  std::iota(r.begin(), r.end(), 0);
  std::iota(c.begin(), c.end(), 0);
  std::iota(s.begin(), s.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  std::shuffle(s.begin(), s.end(), rng);
  std::vector<int> cells(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[static_cast<std::size_t>(r[i]) * n + c[j]] = s[(i + j) % n];
  return cells;
}

// Random partial Latin square: a random set of at most `filled` cells, each given a symbol
// not yet used in its row and column (cells with no free symbol stay empty).
inline std::vector<int> random_partial_latin(int n, int filled, std::mt19937_64& rng) {
  std::vector<int> cells(static_cast<std::size_t>(n) * n, designkit::kEmpty);
  std::vector<int> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int idx = 0; idx < filled && idx < static_cast<int>(order.size()); ++idx) {
    const int r = order[idx] / n, c = order[idx] % n;
    std::vector<int> free;
    for (int s = 0; s < n; ++s) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = cells[static_cast<std::size_t>(r) * n + x] != s && cells[static_cast<std::size_t>(x) * n + c] != s;
      if (ok) free.push_back(s);
    }
    if (free.empty()) continue;
    cells[order[idx]] = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
  }
  return cells;
}

// Up to `blocks` random triples on n points, greedily skipping any triple that reuses a pair.
inline std::vector<std::vector<int>> random_partial_sts(int n, int blocks, std::mt19937_64& rng) {
  std::vector<std::vector<int>> out;
  std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int tries = 0; tries < 50 * blocks && static_cast<int>(out.size()) < blocks; ++tries) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    if (used[a * n + b] || used[a * n + c] || used[b * n + c]) continue;
    for (auto [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) used[x * n + y] = used[y * n + x] = 1;
    std::vector<int> blk{a, b, c};
    std::sort(blk.begin(), blk.end());
    out.push_back(blk);
  }
  return out;
}

// Every pair of 0..n-1 in exactly one block, blocks of size k with distinct in-range points.
inline bool pairs_exactly_once(int n, int k, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> count(static_cast<std::size_t>(n) * n, 0);
  for (const auto& b : blocks) {
    if (static_cast<int>(b.size()) != k) return false;
    for (int x : b)
      if (x < 0 || x >= n) return false;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j) {
          if (b[i] == b[j]) return false;
          ++count[b[i] * n + b[j]];
        }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && count[u * n + v] != 1) return false;
  return true;
}

// Complete Latin square with every pair of squares orthogonal, checked cell by cell.
inline bool complete_mols(int n, const std::vector<std::vector<int>>& squares) {
  for (const auto& s : squares) {
    if (s.size() != static_cast<std::size_t>(n) * n) return false;
    for (int a = 0; a < n; ++a) {
      std::vector<int> row(n, 0), col(n, 0);
      for (int b = 0; b < n; ++b) {
        const int x = s[a * n + b], y = s[b * n + a];
        if (x < 0 || x >= n || y < 0 || y >= n || row[x]++ || col[y]++) return false;
      }
    }
  }
  for (std::size_t i = 0; i < squares.size(); ++i)
    for (std::size_t j = i + 1; j < squares.size(); ++j) {
      std::vector<int> seen(static_cast<std::size_t>(n) * n, 0);
      for (int c = 0; c < n * n; ++c)
        if (seen[squares[i][c] * n + squares[j][c]]++) return false;
    }
  return true;
}

}  // namespace testing_support
