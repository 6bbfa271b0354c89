#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "designkit/factor.hpp"
#include "designkit/graph.hpp"
#include "designkit/hamilton.hpp"

namespace designkit {

enum class Regime { kSmallT, kLargeT, kTie };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::kSmallT: return "small-t";
    case Regime::kLargeT: return "large-t";
    case Regime::kTie: return "tie";
  }
  return "?";
}

struct HamBound {
  int n = 0;
  int t = 0;
  std::int64_t max_edges = 0;
  Regime regime = Regime::kSmallT;
  bool even = false;        // parity of n + t
  bool attainable = true;   // false when t >= n: every join is then Hamiltonian
};

// Missing edges of the isolated-set construction with i removed vertices in G * K_t.
inline std::int64_t ham_missing(int n, int t, std::int64_t i) {
  return i * (n + t - 1 - i) - choose2(i);
}

// Maximum e(G) over n-vertex G with G * K_t not Hamiltonian.
inline HamBound ham_max_edges(int n, int t) {
  if (n < 3) throw InputError("ham_max_edges requires n >= 3");
  if (t == 0) throw InputError("ham_max_edges requires t >= 1; use ore_bound for t = 0");
  if (t < 0) throw InputError("ham_max_edges requires t >= 1");
  HamBound b;
  b.n = n;
  b.t = t;
  b.even = (n + t) % 2 == 0;
  const std::int64_t u = b.even ? (n + t) / 2 - 1 : (n + t - 1) / 2;
  const std::int64_t ft = ham_missing(n, t, t), fu = ham_missing(n, t, u);
  // When t = u both constructions are the same graph; that is not a tie.
  b.regime = (ft < fu || t == u) ? Regime::kSmallT : ft > fu ? Regime::kLargeT : Regime::kTie;
  b.max_edges = choose2(n) - std::min(ft, fu);
  b.attainable = t < n;
  return b;
}

// Most edges a non-Hamiltonian n-vertex graph can have.
inline std::int64_t ore_bound(int n) {
  if (n < 3) throw InputError("ore_bound requires n >= 3");
  return choose2(n) - (n - 2);
}

// Least t >= 0 with g * K_t Hamiltonian. Adding a universal vertex preserves Hamiltonicity,
// so a linear scan is exact.
inline int ham_deficiency(const Graph& g, std::optional<int> cap = std::nullopt) {
  const int n = static_cast<int>(g.order());
  const int limit = cap.value_or(std::max(n, 3));
  for (int t = 0; t <= limit; ++t) {
    if (is_hamiltonian(join(g, static_cast<std::size_t>(t)))) return t;
  }
  throw ResourceError("ham_deficiency: no Hamiltonian join up to cap " + std::to_string(limit));
}

struct TriangleBound {
  int n = 0;
  int t = 0;
  int k = 0;  // ⌈(t+1)/2⌉
  std::int64_t max_edges = 0;
  bool unproven_regime = true;  // outside n large, t <= n/1000
};

inline TriangleBound triangle_max_edges(int n, int t) {
  if (t < 1) throw InputError("triangle_max_edges requires t >= 1");
  if (n < 1) throw InputError("triangle_max_edges requires n >= 1");
  if ((n + t) % 3 != 0) throw InputError("triangle_max_edges: 3 does not divide n+t = " + std::to_string(n + t));
  TriangleBound b;
  b.n = n;
  b.t = t;
  b.k = (t + 2) / 2;
  const std::int64_t k = b.k;
  b.max_edges = choose2(n) - choose2(k) - k * (n - k - (t % 2 == 0 ? 1 : 0));
  b.unproven_regime = 1000LL * t > n;
  return b;
}

// Least t >= 0 with k | n+t and a K_k-factor in g * K_t. Within the residue class a
// larger t works whenever a smaller one does (k new vertices form their own clique).
inline int factor_deficiency(const Graph& g, int k, std::optional<int> cap = std::nullopt,
                             const SolverOptions& opts = {}) {
  if (k < 2) throw InputError("factor_deficiency requires k >= 2");
  const int n = static_cast<int>(g.order());
  const int start = (k - n % k) % k;
  const int limit = cap.value_or(std::max((k - 1) * n, start));
  for (int t = start; t <= limit; t += k) {
    if (find_kk_factor(join(g, static_cast<std::size_t>(t)), k, opts)) return t;
  }
  throw ResourceError("factor_deficiency: no factor up to cap " + std::to_string(limit));
}

// For non-Hamiltonian g on at least 2 vertices: deficiency equals the path-cover number.
inline bool path_cover_equivalence_check(const Graph& g) {
  if (g.order() < 2) throw InputError("path_cover_equivalence_check requires at least 2 vertices");
  if (is_hamiltonian(g)) throw InputError("path_cover_equivalence_check: graph is Hamiltonian");
  return ham_deficiency(g) == path_cover_number(g).mu;
}

enum class Property { kHamiltonian, kTriangleFactor };

struct BruteOptions {
  int limit = 7;        // largest n enumerated
  int threads = 1;
  bool classes = false;  // also list extremal graphs up to isomorphism
};

struct BruteResult {
  std::optional<std::int64_t> max_edges;  // none: every G * K_t has the property
  Graph witness;
  std::vector<Graph> extremal_classes;
};

namespace brute {

// Self-contained checks on adjacency masks, independent of the solver module.
inline bool hamiltonian(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n < 3) return false;
  const std::uint32_t full = (1u << n) - 1;
  // ends[mask]: vertices v such that a path from 0 covering exactly `mask` ends at v.
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    for (std::uint32_t e = ends[mask]; e != 0; e &= e - 1) {
      const int v = std::countr_zero(e);
      for (std::uint32_t nx = adj[v] & ~mask; nx != 0; nx &= nx - 1) {
        const int w = std::countr_zero(nx);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return (ends[full] & adj[0]) != 0;
}

inline bool triangle_factor(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n % 3 != 0) return false;
  std::vector<signed char> memo(std::size_t{1} << n, -1);
  auto rec = [&](auto&& self, std::uint32_t left) -> bool {
    if (left == 0) return true;
    if (memo[left] >= 0) return memo[left];
    const int a = std::countr_zero(left);
    bool ok = false;
    for (std::uint32_t bs = adj[a] & left; bs != 0 && !ok; bs &= bs - 1) {
      const int b = std::countr_zero(bs);
      for (std::uint32_t cs = adj[a] & adj[b] & left & ~((2u << b) - 1); cs != 0 && !ok; cs &= cs - 1) {
        const int c = std::countr_zero(cs);
        ok = self(self, left & ~((1u << a) | (1u << b) | (1u << c)));
      }
    }
    memo[left] = ok ? 1 : 0;
    return ok;
  };
  return rec(rec, (n == 0) ? 0u : static_cast<std::uint32_t>((1ull << n) - 1));
}

// Adjacency of (graph with edge subset `mask` on n vertices) * K_t.
inline std::vector<std::uint32_t> joined(int n, int t, const std::vector<Edge>& all, std::uint64_t mask) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n + t), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!((mask >> i) & 1)) continue;
    adj[all[i].first] |= 1u << all[i].second;
    adj[all[i].second] |= 1u << all[i].first;
  }
  for (int w = n; w < n + t; ++w) {
    for (int v = 0; v < n + t; ++v) {
      if (v == w) continue;
      adj[w] |= 1u << v;
      adj[v] |= 1u << w;
    }
  }
  return adj;
}

// Lexicographically smallest edge mask over all vertex relabelings.
inline std::uint64_t canonical_mask(int n, const std::vector<Edge>& all, std::uint64_t mask) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> index(static_cast<std::size_t>(n * n), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    index[all[i].first * n + all[i].second] = index[all[i].second * n + all[i].first] = static_cast<int>(i);
  }
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t img = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if ((mask >> i) & 1) img |= std::uint64_t{1} << index[perm[all[i].first] * n + perm[all[i].second]];
    }
    best = std::min(best, img);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::uint64_t> layer(int bits, int ones) {
  std::vector<std::uint64_t> out;
  if (ones == 0) return {0};
  if (ones > bits) return out;
  const std::uint64_t limit = std::uint64_t{1} << bits;
  for (std::uint64_t x = (std::uint64_t{1} << ones) - 1; x < limit;) {
    out.push_back(x);
    const std::uint64_t c = x & (~x + 1), r = x + c;  // next mask with the same popcount
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

}  // namespace brute

// Exact maximum e(G) over n-vertex G with G * K_t lacking the property, by scanning edge
// counts downward. Both properties are monotone under adding edges, so the first layer
// with a counterexample is the answer and every larger layer has been checked in full.
inline BruteResult brute_max_edges(int n, int t, Property prop, const BruteOptions& opts = {}) {
  if (n < 1 || t < 0) throw InputError("brute_max_edges requires n >= 1, t >= 0");
  if (n > opts.limit) {
    throw ResourceError("brute_max_edges: n = " + std::to_string(n) + " exceeds enumeration limit " +
                        std::to_string(opts.limit));
  }
  if (n + t > 20) throw ResourceError("brute_max_edges: n + t exceeds 20");
  std::vector<Edge> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  const int bits = static_cast<int>(all.size());
  auto lacks = [&](std::uint64_t mask) {
    const auto adj = brute::joined(n, t, all, mask);
    return prop == Property::kHamiltonian ? !brute::hamiltonian(adj) : !brute::triangle_factor(adj);
  };
  auto to_graph = [&](std::uint64_t mask) {
    GraphBuilder b(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < all.size(); ++i)
      if ((mask >> i) & 1) b.add_edge(all[i].first, all[i].second);
    return std::move(b).build();
  };
  const int threads = std::max(1, opts.threads);

  BruteResult res;
  for (int m = bits; m >= 0; --m) {
    const auto masks = brute::layer(bits, m);
    // Each worker scans a contiguous chunk; results merge by lowest index.
    std::vector<std::vector<std::uint64_t>> found(static_cast<std::size_t>(threads));
    auto work = [&](int id) {
      const std::size_t lo = masks.size() * id / threads, hi = masks.size() * (id + 1) / threads;
      for (std::size_t i = lo; i < hi; ++i) {
        if (lacks(masks[i])) {
          found[id].push_back(masks[i]);
          if (!opts.classes) break;
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int id = 0; id < threads; ++id) pool.emplace_back(work, id);
      for (auto& th : pool) th.join();
    }
    std::vector<std::uint64_t> hits;
    for (const auto& f : found) hits.insert(hits.end(), f.begin(), f.end());
    if (hits.empty()) continue;
    res.max_edges = m;
    res.witness = to_graph(hits.front());
    if (opts.classes) {
      std::vector<std::uint64_t> canon;
      for (auto h : hits) canon.push_back(brute::canonical_mask(n, all, h));
      std::sort(canon.begin(), canon.end());
      canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
      for (auto c : canon) res.extremal_classes.push_back(to_graph(c));
    }
    return res;
  }
  return res;
}

}  // namespace designkit
