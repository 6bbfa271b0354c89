#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/graph.hpp"

namespace designkit {

inline constexpr std::size_t kMaxHamiltonVertices = 24;
inline constexpr std::size_t kMaxPathCoverVertices = 20;

namespace detail {

inline std::vector<std::uint32_t> small_adjacency(const Graph& g, std::size_t cap, const char* what) {
  if (g.order() > cap) {
    throw ResourceError(std::string(what) + ": order " + std::to_string(g.order()) +
                        " exceeds capacity " + std::to_string(cap));
  }
  std::vector<std::uint32_t> adj(g.order(), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

}  // namespace detail

// Exact Hamiltonian cycle search by subset dynamic programming over paths from vertex 0.
inline std::optional<HamCycle> is_hamiltonian(const Graph& g) {
  const auto adj = detail::small_adjacency(g, kMaxHamiltonVertices, "is_hamiltonian");
  const std::size_t n = g.order();
  if (n < 3) return std::nullopt;
  for (std::size_t v = 0; v < n; ++v) {
    if (std::popcount(adj[v]) < 2) return std::nullopt;
  }
  // reach[mask]: endpoints v of paths from 0 covering {0} ∪ mask, mask over vertices 1..n-1
  // stored at bit (v-1); reach bits are over all vertices.
  const std::uint32_t full = (1u << (n - 1)) - 1;
  std::vector<std::uint32_t> reach(std::size_t{1} << (n - 1), 0);
  reach[0] = 1u;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    for (std::uint32_t ends = reach[mask]; ends != 0; ends &= ends - 1) {
      const int u = std::countr_zero(ends);
      std::uint32_t next = (adj[u] >> 1) & ~mask & full;
      for (; next != 0; next &= next - 1) {
        const int b = std::countr_zero(next);
        reach[mask | (1u << b)] |= 1u << (b + 1);
      }
    }
  }
  const std::uint32_t closing = reach[full] & adj[0];
  if (closing == 0) return std::nullopt;
  std::vector<Vertex> seq;
  int cur = std::countr_zero(closing);
  std::uint32_t mask = full;
  while (mask != 0) {
    seq.push_back(cur);
    const std::uint32_t prev = mask & ~(1u << (cur - 1));
    const std::uint32_t cands = reach[prev] & adj[cur];
    cur = std::countr_zero(cands);
    mask = prev;
  }
  seq.push_back(0);
  std::reverse(seq.begin(), seq.end());
  return HamCycle{std::move(seq)};
}

// Chvátal's degree-sequence condition; true implies Hamiltonian.
inline bool chvatal_sufficient(const Graph& g) {
  const auto n = static_cast<int>(g.order());
  if (n < 3) throw InputError("chvatal_sufficient requires n >= 3");
  const auto d = degree_sequence(g);  // d[i-1] = d_i
  for (int i = 1; 2 * i < n; ++i) {
    if (!(d[i - 1] > i || d[n - i - 1] >= n - i)) return false;
  }
  return true;
}

struct PathCoverResult {
  int mu = 0;
  PathCover cover;
};

// Minimum number of vertex-disjoint paths covering V(g), by DP over (covered set, last endpoint).
inline PathCoverResult path_cover_number(const Graph& g) {
  const auto adj = detail::small_adjacency(g, kMaxPathCoverVertices, "path_cover_number");
  const std::size_t n = g.order();
  if (n == 0) throw InputError("path_cover_number requires n >= 1");
  constexpr std::uint8_t kInf = std::numeric_limits<std::uint8_t>::max();
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::uint8_t> dp(states * n, kInf);
  auto at = [&](std::uint32_t mask, int v) -> std::uint8_t& { return dp[std::size_t{mask} * n + v]; };
  for (std::size_t v = 0; v < n; ++v) at(1u << v, static_cast<int>(v)) = 1;
  for (std::uint32_t mask = 1; mask < states; ++mask) {
    for (std::uint32_t ends = mask; ends != 0; ends &= ends - 1) {
      const int v = std::countr_zero(ends);
      const std::uint8_t c = at(mask, v);
      if (c == kInf) continue;
      for (std::uint32_t rest = ~mask & static_cast<std::uint32_t>(states - 1); rest != 0;
           rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        const std::uint8_t nc = (adj[v] >> u) & 1u ? c : static_cast<std::uint8_t>(c + 1);
        auto& slot = at(mask | (1u << u), u);
        slot = std::min(slot, nc);
      }
    }
  }
  const std::uint32_t full = static_cast<std::uint32_t>(states - 1);
  int best_v = 0;
  for (std::size_t v = 1; v < n; ++v) {
    if (at(full, static_cast<int>(v)) < at(full, best_v)) best_v = static_cast<int>(v);
  }
  PathCoverResult result;
  result.mu = at(full, best_v);
  // Walk back, splitting paths where the count drops.
  std::vector<std::vector<Vertex>> paths(1);
  std::uint32_t mask = full;
  int v = best_v;
  while (true) {
    paths.back().push_back(v);
    const std::uint8_t c = at(mask, v);
    const std::uint32_t prev = mask & ~(1u << v);
    if (prev == 0) break;
    int next = -1;
    bool same_path = false;
    for (std::uint32_t bits = prev; bits != 0; bits &= bits - 1) {
      const int u = std::countr_zero(bits);
      if (((adj[u] >> v) & 1u) && at(prev, u) == c) {
        next = u;
        same_path = true;
        break;
      }
    }
    if (next < 0) {
      for (std::uint32_t bits = prev; bits != 0; bits &= bits - 1) {
        const int u = std::countr_zero(bits);
        if (at(prev, u) + 1 == c) {
          next = u;
          break;
        }
      }
    }
    if (!same_path) paths.emplace_back();
    mask = prev;
    v = next;
  }
  for (auto& p : paths) std::reverse(p.begin(), p.end());
  std::reverse(paths.begin(), paths.end());
  result.cover.paths = std::move(paths);
  return result;
}

}  // namespace designkit
