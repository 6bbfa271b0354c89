#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "designkit/graph.hpp"

namespace designkit {

// Visits every `size`-clique drawn from `candidates` (ascending) in lexicographic order.
// Stops early when `visit` returns false. Returns false if stopped.
inline bool for_each_clique(const Graph& g, std::span<const Vertex> candidates, std::size_t size,
                            const std::function<bool(const Clique&)>& visit) {
  Clique cur;
  cur.reserve(size);
  std::function<bool(const std::vector<Vertex>&)> rec = [&](const std::vector<Vertex>& cands) {
    if (cur.size() == size) return visit(cur);
    const std::size_t need = size - cur.size();
    for (std::size_t i = 0; i + need <= cands.size(); ++i) {
      const Vertex v = cands[i];
      std::vector<Vertex> next;
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (g.adjacent(v, cands[j])) next.push_back(cands[j]);
      }
      if (next.size() + 1 < need) continue;
      cur.push_back(v);
      const bool go_on = rec(next);
      cur.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  std::vector<Vertex> cands(candidates.begin(), candidates.end());
  if (size == 0) return visit(cur);
  return rec(cands);
}

inline std::vector<Clique> all_cliques(const Graph& g, std::span<const Vertex> candidates, std::size_t size) {
  std::vector<Clique> out;
  for_each_clique(g, candidates, size, [&](const Clique& q) {
    out.push_back(q);
    return true;
  });
  return out;
}

inline std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> vs(g.order());
  for (std::size_t v = 0; v < vs.size(); ++v) vs[v] = static_cast<Vertex>(v);
  return vs;
}

// Lowest-lexicographic `size`-clique inside `candidates`, if any.
inline std::optional<Clique> first_clique(const Graph& g, std::span<const Vertex> candidates,
                                          std::size_t size) {
  std::optional<Clique> out;
  for_each_clique(g, candidates, size, [&](const Clique& q) {
    out = q;
    return false;
  });
  return out;
}

}  // namespace designkit
