#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/cliques.hpp"
#include "designkit/exact_cover.hpp"
#include "designkit/graph.hpp"

namespace designkit {

struct SolverOptions {
  SearchBudget budget{};
  BranchRule rule = BranchRule::kFewestOptions;
};

// Cap on dancing-links nodes built for one search.
inline constexpr std::size_t kMaxCoverNodes = 20'000'000;

// Necessary divisibility conditions for a K_k-decomposition: (k-1) | deg(v), C(k,2) | e(g).
inline bool decomposition_divisible(const Graph& g, int k) {
  if (g.edge_count() % choose2(k) != 0) return false;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (g.degree(static_cast<Vertex>(v)) % (k - 1) != 0) return false;
  }
  return true;
}

// Exact K_k-decomposition by exact cover of edges with k-cliques.
// Returns nullopt only when the search space is exhausted.
inline std::optional<Decomposition> find_kk_decomposition(const Graph& g, int k,
                                                          const SolverOptions& opts = {}) {
  if (k < 3) throw InputError("find_kk_decomposition requires k >= 3");
  if (!decomposition_divisible(g, k)) return std::nullopt;
  if (g.edge_count() == 0) return Decomposition{k, {}};

  const std::size_t n = g.order();
  std::vector<std::size_t> edge_id(n * n, 0);
  std::size_t next = 0;
  for (const auto& [u, v] : g.edges()) {
    edge_id[static_cast<std::size_t>(u) * n + v] = next;
    edge_id[static_cast<std::size_t>(v) * n + u] = next;
    ++next;
  }
  // Only vertices that carry edges can appear in a clique.
  std::vector<Vertex> active;
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(static_cast<Vertex>(v)) > 0) active.push_back(static_cast<Vertex>(v));

  ExactCover dlx(next);
  std::vector<Clique> options;
  std::vector<std::size_t> items;
  const std::size_t per = static_cast<std::size_t>(choose2(k));
  for_each_clique(g, active, static_cast<std::size_t>(k), [&](const Clique& q) {
    if ((options.size() + 1) * per > kMaxCoverNodes) {
      throw ResourceError("find_kk_decomposition: clique option count exceeds capacity");
    }
    items.clear();
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j)
        items.push_back(edge_id[static_cast<std::size_t>(q[i]) * n + q[j]]);
    dlx.add_option(items);
    options.push_back(q);
    return true;
  });

  BudgetClock clock(opts.budget);
  auto sol = dlx.first_solution(clock, opts.rule);
  if (!sol) return std::nullopt;
  Decomposition d{k, {}};
  for (std::size_t id : *sol) d.cliques.push_back(options[id]);
  return canonical(std::move(d));
}

// Exact K_k-decomposition of g in which each clique of `fixed` (edges of g, pairwise
// edge-disjoint, at most k vertices) lies inside a single block. A block through an
// edge of a fixed clique must contain all of it.
inline std::optional<Decomposition> find_kk_decomposition_containing(const Graph& g, int k,
                                                                     const std::vector<Clique>& fixed,
                                                                     const SolverOptions& opts = {}) {
  if (k < 3) throw InputError("find_kk_decomposition requires k >= 3");
  if (fixed.empty()) return find_kk_decomposition(g, k, opts);
  if (!decomposition_divisible(g, k)) return std::nullopt;
  const std::size_t n = g.order();
  GraphBuilder free_b(g);
  for (const auto& a : fixed) {
    if (static_cast<int>(a.size()) > k) throw InputError("fixed clique larger than k");
    if (!g.is_clique(a)) throw InputError("fixed clique " + detail::show(a) + " is not a clique of the host");
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (!free_b.remove_edge(a[i], a[j])) throw InputError("fixed cliques share an edge");
  }
  const Graph free_g = std::move(free_b).build();

  std::vector<std::size_t> edge_id(n * n, 0);
  std::size_t next = 0;
  for (const auto& [u, v] : g.edges()) {
    edge_id[static_cast<std::size_t>(u) * n + v] = next;
    edge_id[static_cast<std::size_t>(v) * n + u] = next;
    ++next;
  }
  ExactCover dlx(next);
  std::vector<Clique> options;
  std::vector<std::size_t> items;
  const std::size_t per = static_cast<std::size_t>(choose2(k));
  auto add = [&](Clique q) {
    if ((options.size() + 1) * per > kMaxCoverNodes) {
      throw ResourceError("find_kk_decomposition: clique option count exceeds capacity");
    }
    std::sort(q.begin(), q.end());
    items.clear();
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j) items.push_back(edge_id[static_cast<std::size_t>(q[i]) * n + q[j]]);
    dlx.add_option(items);
    options.push_back(std::move(q));
  };
  std::vector<Vertex> active;
  for (std::size_t v = 0; v < n; ++v)
    if (free_g.degree(static_cast<Vertex>(v)) > 0) active.push_back(static_cast<Vertex>(v));
  for_each_clique(free_g, active, static_cast<std::size_t>(k), [&](const Clique& q) {
    add(q);
    return true;
  });
  for (const auto& a : fixed) {
    std::vector<Vertex> cands;
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = static_cast<Vertex>(c);
      if (std::find(a.begin(), a.end(), v) != a.end()) continue;
      if (std::all_of(a.begin(), a.end(), [&](Vertex x) { return free_g.adjacent(x, v); })) cands.push_back(v);
    }
    for_each_clique(free_g, cands, static_cast<std::size_t>(k) - a.size(), [&](const Clique& q) {
      Clique b = a;
      b.insert(b.end(), q.begin(), q.end());
      add(std::move(b));
      return true;
    });
  }
  BudgetClock clock(opts.budget);
  auto sol = dlx.first_solution(clock, opts.rule);
  if (!sol) return std::nullopt;
  Decomposition d{k, {}};
  for (std::size_t id : *sol) d.cliques.push_back(options[id]);
  return canonical(std::move(d));
}

}  // namespace designkit
