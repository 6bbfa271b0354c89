#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/cliques.hpp"
#include "designkit/decomposition.hpp"
#include "designkit/exact_cover.hpp"
#include "designkit/graph.hpp"

namespace designkit {

// ⌈√x⌉ for nonnegative integers.
inline std::int64_t ceil_sqrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return r;
}

// ⌊√x⌋ for nonnegative integers.
inline std::int64_t floor_sqrt(std::int64_t x) {
  const std::int64_t c = ceil_sqrt(x);
  return c * c == x ? c : c - 1;
}

// ⌈c·√x⌉ computed exactly: smallest y with y² >= c²·x.
inline std::int64_t ceil_scaled_sqrt(std::int64_t c, std::int64_t x) { return ceil_sqrt(c * c * x); }

// Thrown when an exact search proves an instance infeasible; carries the graph it searched.
class InfeasibleError : public SolverFailure {
 public:
  InfeasibleError(const std::string& what, Graph residual)
      : SolverFailure(what), residual_(std::move(residual)) {}
  const Graph& residual() const { return residual_; }

 private:
  Graph residual_;
};

// Edges removed from a host graph, with per-vertex incidence counts.
class RemovedEdgeSet {
 public:
  RemovedEdgeSet() = default;
  RemovedEdgeSet(std::size_t n, const std::vector<Edge>& pairs) : counts_(n, 0) {
    for (auto [u, v] : pairs) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n || u == v) {
        throw InputError("removed pair (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
      }
      if (u > v) std::swap(u, v);
      if (!pairs_.insert({u, v}).second) {
        throw InputError("removed pair (" + std::to_string(u) + "," + std::to_string(v) + ") repeated");
      }
      ++counts_[u];
      ++counts_[v];
    }
  }

  const std::set<Edge>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  int count(Vertex v) const { return counts_.empty() ? 0 : counts_[v]; }
  bool contains(Vertex u, Vertex v) const { return pairs_.count({std::min(u, v), std::max(u, v)}) > 0; }

  Graph remove_from(const Graph& g) const {
    GraphBuilder b(g);
    for (const auto& [u, v] : pairs_) b.remove_edge(u, v);
    return std::move(b).build();
  }

 private:
  std::set<Edge> pairs_;
  std::vector<int> counts_;
};

namespace detail {

// Exact cover of `vertices` by k-cliques of g, where exactly `drop` vertices of
// `droppable` may be left uncovered instead. Returns {cliques, dropped}.
struct NearCover {
  std::vector<Clique> cliques;
  std::vector<Vertex> dropped;
};

inline std::optional<NearCover> exact_near_factor(const Graph& g, const std::vector<Vertex>& vertices,
                                                  const std::vector<Vertex>& droppable, int k,
                                                  std::size_t drop, const SolverOptions& opts) {
  if (vertices.empty()) return NearCover{};
  if (drop > droppable.size()) return std::nullopt;
  std::vector<std::size_t> item_of(g.order(), SIZE_MAX);
  for (std::size_t i = 0; i < vertices.size(); ++i) item_of[vertices[i]] = i;
  ExactCover dlx(vertices.size() + drop);
  std::vector<Clique> cliques;
  std::vector<std::size_t> items;
  for_each_clique(g, vertices, static_cast<std::size_t>(k), [&](const Clique& q) {
    if ((cliques.size() + 1) * static_cast<std::size_t>(k) > kMaxCoverNodes) {
      throw ResourceError("factor search: clique option count exceeds capacity");
    }
    items.clear();
    for (Vertex v : q) items.push_back(item_of[v]);
    dlx.add_option(items);
    cliques.push_back(q);
    return true;
  });
  const std::size_t clique_options = cliques.size();
  std::vector<Vertex> drop_vertex;
  for (std::size_t slot = 0; slot < drop; ++slot) {
    for (Vertex t : droppable) {
      const std::size_t it[2] = {item_of[t], vertices.size() + slot};
      dlx.add_option(it);
      drop_vertex.push_back(t);
    }
  }
  BudgetClock clock(opts.budget);
  auto sol = dlx.first_solution(clock, opts.rule);
  if (!sol) return std::nullopt;
  NearCover out;
  for (std::size_t id : *sol) {
    if (id < clique_options) {
      out.cliques.push_back(cliques[id]);
    } else {
      out.dropped.push_back(drop_vertex[id - clique_options]);
    }
  }
  std::sort(out.cliques.begin(), out.cliques.end());
  std::sort(out.dropped.begin(), out.dropped.end());
  return out;
}

}  // namespace detail

// Hajnal–Szemerédi minimum-degree condition: δ(g) >= (n/k)(k-1). Requires k | n.
inline bool hs_condition(const Graph& g, int k) {
  if (k < 2) throw InputError("hs_condition requires k >= 2");
  const auto n = static_cast<std::int64_t>(g.order());
  if (n % k != 0) {
    throw InputError("hs_condition: " + std::to_string(k) + " does not divide " + std::to_string(n));
  }
  return g.min_degree() >= (n / k) * (k - 1);
}

// Exact K_k-factor search (k >= 2). Returns nullopt when none exists.
inline std::optional<Factor> find_kk_factor(const Graph& g, int k, const SolverOptions& opts = {}) {
  if (k < 2) throw InputError("find_kk_factor requires k >= 2");
  if (g.order() % static_cast<std::size_t>(k) != 0) return std::nullopt;
  const bool guaranteed = g.order() > 0 && hs_condition(g, k);
  auto cover = detail::exact_near_factor(g, all_vertices(g), {}, k, 0, opts);
  if (!cover) {
    if (guaranteed) throw std::logic_error("find_kk_factor: minimum-degree condition held but search failed");
    return std::nullopt;
  }
  return Factor{k, std::move(cover->cliques)};
}

// Fischer's multipartite condition: every vertex has >= (2k-3)/(2k-2)·n neighbours in every other part.
inline bool fischer_condition(const MultipartiteGraph& mg, int k) {
  if (static_cast<int>(mg.part_count()) != k) {
    throw InputError("fischer_condition: expected " + std::to_string(k) + " parts, got " +
                     std::to_string(mg.part_count()));
  }
  if (!mg.balanced()) throw InputError("fischer_condition: parts have unequal sizes");
  const auto n = static_cast<std::int64_t>(mg.parts().front().size());
  for (std::size_t p = 0; p < mg.part_count(); ++p) {
    for (Vertex v : mg.parts()[p]) {
      for (std::size_t q = 0; q < mg.part_count(); ++q) {
        if (q == p) continue;
        if ((2 * k - 2) * static_cast<std::int64_t>(mg.neighbors_in_part(v, q)) < (2 * k - 3) * n) {
          return false;
        }
      }
    }
  }
  return true;
}

struct NearFactorCover {
  std::vector<Clique> cliques;     // vertex-disjoint k-cliques of g minus removed
  std::vector<Vertex> uncovered;   // at most k-1 vertices, all in t_set
  std::vector<Vertex> heavy;       // S-vertices matched first into T
  bool exact_fallback = false;     // greedy phase abandoned for whole-instance search
};

namespace detail {

inline void check_partition(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                            const char* what) {
  std::vector<int> seen(g.order(), 0);
  for (Vertex v : a) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw InputError(std::string(what) + ": vertex out of range");
    ++seen[v];
  }
  for (Vertex v : b) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw InputError(std::string(what) + ": vertex out of range");
    ++seen[v];
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (seen[v] != 1) {
      throw InputError(std::string(what) + ": vertex " + std::to_string(v) + " not covered exactly once by the split");
    }
  }
}

inline std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

// Vertex-disjoint K_k's in g - removed covering all of s_set and all but at most k-1 of t_set.
// Heavy S-vertices (>= ⌈2k√r⌉ removed edges, r = ⌈|R|/k²⌉) are first matched to
// lowest-index (k-1)-cliques inside t_set; the rest is solved exactly. If the greedy
// phase leads nowhere the whole instance is searched exactly.
inline NearFactorCover near_factor_cover(const Graph& g, std::vector<Vertex> s_set, std::vector<Vertex> t_set,
                                         int k, const RemovedEdgeSet& removed, const SolverOptions& opts = {}) {
  if (k < 2) throw InputError("near_factor_cover requires k >= 2");
  detail::check_partition(g, s_set, t_set, "near_factor_cover");
  s_set = detail::sorted(std::move(s_set));
  t_set = detail::sorted(std::move(t_set));
  std::vector<char> in_s(g.order(), 0);
  for (Vertex v : s_set) in_s[v] = 1;
  for (const auto& [u, v] : removed.pairs()) {
    if (!in_s[u] || !in_s[v]) throw InputError("near_factor_cover: removed edge not inside s_set");
    if (!g.adjacent(u, v)) throw InputError("near_factor_cover: removed pair is not an edge");
  }
  const Graph h = removed.remove_from(g);
  const std::int64_t kk = static_cast<std::int64_t>(k) * k;
  const std::int64_t r = (static_cast<std::int64_t>(removed.size()) + kk - 1) / kk;
  const std::int64_t threshold = ceil_scaled_sqrt(2 * k, r);

  NearFactorCover out;
  for (Vertex v : s_set) {
    if (removed.count(v) > 0 && removed.count(v) >= threshold) out.heavy.push_back(v);
  }

  auto whole = [&]() -> NearFactorCover {
    std::vector<Vertex> all = detail::sorted([&] {
      std::vector<Vertex> a = s_set;
      a.insert(a.end(), t_set.begin(), t_set.end());
      return a;
    }());
    const std::size_t drop = all.size() % static_cast<std::size_t>(k);
    auto cover = detail::exact_near_factor(h, all, t_set, k, drop, opts);
    if (!cover) throw InfeasibleError("near_factor_cover: no near K_" + std::to_string(k) + "-factor exists", h);
    NearFactorCover res;
    res.cliques = std::move(cover->cliques);
    res.uncovered = std::move(cover->dropped);
    res.heavy = out.heavy;
    res.exact_fallback = true;
    return res;
  };

  std::vector<char> used(g.order(), 0);
  for (Vertex b : out.heavy) {
    std::vector<Vertex> cands;
    for (Vertex t : t_set)
      if (!used[t] && h.adjacent(b, t)) cands.push_back(t);
    auto q = first_clique(h, cands, static_cast<std::size_t>(k - 1));
    if (!q) return whole();
    for (Vertex t : *q) used[t] = 1;
    q->push_back(b);
    std::sort(q->begin(), q->end());
    out.cliques.push_back(*q);
    used[b] = 1;
  }
  std::vector<Vertex> rest, rest_t;
  for (Vertex v : s_set)
    if (!used[v]) rest.push_back(v);
  for (Vertex v : t_set)
    if (!used[v]) {
      rest.push_back(v);
      rest_t.push_back(v);
    }
  rest = detail::sorted(std::move(rest));
  const std::size_t drop = rest.size() % static_cast<std::size_t>(k);
  auto cover = detail::exact_near_factor(h, rest, rest_t, k, drop, opts);
  if (!cover) return whole();
  out.cliques.insert(out.cliques.end(), cover->cliques.begin(), cover->cliques.end());
  std::sort(out.cliques.begin(), out.cliques.end());
  out.uncovered = std::move(cover->dropped);
  return out;
}

struct PartSplit {
  std::vector<Vertex> s;
  std::vector<Vertex> t;
};

struct MultipartiteFactorResult {
  Factor factor;
  std::vector<Vertex> bad;          // vertices with r_v > ⌈√m⌉, covered first through T
  bool fischer_fast_path = false;   // Fischer's condition held on the remainder
  bool exact_fallback = false;
};

// K_k-factor of mg minus removed (k = number of parts). Removed edges join S-sets of distinct parts.
inline MultipartiteFactorResult multipartite_factor(const MultipartiteGraph& mg, const std::vector<PartSplit>& splits,
                                                    const RemovedEdgeSet& removed, const SolverOptions& opts = {}) {
  const int k = static_cast<int>(mg.part_count());
  if (k < 2) throw InputError("multipartite_factor requires at least 2 parts");
  if (!mg.balanced()) throw InputError("multipartite_factor: parts have unequal sizes");
  if (splits.size() != mg.part_count()) throw InputError("multipartite_factor: one split per part required");
  const Graph& g = mg.graph();
  std::vector<int> s_part(g.order(), -1);
  for (std::size_t p = 0; p < splits.size(); ++p) {
    std::vector<Vertex> joined = splits[p].s;
    joined.insert(joined.end(), splits[p].t.begin(), splits[p].t.end());
    if (detail::sorted(joined) != detail::sorted(mg.parts()[p])) {
      throw InputError("multipartite_factor: split " + std::to_string(p) + " does not partition its part");
    }
    for (Vertex v : splits[p].s) s_part[v] = static_cast<int>(p);
  }
  // r_v: removed edges from v into a single other S-set, maximised over sets.
  std::vector<std::vector<int>> toward(g.order(), std::vector<int>(mg.part_count(), 0));
  for (const auto& [u, v] : removed.pairs()) {
    if (s_part[u] < 0 || s_part[v] < 0 || s_part[u] == s_part[v]) {
      throw InputError("multipartite_factor: removed edge must join S-sets of distinct parts");
    }
    if (!g.adjacent(u, v)) throw InputError("multipartite_factor: removed pair is not an edge");
    ++toward[u][s_part[v]];
    ++toward[v][s_part[u]];
  }
  std::vector<int> r(g.order(), 0);
  std::int64_t m = 0;
  for (std::size_t p = 0; p < splits.size(); ++p) {
    std::int64_t sum = 0;
    for (Vertex v : splits[p].s) {
      r[v] = *std::max_element(toward[v].begin(), toward[v].end());
      sum += r[v];
    }
    m = std::max(m, sum);
  }
  const std::int64_t cutoff = ceil_sqrt(m);
  const Graph h = removed.remove_from(g);

  MultipartiteFactorResult out;
  out.factor.k = k;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (r[v] > cutoff) out.bad.push_back(static_cast<Vertex>(v));
  }

  auto whole = [&]() {
    auto cover = detail::exact_near_factor(h, all_vertices(h), {}, k, 0, opts);
    if (!cover) throw InfeasibleError("multipartite_factor: no K_" + std::to_string(k) + "-factor exists", h);
    MultipartiteFactorResult res;
    res.factor = Factor{k, std::move(cover->cliques)};
    res.bad = out.bad;
    res.exact_fallback = true;
    return res;
  };

  std::vector<char> used(g.order(), 0);
  for (Vertex b : out.bad) {
    std::vector<Vertex> cands;
    for (std::size_t p = 0; p < splits.size(); ++p) {
      if (static_cast<int>(p) == mg.part_of(b)) continue;
      for (Vertex t : splits[p].t)
        if (!used[t] && h.adjacent(b, t)) cands.push_back(t);
    }
    std::sort(cands.begin(), cands.end());
    auto q = first_clique(h, cands, static_cast<std::size_t>(k - 1));
    if (!q) return whole();
    for (Vertex t : *q) used[t] = 1;
    used[b] = 1;
    q->push_back(b);
    std::sort(q->begin(), q->end());
    out.factor.cliques.push_back(*q);
  }
  std::vector<Vertex> rest;
  std::vector<std::vector<Vertex>> rest_parts(mg.part_count());
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (used[v]) continue;
    rest.push_back(static_cast<Vertex>(v));
    rest_parts[mg.part_of(static_cast<Vertex>(v))].push_back(static_cast<Vertex>(rest.size() - 1));
  }
  if (!rest.empty()) {
    out.fischer_fast_path = fischer_condition(MultipartiteGraph(h.induced(rest), rest_parts), k);
  }
  auto cover = detail::exact_near_factor(h, rest, {}, k, 0, opts);
  if (!cover) {
    if (out.fischer_fast_path) throw std::logic_error("multipartite_factor: Fischer condition held but search failed");
    return whole();
  }
  out.factor.cliques.insert(out.factor.cliques.end(), cover->cliques.begin(), cover->cliques.end());
  out.factor = canonical(std::move(out.factor));
  return out;
}

}  // namespace designkit
