#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/decomposition.hpp"
#include "designkit/designs.hpp"
#include "designkit/factor.hpp"
#include "designkit/graph.hpp"
#include "designkit/latin.hpp"

namespace designkit {

enum class EmbedMode { kPaperConstants, kMinimizeOrder };

struct EmbedOptions {
  EmbedMode mode = EmbedMode::kMinimizeOrder;
  int max_extra = 256;  // cap on t (designs) or on N - n (MOLS)
  SearchBudget budget{};
};

struct EmbedTrace {
  std::vector<int> attempted;                // t values tried, in order
  std::vector<std::string> failures;         // one reason per failed attempt
  std::vector<Vertex> bad;                   // vertices covered first, in order
  std::vector<Vertex> q;                     // MOLS only: high-incidence vertices of the extension step
  std::vector<std::size_t> cover_cliques;    // cliques placed through each bad vertex
  std::size_t extension_cliques = 0;
  std::size_t residual_cliques = 0;
  bool direct = false;                       // staged pipeline failed, host searched exactly as a whole
};

template <class T>
struct EmbeddingResult {
  int n = 0;
  int order = 0;
  int t = 0;
  T completed;
  Graph host;                 // graph the certificate decomposes
  Decomposition certificate;
  EmbedTrace trace;
};

class EmbedFailure : public SolverFailure {
 public:
  EmbedFailure(const std::string& what, EmbedTrace trace) : SolverFailure(what), trace_(std::move(trace)) {}
  const EmbedTrace& trace() const { return trace_; }

 private:
  EmbedTrace trace_;
};

// Smallest t >= t_lower with k | n+t and (k-1) | n+t-1. Always t <= t_lower + k(k-1).
inline int choose_target_order(int n, int k, int t_lower) {
  if (k < 3) throw InputError("choose_target_order requires k >= 3");
  for (int t = std::max(t_lower, 0);; ++t) {
    if ((n + t) % k == 0 && (n + t - 1) % (k - 1) == 0) return t;
  }
}

namespace detail {

inline void check_options(const EmbedOptions& opts) {
  if (opts.max_extra < 0) throw InputError("max_extra must be nonnegative");
}

struct StagedResult {
  std::vector<Clique> cliques;
  std::string failure;
};

inline Graph remove_cliques(const Graph& g, const std::vector<Clique>& cliques) {
  GraphBuilder b(g);
  for (const auto& q : cliques) b.remove_clique(q);
  return std::move(b).build();
}

// Cover every remaining edge at b by K_k's through b, using near_factor_cover on b's
// neighbourhood: S = neighbours that are original points, T = added points.
inline std::optional<std::vector<Clique>> cover_design_vertex(const Graph& cur, const Graph& complete_minus_w_edges,
                                                              Vertex b, int n, int k, const SolverOptions& so) {
  const std::vector<Vertex> nb = cur.neighbors(b);
  if (nb.empty()) return std::vector<Clique>{};
  GraphBuilder hb(cur.induced(nb));
  std::vector<Vertex> s, t;
  std::vector<Edge> removed;
  for (std::size_t i = 0; i < nb.size(); ++i) (nb[i] < n ? s : t).push_back(static_cast<Vertex>(i));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Vertex u = nb[s[i]], v = nb[s[j]];
      if (!cur.adjacent(u, v) && complete_minus_w_edges.adjacent(u, v)) {
        hb.add_edge(s[i], s[j]);
        removed.emplace_back(s[i], s[j]);
      }
    }
  }
  const Graph h = std::move(hb).build();
  NearFactorCover cover;
  try {
    cover = near_factor_cover(h, s, t, k - 1, RemovedEdgeSet(h.order(), removed), so);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
  if (!cover.uncovered.empty()) return std::nullopt;
  std::vector<Clique> out;
  for (const auto& q : cover.cliques) {
    Clique c{b};
    for (Vertex x : q) c.push_back(nb[x]);
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

// Embeds a partial (n,k)-design into a complete one on n+t points, points 0..n-1 kept.
inline EmbeddingResult<CompleteDesign> embed_design(const PartialDesign& f, const EmbedOptions& opts = {}) {
  detail::check_options(opts);
  const int n = f.order();
  const int k = f.block_size();
  if (k < 3) throw InputError("embed_design requires block size >= 3");
  const auto r = static_cast<std::int64_t>(f.size());
  const SolverOptions so{opts.budget, BranchRule::kFewestOptions};
  const DesignGraph dg = design_to_graph(f);

  auto next_t = [&](int from) {
    if (opts.mode == EmbedMode::kPaperConstants) return choose_target_order(n, k, from);
    int t = std::max(from, 0);
    while (!design_admissible(n + t, k)) ++t;
    return t;
  };
  const int t_lower =
      opts.mode == EmbedMode::kPaperConstants ? static_cast<int>(ceil_scaled_sqrt(6 * k * k, r)) : 0;

  EmbedTrace trace;
  for (int t = next_t(t_lower); t <= opts.max_extra; t = next_t(t + 1)) {
    trace.attempted.push_back(t);
    const int order = n + t;
    const Graph host = join(dg.graph, static_cast<std::size_t>(t));

    // Bad set: original points of G-degree below n - ⌈k²√r⌉ that still have removed edges,
    // padded with the lowest-index points to ⌈√r⌉.
    std::vector<Vertex> bad;
    const std::int64_t cut = static_cast<std::int64_t>(n) - ceil_scaled_sqrt(k * k, r);
    for (int v = 0; v < n; ++v) {
      const int d = dg.graph.degree(v);
      if (d < n - 1 && d < cut) bad.push_back(v);
    }
    const auto want = static_cast<std::size_t>(std::min<std::int64_t>(ceil_sqrt(r), n));
    for (int v = 0; v < n && bad.size() < want; ++v)
      if (std::find(bad.begin(), bad.end(), v) == bad.end()) bad.push_back(v);

    Graph cur = host;
    std::vector<Clique> placed;
    std::vector<std::size_t> per_bad;
    std::string failure;
    for (Vertex b : bad) {
      auto cover = detail::cover_design_vertex(cur, Graph::complete(static_cast<std::size_t>(order)), b, n, k, so);
      if (!cover) {
        failure = "no cover through bad vertex " + std::to_string(b);
        break;
      }
      per_bad.push_back(cover->size());
      cur = detail::remove_cliques(cur, *cover);
      placed.insert(placed.end(), cover->begin(), cover->end());
    }
    std::optional<Decomposition> residual;
    if (failure.empty()) {
      residual = find_kk_decomposition(cur, k, so);
      if (!residual) failure = "residual graph has no decomposition";
    }

    EmbeddingResult<CompleteDesign> res;
    res.trace = trace;
    if (failure.empty()) {
      res.trace.bad = bad;
      res.trace.cover_cliques = per_bad;
      res.trace.residual_cliques = residual->cliques.size();
      res.certificate = Decomposition{k, placed};
      res.certificate.cliques.insert(res.certificate.cliques.end(), residual->cliques.begin(), residual->cliques.end());
    } else {
      auto direct = find_kk_decomposition(host, k, so);
      if (!direct) {
        trace.failures.push_back("t=" + std::to_string(t) + ": " + failure + "; exact search: infeasible");
        continue;
      }
      res.trace.failures.push_back("t=" + std::to_string(t) + ": " + failure + "; exact search succeeded");
      res.trace.direct = true;
      res.trace.residual_cliques = direct->cliques.size();
      res.certificate = std::move(*direct);
    }
    res.certificate = canonical(std::move(res.certificate));
    if (auto v = verify(host, res.certificate); !v) throw std::logic_error("embed_design: bad certificate: " + v.violation);
    std::vector<Block> blocks = f.blocks();
    blocks.insert(blocks.end(), res.certificate.cliques.begin(), res.certificate.cliques.end());
    res.n = n;
    res.order = order;
    res.t = t;
    res.completed = validate_complete_design(validate_partial_design(order, k, std::move(blocks)));
    res.host = host;
    return res;
  }
  throw EmbedFailure("embed_design: no embedding with at most " + std::to_string(opts.max_extra) + " added points",
                     std::move(trace));
}

// Restriction of an embedding to the original points: every block meeting an added point is dropped.
struct Saturation {
  PartialDesign design;
  std::int64_t uncovered = 0;
  int embedded_order = 0;
};

inline Saturation saturate_design(const PartialDesign& f, const EmbedOptions& opts = {}) {
  const auto e = embed_design(f, opts);
  std::vector<Block> keep;
  for (const auto& b : e.completed.blocks())
    if (b.back() < f.order()) keep.push_back(b);
  Saturation s{validate_partial_design(f.order(), f.block_size(), std::move(keep)), 0, e.order};
  s.uncovered = s.design.uncovered_pairs();
  return s;
}

namespace detail {

// Cover every remaining edge at b (flattened id in a k-partite host with classes of size
// `size`, the first `orig` labels of each class original) via multipartite_factor.
inline std::optional<std::vector<Clique>> cover_mols_vertex(const Graph& cur, const std::vector<char>& in_e,
                                                            Vertex b, int k, int size, int orig,
                                                            const SolverOptions& so) {
  const std::vector<Vertex> nb = cur.neighbors(b);
  if (nb.empty()) return std::vector<Clique>{};
  const std::size_t total = cur.order();
  GraphBuilder hb(cur.induced(nb));
  std::vector<std::vector<Vertex>> parts;
  std::vector<PartSplit> splits;
  std::vector<int> slot(static_cast<std::size_t>(k), -1);
  for (int p = 0; p < k; ++p) {
    if (p == b / size) continue;
    slot[p] = static_cast<int>(parts.size());
    parts.emplace_back();
    splits.emplace_back();
  }
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const int p = slot[nb[i] / size];
    parts[p].push_back(static_cast<Vertex>(i));
    (nb[i] % size < orig ? splits[p].s : splits[p].t).push_back(static_cast<Vertex>(i));
  }
  std::vector<Edge> removed;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      const Vertex u = nb[i], v = nb[j];
      if (u / size == v / size || u % size >= orig || v % size >= orig) continue;
      if (in_e[static_cast<std::size_t>(u) * total + v]) {
        hb.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        removed.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  try {
    Graph h = std::move(hb).build();
    const std::size_t hn = h.order();
    MultipartiteGraph mg(std::move(h), parts);
    if (!mg.balanced()) return std::nullopt;
    auto res = multipartite_factor(mg, splits, RemovedEdgeSet(hn, removed), so);
    std::vector<Clique> out;
    for (const auto& q : res.factor.cliques) {
      Clique c{b};
      for (Vertex x : q) c.push_back(nb[x]);
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
    }
    return out;
  } catch (const InfeasibleError&) {
    return std::nullopt;
  } catch (const InputError&) {
    return std::nullopt;
  }
}

inline Clique relabel(const Clique& q, int from_size, int to_size) {
  Clique out;
  for (Vertex v : q) out.push_back((v / from_size) * to_size + v % from_size);
  return out;
}

}  // namespace detail

// Embeds r-2 partial orthogonal squares of order n into complete orthogonal squares of
// order N >= n, every filled cell kept.
inline EmbeddingResult<MolsFamily> embed_mols(const MolsFamily& fam, int r, const EmbedOptions& opts = {}) {
  detail::check_options(opts);
  if (r < 3) throw InputError("embed_mols requires r >= 3");
  const int k = r;
  const int n = fam.order();
  const CliqueFamily cf = mols_to_cliques(fam, r);
  const auto m = static_cast<std::int64_t>(cf.size());
  const SolverOptions so{opts.budget, BranchRule::kFewestOptions};

  std::vector<std::pair<int, int>> plan;  // (N - n, phase-one extension budget)
  if (opts.mode == EmbedMode::kPaperConstants) {
    const int e1 = static_cast<int>(ceil_scaled_sqrt(8 * k, m));
    const int e2 = static_cast<int>(ceil_scaled_sqrt(11 * k, m));
    for (int e = e1 + e2; e <= opts.max_extra; ++e) plan.emplace_back(e, e1);
  } else {
    for (int e = 0; e <= opts.max_extra; ++e) plan.emplace_back(e, e);
  }

  EmbedTrace trace;
  for (const auto& [extra, e1] : plan) {
    trace.attempted.push_back(extra);
    const int big = n + extra;
    const int mid = n + e1;
    const Graph complete = complete_multipartite_graph(static_cast<std::size_t>(k), static_cast<std::size_t>(big));
    std::vector<Clique> fixed;
    for (const auto& q : cf.cliques()) fixed.push_back(detail::relabel(cf.as_graph_clique(q), n, big));

    EmbedTrace local;
    std::string failure;
    std::vector<Clique> extended, placed;
    std::optional<Decomposition> residual;
    try {
      auto ext = extend_cliques(cf, k, e1);
      local.q.clear();
      for (Vertex v : ext.bad_vertices) local.q.push_back(detail::relabel({v}, mid, big).front());
      for (const auto& c : ext.family.as_graph_cliques()) extended.push_back(detail::relabel(c, mid, big));
    } catch (const SolverFailure& e) {
      failure = e.what();
    }
    if (failure.empty()) {
      local.extension_cliques = extended.size();
      const std::size_t total = complete.order();
      std::vector<char> in_e(total * total, 0);
      std::vector<std::vector<int>> toward(total, std::vector<int>(static_cast<std::size_t>(k), 0));
      for (const auto& c : extended) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          for (std::size_t j = 0; j < c.size(); ++j) {
            if (i == j) continue;
            in_e[static_cast<std::size_t>(c[i]) * total + c[j]] = 1;
            ++toward[c[i]][c[j] / big];
          }
        }
      }
      Graph cur = detail::remove_cliques(complete, extended);
      // Bad: r_v > ⌈k√m⌉, padded to the same count in every class (at least ⌈⌈√m⌉/k⌉).
      const std::int64_t cut = ceil_scaled_sqrt(k, m);
      std::vector<std::vector<Vertex>> bad_in(static_cast<std::size_t>(k));
      for (int p = 0; p < k; ++p) {
        for (int label = 0; label < mid; ++label) {
          const Vertex v = p * big + label;
          if (*std::max_element(toward[v].begin(), toward[v].end()) > cut) bad_in[p].push_back(v);
        }
      }
      std::size_t per = static_cast<std::size_t>((ceil_sqrt(m) + k - 1) / k);
      for (const auto& b : bad_in) per = std::max(per, b.size());
      per = std::min(per, static_cast<std::size_t>(mid));
      for (int p = 0; p < k; ++p) {
        for (int label = 0; label < mid && bad_in[p].size() < per; ++label) {
          const Vertex v = p * big + label;
          if (std::find(bad_in[p].begin(), bad_in[p].end(), v) == bad_in[p].end()) bad_in[p].push_back(v);
        }
        std::sort(bad_in[p].begin(), bad_in[p].end());
        local.bad.insert(local.bad.end(), bad_in[p].begin(), bad_in[p].end());
      }
      for (Vertex b : local.bad) {
        auto cover = detail::cover_mols_vertex(cur, in_e, b, k, big, mid, so);
        if (!cover) {
          failure = "no cover through bad vertex " + std::to_string(b);
          break;
        }
        local.cover_cliques.push_back(cover->size());
        cur = detail::remove_cliques(cur, *cover);
        placed.insert(placed.end(), cover->begin(), cover->end());
      }
      if (failure.empty()) {
        residual = find_kk_decomposition(cur, k, so);
        if (!residual) failure = "residual graph has no decomposition";
      }
    }

    Decomposition dec{k, {}};
    if (failure.empty()) {
      dec.cliques = extended;
      dec.cliques.insert(dec.cliques.end(), placed.begin(), placed.end());
      dec.cliques.insert(dec.cliques.end(), residual->cliques.begin(), residual->cliques.end());
      local.residual_cliques = residual->cliques.size();
    } else {
      auto direct = find_kk_decomposition_containing(complete, k, fixed, so);
      if (!direct) {
        trace.failures.push_back("N=" + std::to_string(big) + ": " + failure + "; exact search: infeasible");
        continue;
      }
      local = EmbedTrace{};
      local.direct = true;
      local.residual_cliques = direct->cliques.size();
      trace.failures.push_back("N=" + std::to_string(big) + ": " + failure + "; exact search succeeded");
      dec = std::move(*direct);
    }
    dec = canonical(std::move(dec));
    if (auto v = verify(complete, dec); !v) throw std::logic_error("embed_mols: bad certificate: " + v.violation);

    EmbeddingResult<MolsFamily> res;
    res.n = n;
    res.order = big;
    res.t = extra;
    res.completed = decomposition_to_mols(dec, k, big);
    for (std::size_t s = 0; s < fam.size(); ++s) {
      if (!res.completed.squares()[s].embeds(fam.squares()[s])) throw std::logic_error("embed_mols: input cell lost");
    }
    res.host = complete;
    res.certificate = std::move(dec);
    local.attempted = trace.attempted;
    local.failures = trace.failures;
    res.trace = std::move(local);
    return res;
  }
  throw EmbedFailure("embed_mols: no embedding with at most " + std::to_string(opts.max_extra) +
                         " added symbols per class",
                     std::move(trace));
}

}  // namespace designkit
