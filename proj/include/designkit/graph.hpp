#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "designkit/error.hpp"

namespace designkit {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Clique = std::vector<Vertex>;

// Largest vertex count a Graph accepts. Adjacency rows are multi-word bitsets
// sized to the graph, so raising this only costs memory per graph.
#ifndef DESIGNKIT_MAX_VERTICES
#define DESIGNKIT_MAX_VERTICES 1024
#endif
inline constexpr std::size_t kMaxVertices = DESIGNKIT_MAX_VERTICES;

inline std::int64_t choose2(std::int64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

class GraphBuilder;

// Simple undirected graph on {0..n-1}. Immutable; derive new graphs via GraphBuilder.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), words_((n + 63) / 64), adj_(n * words_, 0) {
    if (n > kMaxVertices) {
      throw ResourceError("graph order " + std::to_string(n) + " exceeds capacity " +
                          std::to_string(kMaxVertices));
    }
  }

  static Graph complete(std::size_t n);
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return n_; }
  std::int64_t edge_count() const { return m_; }
  std::int64_t missing_edge_count() const { return choose2(static_cast<std::int64_t>(n_)) - m_; }

  bool adjacent(Vertex u, Vertex v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  int degree(Vertex v) const {
    int d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
  }

  int min_degree() const {
    int best = static_cast<int>(n_);
    for (std::size_t v = 0; v < n_; ++v) best = std::min(best, degree(static_cast<Vertex>(v)));
    return n_ == 0 ? 0 : best;
  }

  std::span<const std::uint64_t> row(Vertex v) const {
    return {adj_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words() const { return words_; }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < words_; ++w) {
      for (auto bits = row(v)[w]; bits != 0; bits &= bits - 1) {
        out.push_back(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
      }
    }
    return out;
  }

  // Edges (u < v) in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (std::size_t u = 0; u < n_; ++u) {
      for (Vertex v : neighbors(static_cast<Vertex>(u))) {
        if (v > static_cast<Vertex>(u)) out.emplace_back(static_cast<Vertex>(u), v);
      }
    }
    return out;
  }

  bool is_clique(std::span<const Vertex> vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (vs[i] == vs[j] || !adjacent(vs[i], vs[j])) return false;
      }
    }
    return true;
  }

  // Subgraph induced on `vs`; vertex vs[i] becomes i.
  Graph induced(std::span<const Vertex> vs) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
  }

 private:
  friend class GraphBuilder;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::int64_t m_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : g_(n) {}
  explicit GraphBuilder(Graph g) : g_(std::move(g)) {}

  std::size_t order() const { return g_.n_; }

  void check(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= g_.n_ ||
        static_cast<std::size_t>(v) >= g_.n_) {
      throw InputError("vertex label out of range in edge (" + std::to_string(u) + "," +
                       std::to_string(v) + ") for order " + std::to_string(g_.n_));
    }
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
  }

  bool has_edge(Vertex u, Vertex v) const { return g_.adjacent(u, v); }

  // Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check(u, v);
    if (g_.adjacent(u, v)) return false;
    flip(u, v);
    ++g_.m_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    check(u, v);
    if (!g_.adjacent(u, v)) return false;
    flip(u, v);
    --g_.m_;
    return true;
  }

  void add_clique(std::span<const Vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) add_edge(vs[i], vs[j]);
  }

  void remove_clique(std::span<const Vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) remove_edge(vs[i], vs[j]);
  }

  Graph build() const& { return g_; }
  Graph build() && { return std::move(g_); }

 private:
  void flip(Vertex u, Vertex v) {
    auto& a = g_.adj_;
    const auto w = g_.words_;
    a[static_cast<std::size_t>(u) * w + (static_cast<std::size_t>(v) >> 6)] ^= 1ULL << (v & 63);
    a[static_cast<std::size_t>(v) * w + (static_cast<std::size_t>(u) >> 6)] ^= 1ULL << (u & 63);
  }

  Graph g_;
};

inline Graph Graph::complete(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return std::move(b).build();
}

inline Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const auto& [u, v] : edges) {
    if (!b.add_edge(u, v)) {
      throw InputError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
  return std::move(b).build();
}

inline Graph Graph::induced(std::span<const Vertex> vs) const {
  GraphBuilder b(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (adjacent(vs[i], vs[j])) b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return std::move(b).build();
}

// G * K_t: t universal vertices appended as n..n+t-1.
inline Graph join(const Graph& g, std::size_t t) {
  const std::size_t n = g.order();
  GraphBuilder b(n + t);
  for (const auto& [u, v] : g.edges()) b.add_edge(u, v);
  for (std::size_t w = n; w < n + t; ++w)
    for (std::size_t u = 0; u < w; ++u) b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(w));
  return std::move(b).build();
}

inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) d[v] = g.degree(static_cast<Vertex>(v));
  std::sort(d.begin(), d.end());
  return d;
}

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t v = 0; v + 1 < n; ++v) b.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
  return std::move(b).build();
}

inline Graph cycle_graph(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t v = 0; v < n; ++v) b.add_edge(static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n));
  return std::move(b).build();
}

// Star with centre 0 and n-1 leaves.
inline Graph star_graph(std::size_t n) {
  GraphBuilder b(n);
  for (std::size_t v = 1; v < n; ++v) b.add_edge(0, static_cast<Vertex>(v));
  return std::move(b).build();
}

// Complete multipartite graph with `parts` classes of size `size`; part p holds p*size .. p*size+size-1.
inline Graph complete_multipartite_graph(std::size_t parts, std::size_t size) {
  GraphBuilder b(parts * size);
  for (std::size_t u = 0; u < parts * size; ++u)
    for (std::size_t v = u + 1; v < parts * size; ++v)
      if (u / size != v / size) b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return std::move(b).build();
}

// A graph together with an ordered partition into independent classes.
class MultipartiteGraph {
 public:
  MultipartiteGraph(Graph g, std::vector<std::vector<Vertex>> parts)
      : graph_(std::move(g)), parts_(std::move(parts)), part_of_(graph_.order(), -1) {
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      for (Vertex v : parts_[p]) {
        if (v < 0 || static_cast<std::size_t>(v) >= graph_.order()) {
          throw InputError("part member " + std::to_string(v) + " out of range");
        }
        if (part_of_[v] != -1) throw InputError("vertex " + std::to_string(v) + " in two parts");
        part_of_[v] = static_cast<int>(p);
      }
    }
    for (std::size_t v = 0; v < part_of_.size(); ++v) {
      if (part_of_[v] == -1) throw InputError("vertex " + std::to_string(v) + " in no part");
    }
    for (const auto& [u, v] : graph_.edges()) {
      if (part_of_[u] == part_of_[v]) {
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") inside part " + std::to_string(part_of_[u]));
      }
    }
  }

  // Balanced complete multipartite host (parts of equal size).
  static MultipartiteGraph complete(std::size_t parts, std::size_t size) {
    std::vector<std::vector<Vertex>> ps(parts);
    for (std::size_t p = 0; p < parts; ++p)
      for (std::size_t i = 0; i < size; ++i) ps[p].push_back(static_cast<Vertex>(p * size + i));
    return {complete_multipartite_graph(parts, size), std::move(ps)};
  }

  const Graph& graph() const { return graph_; }
  const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
  std::size_t part_count() const { return parts_.size(); }
  int part_of(Vertex v) const { return part_of_[v]; }

  bool balanced() const {
    return std::all_of(parts_.begin(), parts_.end(),
                       [&](const auto& p) { return p.size() == parts_.front().size(); });
  }

  int neighbors_in_part(Vertex v, std::size_t p) const {
    int c = 0;
    for (Vertex u : parts_[p]) c += graph_.adjacent(v, u) ? 1 : 0;
    return c;
  }

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> parts_;
  std::vector<int> part_of_;
};

}  // namespace designkit
