#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "designkit/graph.hpp"

namespace designkit {

// Edge-partition of a graph into k-cliques.
struct Decomposition {
  int k = 0;
  std::vector<Clique> cliques;
  bool operator==(const Decomposition&) const = default;
};

// Vertex-disjoint k-cliques covering every vertex.
struct Factor {
  int k = 0;
  std::vector<Clique> cliques;
  bool operator==(const Factor&) const = default;
};

struct HamCycle {
  std::vector<Vertex> order;
  bool operator==(const HamCycle&) const = default;
};

struct PathCover {
  std::vector<std::vector<Vertex>> paths;
  bool operator==(const PathCover&) const = default;
};

using Certificate = std::variant<Decomposition, Factor, HamCycle, PathCover>;

struct Verdict {
  bool ok = true;
  std::string violation;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

// Sorts each clique and the clique list.
template <class Cert>
Cert canonical(Cert c) {
  for (auto& q : c.cliques) std::sort(q.begin(), q.end());
  std::sort(c.cliques.begin(), c.cliques.end());
  return c;
}

namespace detail {

inline void check_labels(const Graph& g, const std::vector<Vertex>& vs) {
  for (Vertex v : vs) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) {
      throw InputError("certificate vertex " + std::to_string(v) + " out of range for order " +
                       std::to_string(g.order()));
    }
  }
}

inline std::string show(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

inline Verdict verify_cliques(const Graph& g, int k, const std::vector<Clique>& cliques) {
  for (const auto& q : cliques) {
    check_labels(g, q);
    if (static_cast<int>(q.size()) != k) {
      return Verdict::fail("clique " + show(q) + " has size " + std::to_string(q.size()) +
                           ", expected " + std::to_string(k));
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = i + 1; j < q.size(); ++j) {
        if (q[i] == q[j]) return Verdict::fail("clique " + show(q) + " repeats a vertex");
        if (!g.adjacent(q[i], q[j])) {
          return Verdict::fail("clique " + show(q) + " uses non-edge (" + std::to_string(q[i]) +
                               "," + std::to_string(q[j]) + ")");
        }
      }
    }
  }
  return Verdict::pass();
}

}  // namespace detail

inline Verdict verify(const Graph& g, const Decomposition& d) {
  if (auto v = detail::verify_cliques(g, d.k, d.cliques); !v) return v;
  std::set<Edge> seen;
  for (const auto& q : d.cliques) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = i + 1; j < q.size(); ++j) {
        Edge e{std::min(q[i], q[j]), std::max(q[i], q[j])};
        if (!seen.insert(e).second) {
          return Verdict::fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                               ") covered twice");
        }
      }
    }
  }
  if (static_cast<std::int64_t>(seen.size()) != g.edge_count()) {
    for (const auto& e : g.edges()) {
      if (!seen.count(e)) {
        return Verdict::fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") not covered");
      }
    }
  }
  return Verdict::pass();
}

inline Verdict verify(const Graph& g, const Factor& f) {
  const auto n = g.order();
  if (f.k <= 0 || n % static_cast<std::size_t>(f.k) != 0) {
    return Verdict::fail(std::to_string(n) + " not divisible by " + std::to_string(f.k));
  }
  if (auto v = detail::verify_cliques(g, f.k, f.cliques); !v) return v;
  std::vector<char> used(n, 0);
  for (const auto& q : f.cliques) {
    for (Vertex v : q) {
      if (used[v]) return Verdict::fail("vertex " + std::to_string(v) + " covered twice");
      used[v] = 1;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!used[v]) return Verdict::fail("vertex " + std::to_string(v) + " not covered");
  }
  return Verdict::pass();
}

inline Verdict verify(const Graph& g, const HamCycle& c) {
  detail::check_labels(g, c.order);
  const auto n = g.order();
  if (n < 3) return Verdict::fail("graphs on fewer than 3 vertices have no Hamiltonian cycle");
  if (c.order.size() != n) {
    return Verdict::fail("cycle has " + std::to_string(c.order.size()) + " vertices, expected " +
                         std::to_string(n));
  }
  std::vector<char> used(n, 0);
  for (Vertex v : c.order) {
    if (used[v]) return Verdict::fail("vertex " + std::to_string(v) + " visited twice");
    used[v] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = c.order[i], b = c.order[(i + 1) % n];
    if (!g.adjacent(a, b)) {
      return Verdict::fail("consecutive pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") is not an edge");
    }
  }
  return Verdict::pass();
}

inline Verdict verify(const Graph& g, const PathCover& pc) {
  std::vector<char> used(g.order(), 0);
  for (const auto& p : pc.paths) {
    detail::check_labels(g, p);
    if (p.empty()) return Verdict::fail("empty path");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (used[p[i]]) return Verdict::fail("vertex " + std::to_string(p[i]) + " covered twice");
      used[p[i]] = 1;
      if (i + 1 < p.size() && !g.adjacent(p[i], p[i + 1])) {
        return Verdict::fail("consecutive pair (" + std::to_string(p[i]) + "," +
                             std::to_string(p[i + 1]) + ") is not an edge");
      }
    }
  }
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (!used[v]) return Verdict::fail("vertex " + std::to_string(v) + " not covered");
  }
  return Verdict::pass();
}

inline Verdict verify(const Graph& g, const Certificate& c) {
  return std::visit([&](const auto& x) { return verify(g, x); }, c);
}

}  // namespace designkit
