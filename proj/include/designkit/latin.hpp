#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/decomposition.hpp"
#include "designkit/factor.hpp"
#include "designkit/graph.hpp"

namespace designkit {

// Symbols are 0-indexed internally (file symbol s is stored as s-1); kEmpty marks an empty cell.
inline constexpr int kEmpty = -1;

class PartialLatinSquare {
 public:
  PartialLatinSquare() = default;
  explicit PartialLatinSquare(int n) : n_(n), cells_(static_cast<std::size_t>(n) * n, kEmpty) {}

  int order() const { return n_; }
  int at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * n_ + c]; }
  bool filled(int r, int c) const { return at(r, c) != kEmpty; }
  const std::vector<int>& cells() const { return cells_; }

  std::size_t filled_count() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](int s) { return s != kEmpty; }));
  }
  bool is_complete() const { return filled_count() == cells_.size(); }

  // True if every filled cell of `p` (order <= this order) holds the same symbol here.
  bool embeds(const PartialLatinSquare& p) const {
    if (p.order() > n_) return false;
    for (int r = 0; r < p.order(); ++r)
      for (int c = 0; c < p.order(); ++c)
        if (p.filled(r, c) && p.at(r, c) != at(r, c)) return false;
    return true;
  }

  bool operator==(const PartialLatinSquare&) const = default;

 private:
  friend PartialLatinSquare validate_latin(int n, std::vector<int> cells);
  int n_ = 0;
  std::vector<int> cells_;
};

inline PartialLatinSquare validate_latin(int n, std::vector<int> cells) {
  if (n < 1) throw InputError("latin square order must be positive");
  if (cells.size() != static_cast<std::size_t>(n) * n) throw InputError("latin square needs n*n cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != kEmpty && (cells[i] < 0 || cells[i] >= n)) {
      throw InputError("cell (" + std::to_string(i / n) + "," + std::to_string(i % n) + ") symbol " +
                       std::to_string(cells[i] + 1) + " outside 1.." + std::to_string(n));
    }
  }
  for (int a = 0; a < n; ++a) {
    std::vector<int> row_seen(n, -1), col_seen(n, -1);
    for (int b = 0; b < n; ++b) {
      const int rs = cells[static_cast<std::size_t>(a) * n + b];
      if (rs != kEmpty) {
        if (row_seen[rs] >= 0) {
          throw InputError("row " + std::to_string(a) + " repeats symbol " + std::to_string(rs + 1) + " in columns " +
                           std::to_string(row_seen[rs]) + " and " + std::to_string(b));
        }
        row_seen[rs] = b;
      }
      const int cs = cells[static_cast<std::size_t>(b) * n + a];
      if (cs != kEmpty) {
        if (col_seen[cs] >= 0) {
          throw InputError("column " + std::to_string(a) + " repeats symbol " + std::to_string(cs + 1) + " in rows " +
                           std::to_string(col_seen[cs]) + " and " + std::to_string(b));
        }
        col_seen[cs] = b;
      }
    }
  }
  PartialLatinSquare p;
  p.n_ = n;
  p.cells_ = std::move(cells);
  return p;
}

// Pairwise-orthogonal partial Latin squares of a common order.
class MolsFamily {
 public:
  int order() const { return n_; }
  std::size_t size() const { return squares_.size(); }
  const std::vector<PartialLatinSquare>& squares() const { return squares_; }

  // Cells filled in at least one square.
  std::size_t filled_cells() const {
    std::size_t c = 0;
    for (int r = 0; r < n_; ++r)
      for (int col = 0; col < n_; ++col)
        c += std::any_of(squares_.begin(), squares_.end(), [&](const auto& s) { return s.filled(r, col); }) ? 1 : 0;
    return c;
  }

  bool is_complete() const {
    return std::all_of(squares_.begin(), squares_.end(), [](const auto& s) { return s.is_complete(); });
  }

  bool operator==(const MolsFamily&) const = default;

 private:
  friend MolsFamily validate_mols(std::vector<PartialLatinSquare> squares);
  int n_ = 0;
  std::vector<PartialLatinSquare> squares_;
};

inline MolsFamily validate_mols(std::vector<PartialLatinSquare> squares) {
  if (squares.empty()) throw InputError("MOLS family needs at least one square");
  const int n = squares.front().order();
  for (auto& s : squares) {
    if (s.order() != n) throw InputError("MOLS family squares differ in order");
    s = validate_latin(s.order(), s.cells());
  }
  for (std::size_t a = 0; a < squares.size(); ++a) {
    for (std::size_t b = a + 1; b < squares.size(); ++b) {
      std::map<std::pair<int, int>, std::pair<int, int>> seen;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          if (!squares[a].filled(r, c) || !squares[b].filled(r, c)) continue;
          auto [it, fresh] = seen.emplace(std::pair{squares[a].at(r, c), squares[b].at(r, c)}, std::pair{r, c});
          if (!fresh) {
            throw InputError("squares " + std::to_string(a) + " and " + std::to_string(b) + " repeat pair (" +
                             std::to_string(it->first.first + 1) + "," + std::to_string(it->first.second + 1) +
                             ") at cells (" + std::to_string(it->second.first) + "," +
                             std::to_string(it->second.second) + ") and (" + std::to_string(r) + "," +
                             std::to_string(c) + ")");
          }
        }
      }
    }
  }
  MolsFamily f;
  f.n_ = n;
  f.squares_ = std::move(squares);
  return f;
}

// Edge-disjoint cliques in a complete multipartite host with `parts` classes of
// `part_size` vertices. A clique stores one label (or kEmpty) per part.
class CliqueFamily {
 public:
  using PartiteClique = std::vector<int>;

  CliqueFamily() = default;
  CliqueFamily(int parts, int part_size, std::vector<PartiteClique> cliques)
      : parts_(parts), part_size_(part_size), cliques_(std::move(cliques)) {
    validate();
  }

  int parts() const { return parts_; }
  int part_size() const { return part_size_; }
  std::size_t size() const { return cliques_.size(); }
  const std::vector<PartiteClique>& cliques() const { return cliques_; }

  static int clique_order(const PartiteClique& q) {
    return static_cast<int>(std::count_if(q.begin(), q.end(), [](int x) { return x != kEmpty; }));
  }

  // Vertex id of label `label` in part `p` within the flattened host graph.
  int vertex(int p, int label) const { return p * part_size_ + label; }

  Clique as_graph_clique(const PartiteClique& q) const {
    Clique out;
    for (int p = 0; p < parts_; ++p)
      if (q[p] != kEmpty) out.push_back(vertex(p, q[p]));
    return out;
  }

  std::vector<Clique> as_graph_cliques() const {
    std::vector<Clique> out;
    for (const auto& q : cliques_) out.push_back(as_graph_clique(q));
    return out;
  }

  bool operator==(const CliqueFamily&) const = default;

 private:
  void validate() const {
    if (parts_ < 2 || part_size_ < 0) throw InputError("clique family host needs >= 2 parts");
    std::set<std::tuple<int, int, int, int>> used;
    for (const auto& q : cliques_) {
      if (static_cast<int>(q.size()) != parts_) throw InputError("clique must list one entry per part");
      for (int x : q) {
        if (x != kEmpty && (x < 0 || x >= part_size_)) throw InputError("clique label out of range");
      }
      if (q[0] == kEmpty || q[1] == kEmpty) throw InputError("clique must contain a vertex of parts 1 and 2");
      const int z = clique_order(q);
      if (z < 3 && parts_ >= 3) throw InputError("clique must have at least 3 vertices");
      for (int a = 0; a < parts_; ++a) {
        for (int b = a + 1; b < parts_; ++b) {
          if (q[a] == kEmpty || q[b] == kEmpty) continue;
          if (!used.insert({a, q[a], b, q[b]}).second) {
            throw InputError("cliques share edge between part " + std::to_string(a) + " label " +
                             std::to_string(q[a]) + " and part " + std::to_string(b) + " label " +
                             std::to_string(q[b]));
          }
        }
      }
    }
  }

  int parts_ = 0;
  int part_size_ = 0;
  std::vector<PartiteClique> cliques_;
};

// One clique per cell filled in some square: {row in V_1, column in V_2, symbol of square t in V_{t+2}}.
inline CliqueFamily mols_to_cliques(const MolsFamily& fam, int r) {
  if (r != static_cast<int>(fam.size()) + 2) {
    throw InputError("mols_to_cliques: r must equal the number of squares plus 2");
  }
  const int n = fam.order();
  std::vector<CliqueFamily::PartiteClique> cliques;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CliqueFamily::PartiteClique q(static_cast<std::size_t>(r), kEmpty);
      q[0] = i;
      q[1] = j;
      bool any = false;
      for (std::size_t t = 0; t < fam.size(); ++t) {
        if (fam.squares()[t].filled(i, j)) {
          q[t + 2] = fam.squares()[t].at(i, j);
          any = true;
        }
      }
      if (any) cliques.push_back(std::move(q));
    }
  }
  return CliqueFamily(r, n, std::move(cliques));  // validation asserts edge-disjointness
}

// Inverse of mols_to_cliques: clique {i, j, s_1, ...} sets cell (i,j) of square t to s_t.
inline MolsFamily cliques_to_mols(const CliqueFamily& cf) {
  if (cf.parts() < 3) throw InputError("cliques_to_mols requires at least 3 parts");
  const int n = cf.part_size();
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(cf.parts() - 2),
                                      std::vector<int>(static_cast<std::size_t>(n) * n, kEmpty));
  for (const auto& q : cf.cliques()) {
    for (int t = 0; t + 2 < cf.parts(); ++t) {
      int& cell = cells[t][static_cast<std::size_t>(q[0]) * n + q[1]];
      if (cell != kEmpty) throw InputError("two cliques share cell (" + std::to_string(q[0]) + "," + std::to_string(q[1]) + ")");
      cell = q[t + 2];
    }
  }
  std::vector<PartialLatinSquare> squares;
  for (auto& c : cells) squares.push_back(validate_latin(n, std::move(c)));
  return validate_mols(std::move(squares));
}

// Reads k-2 complete orthogonal squares off a K_k-decomposition of the n-balanced complete k-partite graph.
inline MolsFamily decomposition_to_mols(const Decomposition& dec, int k, int n) {
  if (k < 3) throw InputError("decomposition_to_mols requires k >= 3");
  if (dec.k != k) throw InputError("decomposition clique size does not match k");
  const Graph host = complete_multipartite_graph(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  if (auto v = verify(host, dec); !v) throw InputError("invalid multipartite decomposition: " + v.violation);
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(k - 2),
                                      std::vector<int>(static_cast<std::size_t>(n) * n, kEmpty));
  for (const auto& q : dec.cliques) {
    std::vector<int> label(static_cast<std::size_t>(k), kEmpty);
    for (Vertex v : q) label[v / n] = v % n;
    for (int t = 0; t < k - 2; ++t) cells[t][static_cast<std::size_t>(label[0]) * n + label[1]] = label[t + 2];
  }
  std::vector<PartialLatinSquare> squares;
  for (auto& c : cells) squares.push_back(validate_latin(n, std::move(c)));
  return validate_mols(std::move(squares));
}

struct CliqueExtension {
  CliqueFamily family;            // B_1..B_m, each of size k, in input order
  std::vector<Vertex> bad_vertices;  // Q as flattened ids of the enlarged host
  std::size_t bad_cliques = 0;
  int extra = 0;
};

// Extends edge-disjoint cliques to edge-disjoint K_k's in the host enlarged by `extra`
// vertices per part. Default budget ⌈8k√m⌉. New labels n..n+extra-1 of each part are
// split into a first half T' (rounded up) for bad cliques and a second half T'' shared
// with the original labels for good cliques.
inline CliqueExtension extend_cliques(const CliqueFamily& cf, int k, std::optional<int> extra = std::nullopt) {
  if (k != cf.parts()) throw InputError("extend_cliques: k must equal the host part count");
  const std::int64_t m = static_cast<std::int64_t>(cf.size());
  const int budget = extra ? *extra : static_cast<int>(ceil_scaled_sqrt(8 * k, m));
  if (budget < 0) throw InputError("extend_cliques: negative budget");
  const int n = cf.part_size();
  const int big = n + budget;
  const int t1_end = n + (budget + 1) / 2;  // T' = [n, t1_end), T'' = [t1_end, big)
  auto id = [&](int p, int label) { return p * big + label; };
  const std::size_t total = static_cast<std::size_t>(k) * big;

  std::vector<CliqueFamily::PartiteClique> cur = cf.cliques();
  std::vector<char> used(total * total, 0);
  std::vector<int> uses(total, 0);
  auto mark = [&](const CliqueFamily::PartiteClique& q) {
    for (int a = 0; a < k; ++a) {
      if (q[a] == kEmpty) continue;
      for (int b = a + 1; b < k; ++b) {
        if (q[b] == kEmpty) continue;
        used[id(a, q[a]) * total + id(b, q[b])] = used[id(b, q[b]) * total + id(a, q[a])] = 1;
      }
    }
  };
  for (const auto& q : cur) {
    mark(q);
    for (int p = 0; p < k; ++p)
      if (q[p] != kEmpty) ++uses[id(p, q[p])];
  }

  // Q: repeatedly the original vertex in most cliques avoiding Q so far (ties: lowest id).
  CliqueExtension out;
  const std::int64_t q_size = std::min<std::int64_t>(ceil_sqrt(m), static_cast<std::int64_t>(k) * n);
  std::vector<char> in_q(total, 0);
  std::vector<char> clique_hit(cur.size(), 0);
  for (std::int64_t step = 0; step < q_size; ++step) {
    int best = -1, best_count = -1;
    for (int p = 0; p < k; ++p) {
      for (int label = 0; label < n; ++label) {
        const int v = id(p, label);
        if (in_q[v]) continue;
        int count = 0;
        for (std::size_t c = 0; c < cur.size(); ++c)
          if (!clique_hit[c] && cur[c][p] == label) ++count;
        if (count > best_count) {
          best = v;
          best_count = count;
        }
      }
    }
    in_q[best] = 1;
    out.bad_vertices.push_back(best);
    for (std::size_t c = 0; c < cur.size(); ++c)
      if (cur[c][best / big] == best % big) clique_hit[c] = 1;
  }

  auto q_count = [&](const CliqueFamily::PartiteClique& q) {
    int c = 0;
    for (int p = 0; p < k; ++p)
      if (q[p] != kEmpty && in_q[id(p, q[p])]) ++c;
    return c;
  };
  auto available = [&](const CliqueFamily::PartiteClique& q, int p, int label) {
    const int v = id(p, label);
    for (int a = 0; a < k; ++a)
      if (q[a] != kEmpty && used[id(a, q[a]) * total + v]) return false;
    return true;
  };
  auto attach = [&](CliqueFamily::PartiteClique& q, int p, int label) {
    q[p] = label;
    ++uses[id(p, label)];
    for (int a = 0; a < k; ++a) {
      if (a == p || q[a] == kEmpty) continue;
      used[id(a, q[a]) * total + id(p, label)] = used[id(p, label) * total + id(a, q[a])] = 1;
    }
  };
  auto fail = [&](std::size_t c, int p) {
    throw SolverFailure("extend_cliques: budget of " + std::to_string(budget) + " extra vertices per part exhausted at clique " +
                        std::to_string(c) + ", part " + std::to_string(p));
  };

  for (std::size_t c = 0; c < cur.size(); ++c) {
    if (q_count(cur[c]) < 2) continue;
    ++out.bad_cliques;
    for (int p = 0; p < k; ++p) {
      if (cur[c][p] != kEmpty) continue;
      int pick = -1;
      for (int label = n; label < t1_end && pick < 0; ++label)
        if (available(cur[c], p, label)) pick = label;
      if (pick < 0) fail(c, p);
      attach(cur[c], p, pick);
    }
  }
  for (std::size_t c = 0; c < cur.size(); ++c) {
    if (q_count(cf.cliques()[c]) >= 2) continue;
    for (int p = 0; p < k; ++p) {
      if (cur[c][p] != kEmpty) continue;
      int pick = -1;
      auto consider = [&](int label) {
        if (!available(cur[c], p, label)) return;
        if (pick < 0 || uses[id(p, label)] < uses[id(p, pick)]) pick = label;
      };
      for (int label = 0; label < n; ++label) consider(label);
      for (int label = t1_end; label < big; ++label) consider(label);
      if (pick < 0) fail(c, p);
      attach(cur[c], p, pick);
    }
  }
  out.family = CliqueFamily(k, big, std::move(cur));
  out.extra = budget;
  return out;
}

// Graph cliques of a family on the flattened host.
inline Graph multipartite_residual(int parts, int part_size, const std::vector<Clique>& cliques) {
  GraphBuilder b(complete_multipartite_graph(static_cast<std::size_t>(parts), static_cast<std::size_t>(part_size)));
  for (const auto& q : cliques) b.remove_clique(q);
  return std::move(b).build();
}

// Exact completion of a partial Latin square at its own order, if one exists.
inline std::optional<PartialLatinSquare> complete_latin_square(const PartialLatinSquare& p, const SolverOptions& opts = {}) {
  const int n = p.order();
  auto fam = validate_mols({p});
  auto cf = mols_to_cliques(fam, 3);
  auto fixed = cf.as_graph_cliques();
  auto dec = find_kk_decomposition(multipartite_residual(3, n, fixed), 3, opts);
  if (!dec) return std::nullopt;
  dec->cliques.insert(dec->cliques.end(), fixed.begin(), fixed.end());
  return decomposition_to_mols(canonical(std::move(*dec)), 3, n).squares().front();
}

}  // namespace designkit
