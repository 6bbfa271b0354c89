#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/graph.hpp"

namespace designkit {

using Block = std::vector<Vertex>;

// Blocks of size k on points 0..n-1, each pair of points in at most one block.
// Blocks are kept sorted, and the block list lexicographically sorted.
class PartialDesign {
 public:
  PartialDesign() = default;

  int order() const { return n_; }
  int block_size() const { return k_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  std::int64_t covered_pairs() const { return static_cast<std::int64_t>(blocks_.size()) * choose2(k_); }
  std::int64_t uncovered_pairs() const { return choose2(n_) - covered_pairs(); }
  bool is_complete() const { return uncovered_pairs() == 0; }

  bool contains(const Block& b) const { return std::binary_search(blocks_.begin(), blocks_.end(), b); }

  bool operator==(const PartialDesign&) const = default;

 private:
  friend PartialDesign validate_partial_design(int n, int k, std::vector<Block> blocks);

  int n_ = 0;
  int k_ = 0;
  std::vector<Block> blocks_;
};

// A partial design covering every pair exactly once.
class CompleteDesign {
 public:
  CompleteDesign() = default;
  const PartialDesign& design() const { return d_; }
  int order() const { return d_.order(); }
  int block_size() const { return d_.block_size(); }
  const std::vector<Block>& blocks() const { return d_.blocks(); }

 private:
  friend CompleteDesign validate_complete_design(PartialDesign d);
  explicit CompleteDesign(PartialDesign d) : d_(std::move(d)) {}
  PartialDesign d_;
};

inline PartialDesign validate_partial_design(int n, int k, std::vector<Block> blocks) {
  if (n < 0) throw InputError("design order must be nonnegative");
  if (k < 2) throw InputError("design block size must be at least 2");
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  std::map<Edge, std::size_t> owner;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (static_cast<int>(b.size()) != k) {
      throw InputError("block " + detail::show(b) + " has " + std::to_string(b.size()) + " points, expected " +
                       std::to_string(k));
    }
    for (std::size_t x = 0; x < b.size(); ++x) {
      if (b[x] < 0 || b[x] >= n) throw InputError("block " + detail::show(b) + " has a point outside 0.." + std::to_string(n - 1));
      if (x > 0 && b[x] == b[x - 1]) throw InputError("block " + detail::show(b) + " repeats a point");
    }
    for (std::size_t x = 0; x < b.size(); ++x) {
      for (std::size_t y = x + 1; y < b.size(); ++y) {
        auto [it, fresh] = owner.emplace(Edge{b[x], b[y]}, i);
        if (!fresh) {
          throw InputError("pair (" + std::to_string(b[x]) + "," + std::to_string(b[y]) + ") lies in blocks " +
                           detail::show(blocks[it->second]) + " and " + detail::show(b));
        }
      }
    }
  }
  PartialDesign d;
  d.n_ = n;
  d.k_ = k;
  d.blocks_ = std::move(blocks);
  return d;
}

inline CompleteDesign validate_complete_design(PartialDesign d) {
  if (!d.is_complete()) {
    throw InputError("design leaves " + std::to_string(d.uncovered_pairs()) + " pairs uncovered");
  }
  return CompleteDesign(std::move(d));
}

// Divisibility test (k-1) | (n-1) and C(k,2) | C(n,2). For k = 3 this is n ≡ 1,3 (mod 6)
// and is sufficient; for k >= 4 sufficiency is only known for large n.
inline bool design_admissible(int n, int k) {
  if (n < k) return false;
  return (n - 1) % (k - 1) == 0 && choose2(n) % choose2(k) == 0;
}

struct DesignGraph {
  Graph graph;                  // K_n minus every block clique
  std::vector<Clique> removed;  // the blocks
};

inline DesignGraph design_to_graph(const PartialDesign& f) {
  GraphBuilder b(Graph::complete(static_cast<std::size_t>(f.order())));
  for (const auto& blk : f.blocks()) b.remove_clique(blk);
  return {std::move(b).build(), f.blocks()};
}

inline CompleteDesign decomposition_to_design(int n, int k, const Decomposition& dec) {
  if (dec.k != k) throw InputError("decomposition has clique size " + std::to_string(dec.k));
  if (auto v = verify(Graph::complete(static_cast<std::size_t>(n)), dec); !v) {
    throw InputError("not a K_" + std::to_string(k) + "-decomposition of K_" + std::to_string(n) + ": " + v.violation);
  }
  return validate_complete_design(validate_partial_design(n, k, dec.cliques));
}

}  // namespace designkit
