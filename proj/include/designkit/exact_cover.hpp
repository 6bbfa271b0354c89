#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "designkit/error.hpp"

namespace designkit {

enum class BranchRule {
  kFewestOptions,  // branch on the uncovered item with fewest live options (ties: lowest index)
  kFirstItem,      // branch on the lowest-index uncovered item
};

// Exact cover by dancing links. Items are 0..item_count-1, all primary.
// Options are tried in insertion order, so results are deterministic.
class ExactCover {
 public:
  explicit ExactCover(std::size_t item_count) : items_(item_count) {
    // Node 0 is the root header; nodes 1..items are column headers.
    nodes_.resize(items_ + 1);
    for (std::size_t i = 0; i <= items_; ++i) {
      auto& h = nodes_[i];
      h.left = i == 0 ? items_ : i - 1;
      h.right = i == items_ ? 0 : i + 1;
      h.up = h.down = i;
      h.column = i;
    }
    size_.assign(items_ + 1, 0);
  }

  std::size_t item_count() const { return items_; }
  std::size_t option_count() const { return option_first_.size(); }

  // Adds an option covering `items` (distinct, in range). Returns its id.
  std::size_t add_option(std::span<const std::size_t> items) {
    const std::size_t id = option_first_.size();
    std::size_t first = 0;
    for (std::size_t item : items) {
      const std::size_t col = item + 1;
      const std::size_t node = nodes_.size();
      Node x;
      x.column = col;
      x.option = id;
      x.up = nodes_[col].up;
      x.down = col;
      if (first == 0) {
        first = node;
        x.left = x.right = node;
      } else {
        x.left = nodes_[first].left;
        x.right = first;
      }
      nodes_.push_back(x);
      nodes_[nodes_[node].up].down = node;
      nodes_[col].up = node;
      nodes_[nodes_[node].left].right = node;
      nodes_[first].left = node;
      ++size_[col];
    }
    option_first_.push_back(first);
    return id;
  }

  // Visits solutions (option ids) in search order until `visit` returns false.
  // Returns the number of solutions visited.
  std::size_t search(BudgetClock& clock, BranchRule rule,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    stop_ = false;
    found_ = 0;
    chosen_.clear();
    recurse(clock, rule, visit);
    return found_;
  }

  std::optional<std::vector<std::size_t>> first_solution(BudgetClock& clock,
                                                         BranchRule rule = BranchRule::kFewestOptions) {
    std::optional<std::vector<std::size_t>> out;
    search(clock, rule, [&](const std::vector<std::size_t>& s) {
      out = s;
      return false;
    });
    return out;
  }

 private:
  struct Node {
    std::size_t left = 0, right = 0, up = 0, down = 0, column = 0, option = 0;
  };

  void cover(std::size_t col) {
    auto& c = nodes_[col];
    nodes_[c.right].left = c.left;
    nodes_[c.left].right = c.right;
    for (std::size_t i = c.down; i != col; i = nodes_[i].down) {
      for (std::size_t j = nodes_[i].right; j != i; j = nodes_[j].right) {
        nodes_[nodes_[j].down].up = nodes_[j].up;
        nodes_[nodes_[j].up].down = nodes_[j].down;
        --size_[nodes_[j].column];
      }
    }
  }

  void uncover(std::size_t col) {
    auto& c = nodes_[col];
    for (std::size_t i = c.up; i != col; i = nodes_[i].up) {
      for (std::size_t j = nodes_[i].left; j != i; j = nodes_[j].left) {
        ++size_[nodes_[j].column];
        nodes_[nodes_[j].down].up = j;
        nodes_[nodes_[j].up].down = j;
      }
    }
    nodes_[c.right].left = col;
    nodes_[c.left].right = col;
  }

  void recurse(BudgetClock& clock, BranchRule rule,
               const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    clock.tick();
    if (nodes_[0].right == 0) {
      ++found_;
      if (!visit(chosen_)) stop_ = true;
      return;
    }
    std::size_t col = nodes_[0].right;
    if (rule == BranchRule::kFewestOptions) {
      for (std::size_t c = nodes_[col].right; c != 0; c = nodes_[c].right) {
        if (size_[c] < size_[col]) col = c;
        if (size_[col] == 0) break;
      }
    }
    if (size_[col] == 0) return;
    cover(col);
    for (std::size_t r = nodes_[col].down; r != col && !stop_; r = nodes_[r].down) {
      chosen_.push_back(nodes_[r].option);
      for (std::size_t j = nodes_[r].right; j != r; j = nodes_[j].right) cover(nodes_[j].column);
      recurse(clock, rule, visit);
      for (std::size_t j = nodes_[r].left; j != r; j = nodes_[j].left) uncover(nodes_[j].column);
      chosen_.pop_back();
    }
    uncover(col);
  }

  std::size_t items_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> option_first_;
  std::vector<std::size_t> chosen_;
  std::size_t found_ = 0;
  bool stop_ = false;
};

}  // namespace designkit
