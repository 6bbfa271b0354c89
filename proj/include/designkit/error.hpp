#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace designkit {

// Malformed or out-of-contract input (bad labels, violated invariants, parse failures).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Capacity or time budget exceeded. Never means "infeasible".
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact procedure completed and found no solution.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchBudget {
  std::chrono::milliseconds time{std::chrono::minutes(10)};
  std::uint64_t nodes = 0;  // 0 = unlimited

  static SearchBudget unlimited() { return {std::chrono::milliseconds::max(), 0}; }
};

// Per-call budget tracker. Checks the clock every 4096 nodes.
class BudgetClock {
 public:
  explicit BudgetClock(const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++nodes_;
    if (budget_.nodes != 0 && nodes_ > budget_.nodes) {
      throw ResourceError("search node budget of " + std::to_string(budget_.nodes) + " exceeded");
    }
    if ((nodes_ & 0xfff) == 0 && budget_.time != std::chrono::milliseconds::max()) {
      if (std::chrono::steady_clock::now() - start_ > budget_.time) {
        throw ResourceError("time budget of " + std::to_string(budget_.time.count()) +
                            " ms exceeded");
      }
    }
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

}  // namespace designkit
