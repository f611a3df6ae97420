#pragma once

#include <cstddef>
#include <cstdint>

namespace carpet {

// Cap on the number of words (tree nodes) a single enumeration may visit.
inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 26;

// Reads CARPET_LAB_BUDGET, falling back to kDefaultWordBudget.
std::uint64_t word_budget_from_env();

// Counts visited nodes and throws DepthBudgetExceeded once the cap is hit.
class BudgetCounter {
 public:
  explicit BudgetCounter(std::uint64_t cap) : cap_(cap) {}

  void tick(std::uint64_t n = 1);
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

}  // namespace carpet
