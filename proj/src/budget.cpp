#include "carpet/budget.hpp"

#include <cstdlib>
#include <string>

#include "carpet/error.hpp"

namespace carpet {

std::uint64_t word_budget_from_env() {
  const char* raw = std::getenv("CARPET_LAB_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultWordBudget;
  try {
    const auto value = std::stoull(raw);
    if (value == 0) throw Error(Errc::InvalidArgument, "CARPET_LAB_BUDGET must be positive");
    return value;
  } catch (const std::logic_error&) {
    throw Error(Errc::InvalidArgument, std::string("CARPET_LAB_BUDGET is not an integer: ") + raw);
  }
}

void BudgetCounter::tick(std::uint64_t n) {
  used_ += n;
  if (used_ > cap_) {
    throw Error(Errc::DepthBudgetExceeded,
                "word enumeration exceeded the budget of " + std::to_string(cap_) + " nodes");
  }
}

}  // namespace carpet
