#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bf {

// Raised when a computation would exceed a configured resource cap.
// Callers report it as "budget exhausted" instead of returning a partial answer.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
  size_t max_columns = 2'000'000;      // columns of any single boundary matrix
  size_t max_fill = 80'000'000;        // live nonzeros during elimination
  size_t max_group_order = 5000;       // closure cap for group_from_generators
  size_t max_ring_size = 1'000'000;
  size_t bar_order_deg3 = 36;          // |G| limit for bar homology in degree 3
  size_t bar_order_deg2 = 150;         // |G| limit for bar homology in degree 2
  size_t search_nodes = 50'000'000;    // general position backtracking

  // Reads BLOCH_FORGE_BUDGET, a comma separated list such as
  // "cols=4000000,fill=1e8,group=70000". A bare number sets cols.
  static Budget from_env();
  void apply_spec(const std::string& spec);
};

// Process wide defaults, initialised from the environment on first use.
Budget& default_budget();

}  // namespace bf
