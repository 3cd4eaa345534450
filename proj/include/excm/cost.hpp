#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>

#include "excm/defaults.hpp"

namespace excm {

// Factorials are materialized only up to this many worlds; beyond it the
// order count is reported as omitted rather than computed.
inline constexpr unsigned long default_factorial_cap = 10000;
// The per-variable candidate count 2^(2^(n-1)) is materialized only while the
// exponent stays at or below this many bits.
inline constexpr unsigned long default_candidate_exponent_cap = 1ul << 20;

// How much information the model costs to write down, naively versus through
// the compact listing. The binary-only figures are absent for models with a
// non-binary endogenous variable; the capped figures are absent when they
// would not fit.
struct CostReport {
  std::size_t n_endogenous = 0;
  bool all_binary = false;
  std::optional<mpz_class> naive_bits;              // n * 2^(n-1)
  std::optional<mpz_class> candidates_per_variable; // 2^(2^(n-1))
  mpz_class world_count;                            // product of range sizes
  std::optional<mpz_class> order_count;             // (world count)!
  mpz_class equation_values;      // table entries to write every equation
  mpz_class cpt_cells;            // plausibility-table cells, value x parents
  std::size_t declared_comparisons = 0;  // adjacent pairs across all chains
};

[[nodiscard]] CostReport representation_cost(const CompactSpec& spec);

// Leading significant digits as d.dd...e+NN (truncated, not rounded); "0"
// for zero. Keeps huge exact integers readable.
[[nodiscard]] std::string scientific(const mpz_class& v, int digits = 3);

}  // namespace excm
