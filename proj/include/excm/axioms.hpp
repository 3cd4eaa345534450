#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "excm/exec.hpp"
#include "excm/preorder.hpp"

namespace excm {

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  std::string counterexample;  // empty when passed
};

struct AxiomReport {
  std::size_t worlds = 0;
  std::vector<AxiomResult> axioms;
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] const AxiomResult* find(const std::string& name) const;
};

// Value of a measure over a small carrier, with world sets packed into masks.
struct MaskValue {
  enum class Tag { bottom, conditional, top };
  Tag tag = Tag::bottom;
  std::uint64_t num = 0;   // canonical numerator class
  std::uint64_t cond = 0;  // canonical conditioning class
  bool operator==(const MaskValue&) const = default;
  auto operator<=>(const MaskValue&) const = default;
};
using MaskMeasure = std::function<MaskValue(std::uint64_t u, std::uint64_t v)>;

inline constexpr std::size_t default_axiom_cap = 5;

// Exhaustive conditional-plausibility-measure check of the measure induced by
// the preorder, over every subset pair of the carrier:
//   CPl1  Pl(empty|V) = bottom
//   CPl2  Pl(W|V) = top
//   CPl3  monotonicity in the first argument
//   CPl4  Pl(U|V) = Pl(U∩V|V)
//   Alg1/Alg2  the sum over disjoint unions and the product along chains are
//              well-defined functions of the value tuples they combine
//   Alg3  distributivity of the product over the sum on their domains
//   Alg4  cancellation: a⊗c <= b⊗c with c != bottom forces a <= b
// Counterexamples are reported, never repaired. Throws SpaceTooLarge when the
// carrier exceeds the cap.
[[nodiscard]] AxiomReport check_cpm_axioms(const Preorder& pre,
                                           std::size_t cap = default_axiom_cap,
                                           Exec mode = Exec::parallel);

// Same checks against an arbitrary measure (for probing deliberately broken
// ones). The carrier must have at most 10 worlds.
[[nodiscard]] AxiomReport check_cpm_axioms(std::size_t n_worlds,
                                           const MaskMeasure& measure,
                                           std::size_t cap = default_axiom_cap,
                                           Exec mode = Exec::parallel);

}  // namespace excm
