#pragma once

#include <string>

#include "excm/axioms.hpp"
#include "excm/causation.hpp"
#include "excm/cost.hpp"
#include "excm/network.hpp"

namespace excm {

// Hasse diagram of the strict part of the order: equivalent worlds merge into
// one node, and an arrow from w to w' means w' is strictly more normal. Only
// covering pairs are drawn. Byte-deterministic.
[[nodiscard]] std::string order_to_dot(const NormalityOrder& order);

// The full closed relation: world tuples plus every weak (i >= j) index pair,
// sorted. Byte-deterministic.
[[nodiscard]] std::string order_to_json(const NormalityOrder& order);

// Same two renderings for a grading over candidate causes.
[[nodiscard]] std::string grading_to_dot(const Grading& g);
[[nodiscard]] std::string grading_to_json(const Grading& g);

// Atoms, the closed strict atom relation, and every table cell by name.
// Requires total tables.
[[nodiscard]] std::string network_to_json(const PlausibilisticNetwork& net,
                                          const AtomOrder& atoms);

[[nodiscard]] std::string cost_to_json(const CostReport& r);

[[nodiscard]] std::string axioms_to_json(const AxiomReport& r);

}  // namespace excm
