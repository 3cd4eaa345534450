#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "excm/exec.hpp"
#include "excm/model.hpp"
#include "excm/preorder.hpp"
#include "excm/radix.hpp"

namespace excm {

using AtomId = int;

class AtomOrder;

// Builds the reflexive-transitive closure of declared strict comparisons
// "first > second" over named atoms. Throws DuplicateDeclaration on a repeated
// atom name, UnknownAtom when a comparison mentions an undeclared atom, and
// CyclicAtomOrder when the declarations force a > a.
[[nodiscard]] AtomOrder close_atom_order(
    std::vector<std::string> atoms,
    const std::vector<std::pair<std::string, std::string>>& declared);

// Named plausibility atoms under a strict partial order. Distinct atoms are
// never equivalent: the only way two could be would be a declared cycle, which
// construction rejects.
class AtomOrder {
 public:
  AtomOrder() = default;

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(AtomId a) const { return names_[a]; }
  [[nodiscard]] bool has(const std::string& name) const;
  [[nodiscard]] AtomId id(const std::string& name) const;

  [[nodiscard]] bool gt(AtomId a, AtomId b) const;
  [[nodiscard]] bool leq(AtomId a, AtomId b) const { return a == b || gt(b, a); }
  [[nodiscard]] bool geq(AtomId a, AtomId b) const { return leq(b, a); }

  // Declared pairs before closure, for serialization.
  [[nodiscard]] const std::vector<std::pair<AtomId, AtomId>>& declared() const {
    return declared_;
  }

 private:
  friend AtomOrder close_atom_order(
      std::vector<std::string>,
      const std::vector<std::pair<std::string, std::string>>&);

  std::vector<std::string> names_;
  std::map<std::string, AtomId> ids_;
  std::vector<std::pair<AtomId, AtomId>> declared_;
  std::vector<std::vector<bool>> above_;  // above_[a][b]: a > b after closure
};

// A world's plausibility: one atom per network variable, in variable order.
// The combination is formal; nothing is multiplied out.
using FormalProduct = std::vector<AtomId>;

// Conditional plausibility tables over a DAG of finite variables. Each cell
// (value of X, setting of X's cpt parents) names an atom. Cells start unset;
// reading an unset cell raises MissingTableEntry, so partially expanded
// networks fail loudly instead of guessing.
class PlausibilisticNetwork {
 public:
  PlausibilisticNetwork() = default;
  // `parents` lists each variable's cpt parents (absent entry = none). The
  // parent graph must be acyclic and may differ from any causal structure.
  PlausibilisticNetwork(std::vector<Variable> variables,
                        std::map<std::string, std::vector<std::string>> parents);

  // Network over the endogenous variables of a model, with the equation
  // dependency graph as cpt parents. All tables start empty.
  [[nodiscard]] static PlausibilisticNetwork over_causal_graph(
      const CausalModel& model);

  [[nodiscard]] std::size_t n_variables() const { return vars_.size(); }
  [[nodiscard]] const std::vector<Variable>& variables() const { return vars_; }
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
  [[nodiscard]] const std::vector<std::string>& parents_of(
      const std::string& name) const;

  void set_entry(const std::string& var, Value value,
                 const std::vector<Value>& parent_values, AtomId atom);
  [[nodiscard]] AtomId entry(const std::string& var, Value value,
                             const std::vector<Value>& parent_values) const;
  [[nodiscard]] bool total() const;
  // Cells in the table of X: |range(X)| * prod of parent range sizes.
  [[nodiscard]] std::size_t table_size(const std::string& var) const;

  [[nodiscard]] const RadixSpace& world_space() const { return space_; }

 private:
  friend FormalProduct world_plausibility(const PlausibilisticNetwork& net,
                                          const World& world);

  [[nodiscard]] std::size_t cell_index(std::size_t var, Value value,
                                       std::size_t parent_code) const;

  std::vector<Variable> vars_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;  // indices into vars_
  std::vector<std::vector<std::string>> parent_names_;
  std::vector<RadixSpace> parent_space_;
  std::vector<std::vector<AtomId>> table_;  // -1 = unset
  RadixSpace space_;
};

// Factor for each variable X: the table cell at (world[X], world restricted to
// X's parents). Throws MissingTableEntry on an unset cell.
[[nodiscard]] FormalProduct world_plausibility(const PlausibilisticNetwork& net,
                                               const World& world);

// p <= q iff every factor of p is <= some factor of q under the atom order.
// The relation combines the two directions; products stay incomparable unless
// the factor comparisons force otherwise.
[[nodiscard]] bool product_leq(const AtomOrder& order, const FormalProduct& p,
                               const FormalProduct& q);
[[nodiscard]] Relation compare_products(const AtomOrder& order,
                                        const FormalProduct& p,
                                        const FormalProduct& q);

[[nodiscard]] std::string product_to_string(const AtomOrder& order,
                                            const FormalProduct& p);

// Normality comparison of all worlds of a network: w is at least as normal as
// w' when its formal product dominates. Carrier order is lexicographic in the
// variable ranges, matching enumerate_worlds.
struct NormalityOrder {
  std::vector<World> worlds;
  RadixSpace space;
  Preorder order;

  [[nodiscard]] std::size_t index_of(const World& w) const {
    return space.encode(w);
  }
  [[nodiscard]] bool geq(const World& a, const World& b) const {
    return order.geq(index_of(a), index_of(b));
  }
  [[nodiscard]] bool gt(const World& a, const World& b) const {
    return order.gt(index_of(a), index_of(b));
  }
  [[nodiscard]] bool equiv(const World& a, const World& b) const {
    return order.equiv(index_of(a), index_of(b));
  }
};

inline constexpr std::size_t default_induced_cap = 4096;

// Compares every pair of worlds through compare_products. Requires total
// tables; throws SpaceTooLarge when the world count exceeds the cap. The
// result is a preorder by construction (factor-wise dominance is reflexive
// and transitive), identical for both execution modes.
[[nodiscard]] NormalityOrder induced_order(const PlausibilisticNetwork& net,
                                           const AtomOrder& order,
                                           std::size_t cap = default_induced_cap,
                                           Exec mode = Exec::parallel);

}  // namespace excm
