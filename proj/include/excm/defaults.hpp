#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "excm/model.hpp"
#include "excm/network.hpp"

namespace excm {

// A table cell reference: Pl(var = value) or Pl(var = value | given...).
struct PlausCell {
  std::string var;
  Value value = 0;
  std::vector<std::pair<std::string, Value>> given;

  bool operator==(const PlausCell&) const = default;
};

// "Pl(F = 1 | L = 0, M = 1)", matching the model-file syntax.
[[nodiscard]] std::string cell_to_string(const PlausCell& cell);

// An explicit cpt replacing the default expansion of one variable. Its
// parents may differ from the equation's; rows name atoms directly, and the
// atom names are namespaced to the variable when compiled.
struct OverrideRow {
  Value value = 0;
  std::vector<std::pair<std::string, Value>> given;
  std::string atom;
};

struct CptOverride {
  std::vector<std::string> parents;
  std::vector<OverrideRow> rows;
};

// A causal model plus the plausibility declarations of a compact listing.
// Each chain cell0 > cell1 > ... declares strict comparisons between adjacent
// cells; a single-cell chain just declares the variable's table.
struct CompactSpec {
  CausalModel model;
  std::map<std::string, CptOverride> overrides;
  std::vector<std::vector<PlausCell>> chains;
};

// Atoms produced by expansion plus the per-variable default pairs d_X+ >
// d_X-.
struct AtomUniverse {
  std::vector<std::string> atoms;
  std::vector<std::pair<std::string, std::string>> default_pairs;
};

struct Rule1Row {
  std::string var;
  Value value = 0;
  std::vector<Value> parent_values;
  std::string atom;
};

struct Rule1Tables {
  std::vector<Rule1Row> rows;
  AtomUniverse universe;
};

// Normal causality: every equation-bearing variable X outside `overridden`
// gets atoms d_X+ > d_X- and one row per (value, parent setting), with d_X+
// exactly where the equation holds. A variable with an exogenous parent has
// no such expansion and needs an override.
[[nodiscard]] Rule1Tables expand_rule1(
    const CausalModel& model, const std::set<std::string>& overridden = {});

// Minimality: the atom order is exactly the closure of the default pairs
// plus the explicit comparisons. Atoms of distinct variables stay
// incomparable unless a comparison relates them.
[[nodiscard]] AtomOrder apply_rule2(
    const AtomUniverse& universe,
    const std::vector<std::pair<std::string, std::string>>& explicit_pairs);

struct CompiledModel {
  PlausibilisticNetwork net;
  AtomOrder atoms;
};

// Expands a compact listing into a total network plus its atom order:
// default tables for equation-bearing variables, declared tables for free
// roots, overrides verbatim, and the comparison chains resolved to atoms.
// Root variables that appear in no chain raise MissingRootTable.
[[nodiscard]] CompiledModel compile(const CompactSpec& spec);

}  // namespace excm
