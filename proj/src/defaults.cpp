#include "excm/defaults.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "excm/errors.hpp"

namespace excm {

namespace {

std::string plus_atom(const std::string& var) { return "d_" + var + "+"; }
std::string minus_atom(const std::string& var) { return "d_" + var + "-"; }
std::string value_atom(const std::string& var, Value v) {
  return "d_" + var + "(" + std::to_string(v) + ")";
}

PlausCell canonical_cell(PlausCell c) {
  std::sort(c.given.begin(), c.given.end());
  return c;
}

}  // namespace

std::string cell_to_string(const PlausCell& c) {
  std::string s = "Pl(" + c.var + " = " + std::to_string(c.value);
  for (std::size_t i = 0; i < c.given.size(); ++i)
    s += std::string(i == 0 ? " | " : ", ") + c.given[i].first + " = " +
         std::to_string(c.given[i].second);
  return s + ")";
}

Rule1Tables expand_rule1(const CausalModel& model,
                         const std::set<std::string>& overridden) {
  Rule1Tables out;
  const Signature& sig = model.signature();
  const auto& endo = sig.endogenous();
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    const int idx = static_cast<int>(i);
    if (overridden.count(name) || !model.has_equation(idx)) continue;
    if (!model.exo_parents(idx).empty())
      throw ExogenousParent(
          "'" + name + "' depends on exogenous '" +
          sig.exogenous()[static_cast<std::size_t>(
                              model.exo_parents(idx).front())]
              .name +
          "'; the default expansion covers only endogenous parents, supply an "
          "explicit cpt");
    out.universe.atoms.push_back(plus_atom(name));
    out.universe.atoms.push_back(minus_atom(name));
    out.universe.default_pairs.emplace_back(plus_atom(name), minus_atom(name));
    const auto& parents = model.endo_parents(idx);
    std::vector<std::vector<Value>> pranges;
    pranges.reserve(parents.size());
    for (int p : parents)
      pranges.push_back(endo[static_cast<std::size_t>(p)].range);
    RadixSpace pspace(std::move(pranges));
    std::vector<Value> setting;
    for (std::size_t code = 0; code < pspace.size(); ++code) {
      pspace.decode_into(code, setting);
      Value conforming =
          eval_expr(*model.body(idx), [&](const std::string& ref) -> Value {
            for (std::size_t k = 0; k < parents.size(); ++k)
              if (endo[static_cast<std::size_t>(parents[k])].name == ref)
                return setting[k];
            return sig.range_of(ref).front();  // trivially read
          });
      for (Value v : endo[i].range)
        out.rows.push_back(
            {name, v, setting,
             v == conforming ? plus_atom(name) : minus_atom(name)});
    }
  }
  return out;
}

AtomOrder apply_rule2(
    const AtomUniverse& universe,
    const std::vector<std::pair<std::string, std::string>>& explicit_pairs) {
  auto pairs = universe.default_pairs;
  pairs.insert(pairs.end(), explicit_pairs.begin(), explicit_pairs.end());
  return close_atom_order(universe.atoms, pairs);
}

CompiledModel compile(const CompactSpec& spec) {
  const Signature& sig = spec.model.signature();
  const auto& endo = sig.endogenous();

  for (const auto& [name, ov] : spec.overrides) {
    if (sig.endo_index(name) < 0)
      throw UnknownVariable("override for unknown endogenous variable '" +
                            name + "'");
    for (const auto& p : ov.parents) {
      if (sig.exo_index(p) >= 0)
        throw ExogenousParent("cpt parent '" + p + "' of '" + name +
                              "' is exogenous; tables range over endogenous "
                              "variables only");
      if (sig.endo_index(p) < 0)
        throw UnknownVariable("unknown cpt parent '" + p + "' of '" + name +
                              "'");
    }
  }

  std::map<std::string, std::vector<std::string>> parents;
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    if (auto it = spec.overrides.find(name); it != spec.overrides.end()) {
      parents[name] = it->second.parents;
    } else if (spec.model.has_equation(static_cast<int>(i))) {
      std::vector<std::string> ps;
      for (int p : spec.model.endo_parents(static_cast<int>(i)))
        ps.push_back(endo[static_cast<std::size_t>(p)].name);
      parents[name] = std::move(ps);
    }
  }
  PlausibilisticNetwork net(endo, parents);

  std::set<std::string> overridden;
  for (const auto& [name, ov] : spec.overrides) {
    (void)ov;
    overridden.insert(name);
  }

  Rule1Tables rule1 = expand_rule1(spec.model, overridden);
  AtomUniverse universe = rule1.universe;

  // Validate chain cells and note which free roots have declarations.
  std::set<std::string> declared_roots;
  std::vector<PlausCell> cells;
  auto cell_id = [&](const PlausCell& raw) {
    PlausCell c = canonical_cell(raw);
    auto it = std::find(cells.begin(), cells.end(), c);
    if (it != cells.end())
      return static_cast<std::size_t>(it - cells.begin());
    cells.push_back(c);
    return cells.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> cell_pairs;
  for (const auto& chain : spec.chains) {
    for (const auto& cell : chain) {
      int ei = sig.endo_index(cell.var);
      if (ei < 0) {
        if (sig.exo_index(cell.var) >= 0)
          throw InvalidModel("plausibility declaration for exogenous '" +
                             cell.var + "'; only endogenous variables carry "
                             "tables");
        throw UnknownVariable("plausibility declaration for unknown variable "
                              "'" +
                              cell.var + "'");
      }
      if (range_index(endo[static_cast<std::size_t>(ei)].range, cell.value) <
          0)
        throw ValueOutOfRange("value " + std::to_string(cell.value) +
                              " not in range of '" + cell.var + "' in " +
                              cell_to_string(cell));
      if (!overridden.count(cell.var) &&
          !spec.model.has_equation(ei))
        declared_roots.insert(cell.var);
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
      cell_pairs.emplace_back(cell_id(chain[k]), cell_id(chain[k + 1]));
  }

  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    if (overridden.count(name) || spec.model.has_equation(static_cast<int>(i)))
      continue;
    if (!declared_roots.count(name))
      throw MissingRootTable("root variable '" + name +
                             "' has no plausibility declaration");
  }

  // Cell-level closure of the declared comparisons, used only to decide
  // whether a binary root's two cells are totally ordered (then they earn the
  // d_X+ / d_X- names; otherwise values are named positionally).
  std::vector<std::vector<bool>> cell_gt(
      cells.size(), std::vector<bool>(cells.size(), false));
  for (auto [a, b] : cell_pairs) cell_gt[a][b] = true;
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cell_gt[i][k])
        for (std::size_t j = 0; j < cells.size(); ++j)
          if (cell_gt[k][j]) cell_gt[i][j] = true;

  std::map<std::string, std::map<Value, std::string>> root_atoms;
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    if (!declared_roots.count(name)) continue;
    const auto& range = endo[i].range;
    auto& atoms_of = root_atoms[name];
    bool named = false;
    if (range.size() == 2) {
      auto find_cell = [&](Value v) {
        PlausCell c{name, v, {}};
        auto it = std::find(cells.begin(), cells.end(), c);
        return it == cells.end() ? cells.size()
                                 : static_cast<std::size_t>(it - cells.begin());
      };
      std::size_t c0 = find_cell(range[0]);
      std::size_t c1 = find_cell(range[1]);
      if (c0 < cells.size() && c1 < cells.size()) {
        bool gt01 = cell_gt[c0][c1];
        bool gt10 = cell_gt[c1][c0];
        if (gt01 != gt10) {
          atoms_of[range[0]] = gt01 ? plus_atom(name) : minus_atom(name);
          atoms_of[range[1]] = gt01 ? minus_atom(name) : plus_atom(name);
          named = true;
        }
      }
    }
    if (!named)
      for (Value v : range) atoms_of[v] = value_atom(name, v);
    // Keep + before - in the universe, range order otherwise.
    std::vector<std::string> ordered;
    for (Value v : range) ordered.push_back(atoms_of[v]);
    if (named && ordered[0] == minus_atom(name))
      std::swap(ordered[0], ordered[1]);
    for (auto& a : ordered) universe.atoms.push_back(a);
  }

  // Override atoms, namespaced and created in sorted order so ids do not
  // depend on row order.
  std::map<std::string, std::map<std::string, std::string>> override_atoms;
  for (std::size_t i = 0; i < endo.size(); ++i) {
    const std::string& name = endo[i].name;
    auto it = spec.overrides.find(name);
    if (it == spec.overrides.end()) continue;
    std::set<std::string> raw;
    for (const auto& row : it->second.rows) {
      if (row.atom.empty())
        throw InvalidModel("override row for '" + name + "' names no atom");
      raw.insert(row.atom);
    }
    auto& named = override_atoms[name];
    for (const auto& r : raw) {
      named[r] = name + "." + r;
      universe.atoms.push_back(named[r]);
    }
  }

  std::map<std::string, AtomId> ids;
  for (std::size_t k = 0; k < universe.atoms.size(); ++k)
    ids[universe.atoms[k]] = static_cast<AtomId>(k);

  for (const auto& row : rule1.rows)
    net.set_entry(row.var, row.value, row.parent_values, ids.at(row.atom));
  for (const auto& [name, atoms_of] : root_atoms)
    for (const auto& [v, atom] : atoms_of)
      net.set_entry(name, v, {}, ids.at(atom));
  for (const auto& [name, ov] : spec.overrides) {
    const auto& cpt_parents = net.parents_of(name);
    for (const auto& row : ov.rows) {
      std::vector<Value> pv(cpt_parents.size());
      std::vector<bool> seen(cpt_parents.size(), false);
      for (const auto& [pname, pvalue] : row.given) {
        auto pit =
            std::find(cpt_parents.begin(), cpt_parents.end(), pname);
        if (pit == cpt_parents.end())
          throw InvalidModel("override row for '" + name +
                             "' conditions on '" + pname +
                             "', which is not a cpt parent");
        std::size_t k = static_cast<std::size_t>(pit - cpt_parents.begin());
        if (seen[k])
          throw DuplicateDeclaration("override row for '" + name +
                                     "' repeats parent '" + pname + "'");
        seen[k] = true;
        pv[k] = pvalue;
      }
      for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k])
          throw InvalidModel("override row for '" + name +
                             "' leaves cpt parent '" + cpt_parents[k] +
                             "' unset");
      net.set_entry(name, row.value, pv,
                    ids.at(override_atoms[name].at(row.atom)));
    }
  }
  if (!net.total()) {
    // Find one missing cell to report.
    for (std::size_t i = 0; i < endo.size(); ++i) {
      const std::string& name = endo[i].name;
      const auto& cpt_parents = net.parents_of(name);
      std::vector<std::vector<Value>> pranges;
      for (const auto& p : cpt_parents)
        pranges.push_back(sig.range_of(p));
      RadixSpace pspace(std::move(pranges));
      std::vector<Value> setting;
      for (std::size_t code = 0; code < pspace.size(); ++code) {
        pspace.decode_into(code, setting);
        for (Value v : endo[i].range) {
          try {
            (void)net.entry(name, v, setting);
          } catch (const MissingTableEntry&) {
            PlausCell c{name, v, {}};
            for (std::size_t k = 0; k < cpt_parents.size(); ++k)
              c.given.emplace_back(cpt_parents[k], setting[k]);
            throw MissingTableEntry("override for '" + name +
                                    "' leaves " + cell_to_string(c) +
                                    " without an atom");
          }
        }
      }
    }
  }

  // Resolve each declared comparison to the atoms at its cells.
  auto atom_at = [&](const PlausCell& cell) -> std::string {
    const auto& cpt_parents = net.parents_of(cell.var);
    std::vector<Value> pv(cpt_parents.size());
    std::vector<bool> seen(cpt_parents.size(), false);
    for (const auto& [pname, pvalue] : cell.given) {
      auto pit = std::find(cpt_parents.begin(), cpt_parents.end(), pname);
      if (pit == cpt_parents.end())
        throw InvalidModel(cell_to_string(cell) + " conditions on '" + pname +
                           "', which is not a cpt parent of '" + cell.var +
                           "'");
      std::size_t k = static_cast<std::size_t>(pit - cpt_parents.begin());
      if (seen[k])
        throw DuplicateDeclaration(cell_to_string(cell) +
                                   " repeats parent '" + pname + "'");
      seen[k] = true;
      pv[k] = pvalue;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k])
        throw InvalidModel(cell_to_string(cell) + " leaves cpt parent '" +
                           cpt_parents[k] + "' of '" + cell.var + "' unset");
    return universe.atoms[static_cast<std::size_t>(
        net.entry(cell.var, cell.value, pv))];
  };
  std::vector<std::pair<std::string, std::string>> explicit_pairs;
  for (const auto& chain : spec.chains)
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
      explicit_pairs.emplace_back(atom_at(chain[k]), atom_at(chain[k + 1]));

  AtomOrder order = apply_rule2(universe, explicit_pairs);
  return {std::move(net), std::move(order)};
}

}  // namespace excm
