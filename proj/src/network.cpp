#include "excm/network.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "excm/errors.hpp"

namespace excm {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

AtomOrder close_atom_order(
    std::vector<std::string> atoms,
    const std::vector<std::pair<std::string, std::string>>& declared) {
  AtomOrder o;
  o.names_ = std::move(atoms);
  for (std::size_t i = 0; i < o.names_.size(); ++i)
    if (!o.ids_.emplace(o.names_[i], static_cast<AtomId>(i)).second)
      throw DuplicateDeclaration("atom '" + o.names_[i] + "' declared twice");
  const std::size_t n = o.names_.size();
  o.above_.assign(n, std::vector<bool>(n, false));
  for (const auto& [hi, lo] : declared) {
    AtomId a = o.id(hi);
    AtomId b = o.id(lo);
    o.declared_.emplace_back(a, b);
    o.above_[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (o.above_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (o.above_[k][j]) o.above_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (o.above_[i][i])
      throw CyclicAtomOrder("comparisons force " + o.names_[i] + " > " +
                            o.names_[i]);
  return o;
}

bool AtomOrder::has(const std::string& name) const {
  return ids_.count(name) != 0;
}

AtomId AtomOrder::id(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw UnknownAtom("unknown atom '" + name + "'");
  return it->second;
}

bool AtomOrder::gt(AtomId a, AtomId b) const {
  return above_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

PlausibilisticNetwork::PlausibilisticNetwork(
    std::vector<Variable> variables,
    std::map<std::string, std::vector<std::string>> parents)
    : vars_(std::move(variables)) {
  const std::size_t n = vars_.size();
  std::vector<std::vector<Value>> ranges;
  ranges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (vars_[i].range.empty())
      throw InvalidModel("variable '" + vars_[i].name + "' has an empty range");
    if (!index_.emplace(vars_[i].name, i).second)
      throw DuplicateDeclaration("variable '" + vars_[i].name +
                                 "' declared twice");
    ranges.push_back(vars_[i].range);
  }
  space_ = RadixSpace(std::move(ranges));
  for (const auto& [name, list] : parents) {
    (void)list;
    if (!index_.count(name))
      throw UnknownVariable("parent list for unknown variable '" + name + "'");
  }
  parents_.resize(n);
  parent_names_.resize(n);
  parent_space_.resize(n);
  table_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Value>> pranges;
    if (auto it = parents.find(vars_[i].name); it != parents.end()) {
      for (const auto& p : it->second) {
        auto pit = index_.find(p);
        if (pit == index_.end())
          throw UnknownVariable("unknown parent '" + p + "' of '" +
                                vars_[i].name + "'");
        if (std::count(it->second.begin(), it->second.end(), p) > 1)
          throw DuplicateDeclaration("parents of '" + vars_[i].name +
                                     "' repeat '" + p + "'");
        parents_[i].push_back(pit->second);
        pranges.push_back(vars_[pit->second].range);
      }
      parent_names_[i] = it->second;
    }
    parent_space_[i] = RadixSpace(std::move(pranges));
    unsigned long long cells =
        vars_[i].range.size() * parent_space_[i].size();
    if (parent_space_[i].overflowed() || cells > default_world_cap)
      throw SpaceTooLarge("table of '" + vars_[i].name + "' needs " +
                          std::to_string(cells) + " cells");
    table_[i].assign(static_cast<std::size_t>(cells), -1);
  }
  // The parent graph must be a DAG for the chain-rule product to make sense.
  std::vector<std::size_t> remaining(n, 0);
  std::deque<std::size_t> ready;
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t i = 0; i < n; ++i) {
    remaining[i] = parents_[i].size();
    for (std::size_t p : parents_[i]) children[p].push_back(i);
    if (remaining[i] == 0) ready.push_back(i);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    ++done;
    for (std::size_t c : children[v])
      if (--remaining[c] == 0) ready.push_back(c);
  }
  if (done != n) {
    std::size_t at = 0;
    while (remaining[at] == 0) ++at;
    std::vector<std::size_t> path{at};
    for (;;) {
      std::size_t next = n;
      for (std::size_t p : parents_[path.back()])
        if (remaining[p] != 0) {
          next = p;
          break;
        }
      auto seen = std::find(path.begin(), path.end(), next);
      if (seen != path.end()) {
        std::vector<std::string> names;
        for (auto it = seen; it != path.end(); ++it)
          names.push_back(vars_[*it].name);
        names.push_back(vars_[next].name);
        throw CyclicModel("cpt parents form a cycle: " + join(names, " -> "));
      }
      path.push_back(next);
    }
  }
}

PlausibilisticNetwork PlausibilisticNetwork::over_causal_graph(
    const CausalModel& model) {
  const auto& endo = model.signature().endogenous();
  std::map<std::string, std::vector<std::string>> parents;
  for (std::size_t i = 0; i < endo.size(); ++i) {
    if (!model.has_equation(static_cast<int>(i))) continue;
    std::vector<std::string> names;
    for (int p : model.endo_parents(static_cast<int>(i)))
      names.push_back(endo[static_cast<std::size_t>(p)].name);
    parents[endo[i].name] = std::move(names);
  }
  return PlausibilisticNetwork(endo, std::move(parents));
}

std::size_t PlausibilisticNetwork::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw UnknownVariable("unknown network variable '" + name + "'");
  return it->second;
}

const std::vector<std::string>& PlausibilisticNetwork::parents_of(
    const std::string& name) const {
  return parent_names_[index_of(name)];
}

std::size_t PlausibilisticNetwork::cell_index(std::size_t var, Value value,
                                              std::size_t parent_code) const {
  int vi = range_index(vars_[var].range, value);
  if (vi < 0)
    throw ValueOutOfRange("value " + std::to_string(value) +
                          " not in range of '" + vars_[var].name + "'");
  return static_cast<std::size_t>(vi) * parent_space_[var].size() + parent_code;
}

namespace {

std::string cell_name(const PlausibilisticNetwork& net, const std::string& var,
                      Value value, const std::vector<Value>& parent_values) {
  std::ostringstream out;
  out << var << " = " << value;
  const auto& ps = net.parents_of(var);
  for (std::size_t k = 0; k < ps.size(); ++k)
    out << (k == 0 ? " given " : ", ") << ps[k] << " = " << parent_values[k];
  return out.str();
}

}  // namespace

static std::size_t encode_parents(const RadixSpace& pspace,
                                  const std::string& var,
                                  const std::vector<std::string>& names,
                                  const std::vector<Value>& values) {
  if (values.size() != names.size())
    throw InvalidModel("table cell for '" + var + "' needs " +
                       std::to_string(names.size()) + " parent values, got " +
                       std::to_string(values.size()));
  for (std::size_t k = 0; k < names.size(); ++k)
    if (range_index(pspace.range(k), values[k]) < 0)
      throw ValueOutOfRange("value " + std::to_string(values[k]) +
                            " not in range of parent '" + names[k] + "' of '" +
                            var + "'");
  return pspace.encode(values);
}

void PlausibilisticNetwork::set_entry(const std::string& var, Value value,
                                      const std::vector<Value>& parent_values,
                                      AtomId atom) {
  if (atom < 0)
    throw UnknownAtom("table cell for '" + var + "' assigned an invalid atom");
  std::size_t i = index_of(var);
  std::size_t code =
      encode_parents(parent_space_[i], var, parent_names_[i], parent_values);
  table_[i][cell_index(i, value, code)] = atom;
}

AtomId PlausibilisticNetwork::entry(const std::string& var, Value value,
                                    const std::vector<Value>& parent_values) const {
  std::size_t i = index_of(var);
  std::size_t code =
      encode_parents(parent_space_[i], var, parent_names_[i], parent_values);
  AtomId a = table_[i][cell_index(i, value, code)];
  if (a < 0)
    throw MissingTableEntry("no table entry for " +
                            cell_name(*this, var, value, parent_values));
  return a;
}

bool PlausibilisticNetwork::total() const {
  for (const auto& t : table_)
    for (AtomId a : t)
      if (a < 0) return false;
  return true;
}

std::size_t PlausibilisticNetwork::table_size(const std::string& var) const {
  return table_[index_of(var)].size();
}

FormalProduct world_plausibility(const PlausibilisticNetwork& net,
                                 const World& world) {
  const std::size_t n = net.vars_.size();
  if (world.size() != n)
    throw InvalidModel("world has " + std::to_string(world.size()) +
                       " values, network has " + std::to_string(n) +
                       " variables");
  FormalProduct out(n);
  std::vector<Value> pvals;
  for (std::size_t i = 0; i < n; ++i) {
    pvals.clear();
    for (std::size_t p : net.parents_[i]) pvals.push_back(world[p]);
    std::size_t code = encode_parents(net.parent_space_[i], net.vars_[i].name,
                                      net.parent_names_[i], pvals);
    AtomId a = net.table_[i][net.cell_index(i, world[i], code)];
    if (a < 0)
      throw MissingTableEntry(
          "no table entry for " +
          cell_name(net, net.vars_[i].name, world[i], pvals));
    out[i] = a;
  }
  return out;
}

bool product_leq(const AtomOrder& order, const FormalProduct& p,
                 const FormalProduct& q) {
  for (AtomId a : p) {
    bool covered = false;
    for (AtomId b : q)
      if (order.leq(a, b)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

Relation compare_products(const AtomOrder& order, const FormalProduct& p,
                          const FormalProduct& q) {
  bool le = product_leq(order, p, q);
  bool ge = product_leq(order, q, p);
  if (le && ge) return Relation::equal;
  if (le) return Relation::less;
  if (ge) return Relation::greater;
  return Relation::incomparable;
}

std::string product_to_string(const AtomOrder& order, const FormalProduct& p) {
  std::vector<std::string> names;
  names.reserve(p.size());
  for (AtomId a : p) names.push_back(order.name(a));
  return join(names, " (x) ");
}

NormalityOrder induced_order(const PlausibilisticNetwork& net,
                             const AtomOrder& order, std::size_t cap,
                             Exec mode) {
  const RadixSpace& space = net.world_space();
  if (space.overflowed() || space.size() > cap)
    throw SpaceTooLarge("induced order over " + std::to_string(space.size()) +
                        " worlds exceeds the cap of " + std::to_string(cap));
  const std::size_t n = static_cast<std::size_t>(space.size());
  std::vector<World> worlds(n);
  std::vector<FormalProduct> prods(n);
  for (std::size_t i = 0; i < n; ++i) {
    worlds[i] = space.decode(i);
    prods[i] = world_plausibility(net, worlds[i]);
  }
  std::vector<WorldSet> rows(n, WorldSet(n));
  auto fill_row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      if (product_leq(order, prods[j], prods[i])) rows[i].set(j);
  };
  if (mode == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) fill_row(i);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fill_row(static_cast<std::size_t>(i));
  }
  return NormalityOrder{std::move(worlds), space,
                        Preorder::from_rows(std::move(rows))};
}

}  // namespace excm
