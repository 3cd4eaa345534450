#include "excm/exporters.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace excm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string world_tuple(const World& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

// Shared Hasse rendering: nodes are equivalence classes in index order,
// edges the covering pairs of the strict order, drawn upward.
std::string hasse_dot(const char* graph_name, const Preorder& pre,
                      const std::vector<std::string>& labels) {
  std::size_t n = pre.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j)
      if (pre.equiv(i, j)) {
        rep[i] = j;
        break;
      }
  }
  std::vector<std::size_t> reps;
  std::vector<std::size_t> node_of(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i) {
      node_of[i] = reps.size();
      reps.push_back(i);
    }
  std::string out = std::string("digraph ") + graph_name + " {\n";
  out += "  rankdir=BT;\n";
  for (std::size_t k = 0; k < reps.size(); ++k) {
    std::string label;
    for (std::size_t i = 0; i < n; ++i)
      if (rep[i] == reps[k]) {
        if (!label.empty()) label += " = ";
        label += labels[i];
      }
    out += "  n" + std::to_string(k) + " [label=\"" + label + "\"];\n";
  }
  for (std::size_t lo = 0; lo < reps.size(); ++lo)
    for (std::size_t hi = 0; hi < reps.size(); ++hi) {
      if (!pre.gt(reps[hi], reps[lo])) continue;
      bool covering = true;
      for (std::size_t mid = 0; mid < reps.size() && covering; ++mid)
        if (pre.gt(reps[hi], reps[mid]) && pre.gt(reps[mid], reps[lo]))
          covering = false;
      if (covering)
        out +=
            "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    }
  out += "}\n";
  return out;
}

ordered_json relation_pairs(const Preorder& pre) {
  ordered_json pairs = ordered_json::array();
  for (std::size_t i = 0; i < pre.size(); ++i)
    for (std::size_t j = 0; j < pre.size(); ++j)
      if (pre.geq(i, j)) pairs.push_back({i, j});
  return pairs;
}

std::string candidate_label(const CauseQuery& q) {
  return q.cause_var + " = " + std::to_string(q.cause_value);
}

ordered_json big(const std::optional<mpz_class>& v) {
  if (!v) return nullptr;
  return v->get_str();
}

}  // namespace

std::string order_to_dot(const NormalityOrder& order) {
  std::vector<std::string> labels;
  labels.reserve(order.worlds.size());
  for (const World& w : order.worlds) labels.push_back(world_tuple(w));
  return hasse_dot("normality", order.order, labels);
}

std::string order_to_json(const NormalityOrder& order) {
  ordered_json j;
  j["worlds"] = order.worlds;
  j["geq"] = relation_pairs(order.order);
  return j.dump(2) + "\n";
}

std::string grading_to_dot(const Grading& g) {
  std::vector<std::string> labels;
  labels.reserve(g.candidates.size());
  for (const GradedCandidate& c : g.candidates)
    labels.push_back(candidate_label(c.query));
  return hasse_dot("grading", g.relation, labels);
}

std::string grading_to_json(const Grading& g) {
  ordered_json j;
  j["candidates"] = ordered_json::array();
  for (const GradedCandidate& c : g.candidates) {
    ordered_json jc;
    jc["cause"] = {{"variable", c.query.cause_var},
                   {"value", c.query.cause_value}};
    jc["effect"] = {{"variable", c.query.effect_var},
                    {"value", c.query.effect_value}};
    jc["witnesses"] = ordered_json::array();
    for (const Witness& w : c.verdict.witnesses)
      jc["witnesses"].push_back(
          {{"set_to", w.alternative}, {"world", w.world}});
    jc["best_witnesses"] = c.best_witnesses;
    j["candidates"].push_back(std::move(jc));
  }
  j["geq"] = relation_pairs(g.relation);
  return j.dump(2) + "\n";
}

std::string network_to_json(const PlausibilisticNetwork& net,
                            const AtomOrder& atoms) {
  ordered_json j;
  j["atoms"] = atoms.names();
  ordered_json greater = ordered_json::array();
  for (AtomId a = 0; a < static_cast<AtomId>(atoms.size()); ++a)
    for (AtomId b = 0; b < static_cast<AtomId>(atoms.size()); ++b)
      if (atoms.gt(a, b)) greater.push_back({atoms.name(a), atoms.name(b)});
  j["greater"] = std::move(greater);

  j["variables"] = ordered_json::array();
  for (const Variable& v : net.variables()) {
    ordered_json jv;
    jv["name"] = v.name;
    jv["range"] = v.range;
    jv["parents"] = net.parents_of(v.name);
    std::vector<std::vector<Value>> pranges;
    for (const std::string& p : net.parents_of(v.name))
      pranges.push_back(net.variables()[net.index_of(p)].range);
    RadixSpace pspace(pranges);
    ordered_json table = ordered_json::array();
    std::vector<Value> setting;
    for (Value val : v.range)
      for (std::size_t code = 0; code < pspace.size(); ++code) {
        pspace.decode_into(code, setting);
        table.push_back({{"value", val},
                         {"given", setting},
                         {"atom", atoms.name(net.entry(v.name, val, setting))}});
      }
    jv["table"] = std::move(table);
    j["variables"].push_back(std::move(jv));
  }
  return j.dump(2) + "\n";
}

std::string cost_to_json(const CostReport& r) {
  ordered_json j;
  j["endogenous"] = r.n_endogenous;
  j["all_binary"] = r.all_binary;
  j["naive_bits"] = big(r.naive_bits);
  j["candidates_per_variable"] = big(r.candidates_per_variable);
  j["worlds"] = r.world_count.get_str();
  j["orders"] = big(r.order_count);
  j["orders_scientific"] =
      r.order_count ? ordered_json(scientific(*r.order_count)) : nullptr;
  j["equation_values"] = r.equation_values.get_str();
  j["cpt_cells"] = r.cpt_cells.get_str();
  j["declared_comparisons"] = r.declared_comparisons;
  return j.dump(2) + "\n";
}

std::string axioms_to_json(const AxiomReport& r) {
  ordered_json j;
  j["worlds"] = r.worlds;
  j["all_passed"] = r.all_passed();
  j["axioms"] = ordered_json::array();
  for (const AxiomResult& a : r.axioms)
    j["axioms"].push_back(
        {{"name", a.name},
         {"passed", a.passed},
         {"instances", a.instances},
         {"counterexample", a.counterexample.empty()
                                ? ordered_json(nullptr)
                                : ordered_json(a.counterexample)}});
  return j.dump(2) + "\n";
}

}  // namespace excm
