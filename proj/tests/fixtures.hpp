// Hand-built models shared across test binaries.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "excm/defaults.hpp"
#include "excm/model.hpp"
#include "excm/network.hpp"

namespace fixtures {

using excm::CausalModel;
using excm::Signature;
using excm::Variable;
namespace ex = excm::expr;

// Forest fire over input roots L (lightning) and M (match): F = max(L, M).
inline CausalModel forest_fire_disjunctive() {
  Signature sig({}, {{"L", {0, 1}}, {"M", {0, 1}}, {"F", {0, 1}}});
  return CausalModel::make(
      sig, {{"F", ex::max(ex::var("L"), ex::var("M"))}});
}

// Conjunctive variant: both causes needed, F = min(L, M).
inline CausalModel forest_fire_conjunctive() {
  Signature sig({}, {{"L", {0, 1}}, {"M", {0, 1}}, {"F", {0, 1}}});
  return CausalModel::make(
      sig, {{"F", ex::min(ex::var("L"), ex::var("M"))}});
}

// Forest fire with one exogenous variable U encoding the pair (l, m) as
// 2*l + m, so U=2 means lightning only.
inline CausalModel forest_fire_exogenous() {
  Signature sig({{"U", {0, 1, 2, 3}}},
                {{"L", {0, 1}}, {"M", {0, 1}}, {"F", {0, 1}}});
  auto u = ex::var("U");
  auto l = ex::geq(u, ex::constant(2));
  auto m = ex::sub(ex::var("U"), ex::mul(ex::constant(2),
                                         ex::geq(ex::var("U"), ex::constant(2))));
  return CausalModel::make(sig, {{"L", l},
                                 {"M", m},
                                 {"F", ex::max(ex::var("L"), ex::var("M"))}});
}

// Two people and the last pens: a problem occurs iff both take one.
inline CausalModel pen_model() {
  Signature sig({}, {{"PS", {0, 1}}, {"AA", {0, 1}}, {"PO", {0, 1}}});
  return CausalModel::make(
      sig, {{"PO", ex::min(ex::var("PS"), ex::var("AA"))}});
}

// Eleven voters, majority of six wins.
inline CausalModel voting_model() {
  std::vector<Variable> endo;
  for (int i = 1; i <= 11; ++i) endo.push_back({"V" + std::to_string(i), {0, 1}});
  endo.push_back({"W", {0, 1}});
  Signature sig({}, endo);
  auto sum = ex::var("V1");
  for (int i = 2; i <= 11; ++i) sum = ex::add(sum, ex::var("V" + std::to_string(i)));
  return CausalModel::make(sig, {{"W", ex::geq(sum, ex::constant(6))}});
}

inline excm::Context votes(int yes) {
  excm::Context ctx;
  for (int i = 1; i <= 11; ++i) ctx["V" + std::to_string(i)] = i <= yes ? 1 : 0;
  return ctx;
}

struct FireNetwork {
  excm::AtomOrder atoms;
  excm::PlausibilisticNetwork net;
};

// Explicit cpts for the forest fire: roots get d_X+ on 0 and d_X- on 1, F
// gets d_F+ exactly where F = max(L, M) holds. With `comparable_chain` the
// lightning/match atoms are related (d_L+ > d_M+ and d_M- > d_L-); otherwise
// atoms of distinct variables stay incomparable.
inline FireNetwork fire_network(bool comparable_chain = false) {
  std::vector<std::pair<std::string, std::string>> declared = {
      {"d_L+", "d_L-"}, {"d_M+", "d_M-"}, {"d_F+", "d_F-"}};
  if (comparable_chain) {
    declared.emplace_back("d_L+", "d_M+");
    declared.emplace_back("d_M-", "d_L-");
  }
  auto atoms = excm::close_atom_order(
      {"d_L+", "d_L-", "d_M+", "d_M-", "d_F+", "d_F-"}, declared);
  auto net =
      excm::PlausibilisticNetwork::over_causal_graph(forest_fire_disjunctive());
  for (const char* root : {"L", "M"}) {
    std::string base = std::string("d_") + root;
    net.set_entry(root, 0, {}, atoms.id(base + "+"));
    net.set_entry(root, 1, {}, atoms.id(base + "-"));
  }
  for (excm::Value l : {0, 1})
    for (excm::Value m : {0, 1})
      for (excm::Value f : {0, 1})
        net.set_entry("F", f, {l, m},
                      atoms.id(f == std::max(l, m) ? "d_F+" : "d_F-"));
  return {std::move(atoms), std::move(net)};
}

// The succinct listing for the same model: F's table comes from the equation
// default, the root tables from the declared chains. With `comparable_chain`
// the single four-cell chain relates lightning and match atoms.
inline excm::CompactSpec fire_compact(bool comparable_chain = false) {
  using excm::PlausCell;
  excm::CompactSpec spec;
  spec.model = forest_fire_disjunctive();
  if (comparable_chain) {
    spec.chains.push_back({PlausCell{"L", 0, {}}, PlausCell{"M", 0, {}},
                           PlausCell{"M", 1, {}}, PlausCell{"L", 1, {}}});
  } else {
    spec.chains.push_back({PlausCell{"L", 0, {}}, PlausCell{"L", 1, {}}});
    spec.chains.push_back({PlausCell{"M", 0, {}}, PlausCell{"M", 1, {}}});
  }
  return spec;
}

// Pen story with an office policy: the policy variable conditions the
// professor's plausibility table while the professor has no equation at all.
inline excm::CompactSpec chair_spec() {
  using excm::PlausCell;
  excm::Signature sig({}, {{"CP", {0, 1}},
                           {"PS", {0, 1}},
                           {"AA", {0, 1}},
                           {"PO", {0, 1}}});
  excm::CompactSpec spec;
  spec.model = excm::CausalModel::make(
      sig, {{"PO", ex::min(ex::var("PS"), ex::var("AA"))}});
  excm::CptOverride ov;
  ov.parents = {"CP"};
  ov.rows = {{0, {{"CP", 1}}, "follows"},
             {1, {{"CP", 1}}, "defies"},
             {0, {{"CP", 0}}, "declines"},
             {1, {{"CP", 0}}, "takes"}};
  spec.overrides["PS"] = ov;
  spec.chains.push_back({PlausCell{"CP", 1, {}}, PlausCell{"CP", 0, {}}});
  spec.chains.push_back({PlausCell{"AA", 0, {}}, PlausCell{"AA", 1, {}}});
  spec.chains.push_back({PlausCell{"PS", 0, {{"CP", 1}}},
                         PlausCell{"PS", 1, {{"CP", 1}}}});
  return spec;
}

}  // namespace fixtures
