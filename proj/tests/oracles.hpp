// Test-side reference implementations. These recompute expected results by the
// most direct route available (exhaustive scans, naive double loops) so the
// library can be checked against something that shares none of its shortcuts.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "excm/model.hpp"
#include "excm/network.hpp"
#include "excm/preorder.hpp"

namespace oracle {

using excm::CausalModel;
using excm::Context;
using excm::Signature;
using excm::Value;
using excm::World;

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

struct RandomModel {
  CausalModel model;
  Context context;
};

// Random acyclic model over binary variables: a sprinkling of exogenous
// variables and input roots, everything else driven by random lookup tables
// over parents drawn only from earlier variables.
inline RandomModel random_binary_model(Rng& rng, int max_endo = 6,
                                       int max_exo = 2) {
  int n_endo = 2 + pick(rng, max_endo - 1);
  int n_exo = pick(rng, max_exo + 1);
  std::vector<excm::Variable> exo, endo;
  for (int i = 0; i < n_exo; ++i) exo.push_back({"U" + std::to_string(i), {0, 1}});
  for (int i = 0; i < n_endo; ++i) endo.push_back({"X" + std::to_string(i), {0, 1}});
  Signature sig(exo, endo);

  std::map<std::string, excm::ExprPtr> eqs;
  for (int i = 0; i < n_endo; ++i) {
    bool root = i == 0 ? chance(rng, 0.5) : chance(rng, 0.2);
    if (root) continue;
    // Candidate parents: earlier endogenous variables plus the exogenous ones.
    std::vector<std::string> pool;
    for (int j = 0; j < i; ++j) pool.push_back(endo[j].name);
    for (int j = 0; j < n_exo; ++j) pool.push_back(exo[j].name);
    std::vector<std::string> parents;
    for (const auto& p : pool)
      if (chance(rng, 0.5) && parents.size() < 4) parents.push_back(p);
    std::vector<std::vector<Value>> ranges(parents.size(), {0, 1});
    std::size_t cells = std::size_t{1} << parents.size();
    std::vector<Value> out(cells);
    for (auto& v : out) v = pick(rng, 2);
    eqs[endo[i].name] = excm::expr::table(parents, ranges, out);
  }
  CausalModel model = CausalModel::make(sig, eqs);

  Context ctx;
  for (const auto& v : sig.exogenous()) ctx[v.name] = pick(rng, 2);
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i)
    if (!model.has_equation(static_cast<int>(i)))
      ctx[sig.endogenous()[i].name] = pick(rng, 2);
  return {std::move(model), std::move(ctx)};
}

// Solve by scanning every world for one satisfying all equations. Returns the
// worlds found (callers assert there is exactly one).
inline std::vector<World> scan_solutions(const CausalModel& m, const Context& ctx) {
  std::vector<World> hits;
  for (const auto& w : excm::enumerate_worlds(m.signature()))
    if (excm::satisfies_equations(m, ctx, w)) hits.push_back(w);
  return hits;
}

// Counterfactual dependence by brute force: pin X to each value in turn via a
// fresh model and scan-solve, then look for any differing pair of Y values.
inline bool depends_brute(const CausalModel& m, const Context& ctx,
                          const std::string& x, const std::string& y) {
  const Signature& sig = m.signature();
  int yi = sig.endo_index(y);
  std::vector<Value> ys;
  for (Value v : sig.range_of(x)) {
    std::map<std::string, excm::ExprPtr> eqs;
    for (std::size_t i = 0; i < sig.endogenous().size(); ++i) {
      const std::string& name = sig.endogenous()[i].name;
      if (name == x)
        eqs[name] = excm::expr::constant(v);
      else if (m.has_equation(static_cast<int>(i)))
        eqs[name] = m.body(static_cast<int>(i));
    }
    Context c = ctx;
    c.erase(x);
    auto hits = scan_solutions(CausalModel::make(sig, eqs), c);
    if (hits.size() != 1) return false;  // callers assert solvability separately
    ys.push_back(hits[0][yi]);
  }
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = i + 1; j < ys.size(); ++j)
      if (ys[i] != ys[j]) return true;
  return false;
}

// ---- preorder oracles ----------------------------------------------------

using excm::Preorder;
using excm::WorldSet;

// Lifted comparison straight from the definition: for every member of v some
// member of u dominates it.
inline bool lift_direct(const Preorder& pre, const WorldSet& u, const WorldSet& v) {
  for (std::size_t j = v.find_first(); j != WorldSet::npos; j = v.find_next(j)) {
    bool covered = false;
    for (std::size_t i = u.find_first(); i != WorldSet::npos; i = u.find_next(i))
      if (pre.geq(i, j)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

// Largest member of u's equivalence class, found by enumerating every subset
// of the carrier and testing mutual lifted dominance.
inline WorldSet class_union_enum(const Preorder& pre, const WorldSet& u) {
  std::size_t n = pre.size();
  WorldSet out(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    WorldSet cand(n);
    for (std::size_t i = 0; i < n; ++i)
      if (bits >> i & 1) cand.set(i);
    if (lift_direct(pre, cand, u) && lift_direct(pre, u, cand)) out |= cand;
  }
  return out;
}

// Every preorder on n labeled worlds: close every reflexive relation and
// deduplicate. (29 on three worlds, 355 on four.)
inline std::vector<Preorder> all_preorders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Preorder> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (bits >> k & 1) pairs.push_back(slots[k]);
    Preorder p = Preorder::from_pairs(n, pairs);
    std::vector<std::uint64_t> key;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t row = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (p.geq(i, j)) row |= std::uint64_t{1} << j;
      key.push_back(row);
    }
    if (seen.insert(key).second) out.push_back(std::move(p));
  }
  return out;
}

inline Preorder random_preorder(Rng& rng, std::size_t n, double density = 0.3) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && chance(rng, density)) pairs.emplace_back(i, j);
  return Preorder::from_pairs(n, pairs);
}

inline WorldSet random_set(Rng& rng, std::size_t n, double density = 0.5) {
  WorldSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (chance(rng, density)) s.set(i);
  return s;
}

// ---------- atom orders and formal products ----------

struct RandomAtoms {
  excm::AtomOrder order;
  std::size_t n_vars = 0;
  std::vector<std::vector<excm::AtomId>> per_var;  // candidate factors
};

// Per-variable atom chains plus up to `max_extra` random cross-variable
// comparisons. All declared pairs follow one global interleaving of the
// chains, so the order is acyclic by construction.
inline RandomAtoms random_atoms(Rng& rng, std::size_t max_vars = 4,
                                std::size_t max_extra = 4) {
  std::size_t n_vars = 2 + pick(rng, max_vars - 1);
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> groups(n_vars);
  for (std::size_t v = 0; v < n_vars; ++v) {
    std::size_t k = 2 + pick(rng, 2);
    for (std::size_t j = 0; j < k; ++j) {
      groups[v].push_back(names.size());
      names.push_back("a" + std::to_string(v) + "_" + std::to_string(j));
    }
  }
  // Random merge of the chains into one total order.
  std::vector<std::size_t> perm;
  std::vector<std::size_t> next(n_vars, 0);
  while (perm.size() < names.size()) {
    std::size_t v = pick(rng, n_vars);
    if (next[v] < groups[v].size()) perm.push_back(groups[v][next[v]++]);
  }
  std::vector<std::size_t> rank(names.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i;
  std::vector<std::pair<std::string, std::string>> declared;
  for (const auto& g : groups)
    for (std::size_t j = 0; j + 1 < g.size(); ++j)
      declared.emplace_back(names[g[j]], names[g[j + 1]]);
  std::size_t extra =
      max_extra ? static_cast<std::size_t>(pick(rng, static_cast<int>(max_extra)))
                : 0;
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t i = pick(rng, perm.size());
    std::size_t j = pick(rng, perm.size());
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    declared.emplace_back(names[perm[i]], names[perm[j]]);
  }
  RandomAtoms out;
  out.order = excm::close_atom_order(names, declared);
  out.n_vars = n_vars;
  out.per_var.resize(n_vars);
  for (std::size_t v = 0; v < n_vars; ++v)
    for (std::size_t a : groups[v])
      out.per_var[v].push_back(static_cast<excm::AtomId>(a));
  return out;
}

inline excm::FormalProduct random_product(Rng& rng, const RandomAtoms& a) {
  excm::FormalProduct p(a.n_vars);
  for (std::size_t v = 0; v < a.n_vars; ++v)
    p[v] = a.per_var[v][pick(rng, a.per_var[v].size())];
  return p;
}

// Direct application of the normality rule to two worlds: w1 is at least as
// normal as w2 when every factor of w2's product is dominated by some factor
// of w1's.
inline bool world_geq_direct(const excm::PlausibilisticNetwork& net,
                             const excm::AtomOrder& atoms,
                             const excm::World& w1, const excm::World& w2) {
  auto p1 = excm::world_plausibility(net, w1);
  auto p2 = excm::world_plausibility(net, w2);
  for (excm::AtomId b : p2) {
    bool dominated = false;
    for (excm::AtomId a : p1)
      if (atoms.leq(b, a)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

}  // namespace oracle
