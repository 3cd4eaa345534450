#include "excm/causation.hpp"

#include <cstddef>
#include <utility>

#include "excm/errors.hpp"

namespace excm {

namespace {

int endo_index_checked(const Signature& sig, const std::string& name) {
  int idx = sig.endo_index(name);
  if (idx < 0)
    throw UnknownVariable("'" + name + "' is not an endogenous variable");
  return idx;
}

void check_value(const Signature& sig, const std::string& name, Value v) {
  if (range_index(sig.range_of(name), v) < 0)
    throw ValueOutOfRange("value " + std::to_string(v) +
                          " is outside the range of '" + name + "'");
}

}  // namespace

Verdict actual_cause(const CauseQuery& q) {
  const Signature& sig = q.model.signature();
  int xi = endo_index_checked(sig, q.cause_var);
  int yi = endo_index_checked(sig, q.effect_var);
  if (xi == yi)
    throw InvalidModel("cause and effect must be distinct variables");
  check_value(sig, q.cause_var, q.cause_value);
  check_value(sig, q.effect_var, q.effect_value);

  World actual = solve(q.model, q.context);
  if (actual[static_cast<std::size_t>(xi)] != q.cause_value ||
      actual[static_cast<std::size_t>(yi)] != q.effect_value)
    return {VerdictStatus::factual_mismatch, {}};

  Verdict v;
  for (Value alt : sig.range_of(q.cause_var)) {
    if (alt == q.cause_value) continue;
    World w = solve(intervene(q.model, {{q.cause_var, alt}}), q.context);
    if (w[static_cast<std::size_t>(yi)] != q.effect_value)
      v.witnesses.push_back({alt, std::move(w)});
  }
  if (!v.witnesses.empty()) v.status = VerdictStatus::cause;
  return v;
}

namespace {

std::size_t carrier_index(const NormalityOrder& order, const World& w,
                          const CauseQuery& q) {
  if (w.size() != order.space.dimensions() ||
      [&] {
        for (std::size_t k = 0; k < w.size(); ++k)
          if (range_index(order.space.range(k), w[k]) < 0) return true;
        return false;
      }())
    throw InvalidModel("witness world for '" + q.cause_var +
                       "' lies outside the normality order");
  return order.index_of(w);
}

}  // namespace

Grading grade(const std::vector<CauseQuery>& candidates,
              const NormalityOrder& order, const CausePredicate& predicate) {
  Grading g;
  g.candidates.reserve(candidates.size());
  // Best witnesses per candidate, as indices into the order's carrier.
  std::vector<std::vector<std::size_t>> best(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const CauseQuery& q = candidates[c];
    Verdict v = predicate(q);
    if (!v.holds())
      throw NoWitness("'" + q.cause_var + " = " +
                      std::to_string(q.cause_value) + "' is not a cause of '" +
                      q.effect_var + " = " + std::to_string(q.effect_value) +
                      "' here, so it cannot be graded");
    std::vector<std::size_t> all;
    all.reserve(v.witnesses.size());
    for (const Witness& w : v.witnesses)
      all.push_back(carrier_index(order, w.world, q));
    GradedCandidate gc;
    gc.query = q;
    for (std::size_t i : all) {
      bool dominated = false;
      for (std::size_t j : all)
        if (order.order.gt(j, i)) {
          dominated = true;
          break;
        }
      if (!dominated) {
        best[c].push_back(i);
        gc.best_witnesses.push_back(order.worlds[i]);
      }
    }
    gc.verdict = std::move(v);
    g.candidates.push_back(std::move(gc));
  }

  std::vector<WorldSet> rows(candidates.size(),
                             WorldSet(candidates.size()));
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = 0; b < candidates.size(); ++b) {
      bool covers = true;
      for (std::size_t wb : best[b]) {
        bool found = false;
        for (std::size_t wa : best[a])
          if (order.order.geq(wa, wb)) {
            found = true;
            break;
          }
        if (!found) {
          covers = false;
          break;
        }
      }
      if (covers) rows[a].set(b);
    }
  g.relation = Preorder::from_rows(std::move(rows));
  return g;
}

}  // namespace excm
