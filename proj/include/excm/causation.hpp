#pragma once

#include <functional>
#include <string>
#include <vector>

#include "excm/model.hpp"
#include "excm/network.hpp"
#include "excm/preorder.hpp"

namespace excm {

// Candidate claim "X = x caused Y = y" posed against a concrete context.
struct CauseQuery {
  CausalModel model;
  Context context;
  std::string cause_var;
  Value cause_value = 0;
  std::string effect_var;
  Value effect_value = 0;
};

enum class VerdictStatus {
  cause,             // some alternative value for X flips Y
  factual_mismatch,  // the context does not realize X = x and Y = y
  no_dependence,     // the facts hold, but Y survives every intervention on X
};

// One way the effect could have come out differently: X set to `alternative`
// and the world the equations then settle into.
struct Witness {
  Value alternative = 0;
  World world;
  bool operator==(const Witness&) const = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::no_dependence;
  std::vector<Witness> witnesses;  // nonempty iff status == cause
  [[nodiscard]] bool holds() const { return status == VerdictStatus::cause; }
};

// Counterfactual dependence test: X = x, Y = y must hold in the solved
// context, and some x' != x must drive Y off y once X is pinned to x'. This
// is a sufficient condition for actual causation, not the full definition;
// richer definitions plug in through CausePredicate below.
[[nodiscard]] Verdict actual_cause(const CauseQuery& q);

// Any predicate with this shape can stand in for actual_cause when grading.
// grade() only consumes the witness worlds the predicate returns.
using CausePredicate = std::function<Verdict(const CauseQuery&)>;

struct GradedCandidate {
  CauseQuery query;
  Verdict verdict;
  std::vector<World> best_witnesses;  // maximal witnesses under the order
};

// Candidates ranked by their most normal witnesses. A grades at least as high
// as B when every best witness of B sits at or below some best witness of A;
// with a unique best witness each this is just the world order.
struct Grading {
  std::vector<GradedCandidate> candidates;
  Preorder relation;  // over candidate indices
};

[[nodiscard]] Grading grade(const std::vector<CauseQuery>& candidates,
                            const NormalityOrder& order,
                            const CausePredicate& predicate = actual_cause);

}  // namespace excm
