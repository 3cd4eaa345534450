#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "excm/errors.hpp"
#include "excm/radix.hpp"

namespace excm {

struct Variable {
  std::string name;
  std::vector<Value> range;  // ordered, distinct, nonempty
  bool operator==(const Variable&) const = default;
};

// Variable signature: disjoint exogenous and endogenous name spaces.
// The exogenous set may be empty.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous);

  [[nodiscard]] const std::vector<Variable>& exogenous() const { return exo_; }
  [[nodiscard]] const std::vector<Variable>& endogenous() const { return endo_; }
  [[nodiscard]] int exo_index(const std::string& name) const;   // -1 if absent
  [[nodiscard]] int endo_index(const std::string& name) const;  // -1 if absent
  [[nodiscard]] bool has(const std::string& name) const;
  [[nodiscard]] const std::vector<Value>& range_of(const std::string& name) const;

  bool operator==(const Signature& other) const {
    return exo_ == other.exo_ && endo_ == other.endo_;
  }

 private:
  std::vector<Variable> exo_;
  std::vector<Variable> endo_;
  std::map<std::string, int> exo_by_name_;
  std::map<std::string, int> endo_by_name_;
};

// A world assigns a value to every endogenous variable, in signature order.
// Worlds are free assignments: they need not satisfy the equations.
using World = std::vector<Value>;

// Assignment of values to exogenous variables and input roots, by name.
using Context = std::map<std::string, Value>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Equation right-hand sides: integer arithmetic, min/max, 0/1-valued
// comparisons, if-then-else, and dense lookup tables.
struct Expr {
  enum class Kind { constant, var, add, sub, mul, min, max, eq, geq, ite, table };
  Kind kind = Kind::constant;
  Value value = 0;             // constant
  std::string name;            // var
  std::vector<ExprPtr> args;   // operands; ite holds (cond, then, else)

  // table: outputs indexed by RadixSpace over the argument ranges
  std::vector<std::string> table_args;
  RadixSpace table_space;
  std::vector<Value> table_out;
};

namespace expr {
ExprPtr constant(Value v);
ExprPtr var(std::string name);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr min(ExprPtr a, ExprPtr b);
ExprPtr max(ExprPtr a, ExprPtr b);
ExprPtr eq(ExprPtr a, ExprPtr b);   // 1 if equal else 0
ExprPtr geq(ExprPtr a, ExprPtr b);  // 1 if a >= b else 0
ExprPtr ite(ExprPtr cond, ExprPtr then_, ExprPtr else_);  // cond != 0 picks then_
ExprPtr table(std::vector<std::string> args,
              std::vector<std::vector<Value>> arg_ranges,
              std::vector<Value> outputs);
}  // namespace expr

using EvalEnv = std::function<Value(const std::string&)>;
[[nodiscard]] Value eval_expr(const Expr& e, const EvalEnv& env);
// Names appearing in the expression (syntactic, not necessarily load-bearing).
void collect_refs(const Expr& e, std::set<std::string>& out);
// Renders in the model-file expression grammar.
[[nodiscard]] std::string expr_to_string(const Expr& e);

// Acyclic structural-equation model. Every endogenous variable carries at most
// one equation; those without one are input roots whose values come from the
// context. A variable X depends on Z only if the equation for X nontrivially
// reads Z: some two assignments differing solely in Z change the output. The
// dependency graph over these edges must be acyclic; construction fails with
// CyclicModel naming a cycle otherwise. Equations whose evaluation can leave
// the target's range are rejected at construction (checked exhaustively).
class CausalModel {
 public:
  CausalModel() = default;  // empty model; make() is the checked entry point
  static CausalModel make(Signature sig,
                          std::map<std::string, ExprPtr> equations);

  [[nodiscard]] const Signature& signature() const { return sig_; }
  [[nodiscard]] bool has_equation(int endo_index) const {
    return bodies_[endo_index] != nullptr;
  }
  [[nodiscard]] const ExprPtr& body(int endo_index) const { return bodies_[endo_index]; }
  // Endogenous variables the equation of endo_index nontrivially reads.
  [[nodiscard]] const std::vector<int>& endo_parents(int endo_index) const {
    return endo_parents_[endo_index];
  }
  // Exogenous variables it nontrivially reads.
  [[nodiscard]] const std::vector<int>& exo_parents(int endo_index) const {
    return exo_parents_[endo_index];
  }
  // Endogenous indices in dependency order (parents first). Deterministic.
  [[nodiscard]] const std::vector<int>& topological_order() const { return topo_; }

 private:
  Signature sig_;
  std::vector<ExprPtr> bodies_;  // per endogenous index; null = input root
  std::vector<std::vector<int>> endo_parents_;
  std::vector<std::vector<int>> exo_parents_;
  std::vector<int> topo_;
};

// Unique solution of the equations under the context. The context must cover
// every exogenous variable and every input root; entries for equation-bearing
// variables are ignored.
[[nodiscard]] World solve(const CausalModel& m, const Context& ctx);

// True when w agrees with every equation (and with the context on roots).
[[nodiscard]] bool satisfies_equations(const CausalModel& m, const Context& ctx,
                                       const World& w);

// Model with the listed endogenous variables pinned to constants. Value
// semantics: the input model is untouched.
[[nodiscard]] CausalModel intervene(const CausalModel& m,
                                    const std::map<std::string, Value>& settings);

struct Dependence {
  bool depends = false;
  // Witnessing interventions and effect values when depends holds.
  Value x = 0, x_alt = 0, y = 0, y_alt = 0;
};

// Whether Y's solved value reacts to interventions on X, by exhaustive search
// over range(X). Deterministic witness: first differing pair in range order.
[[nodiscard]] Dependence counterfactually_depends(const CausalModel& m,
                                                  const Context& ctx,
                                                  const std::string& x,
                                                  const std::string& y);

inline constexpr std::size_t default_world_cap = std::size_t{1} << 20;

// All worlds in lexicographic order (first endogenous variable most
// significant). Throws SpaceTooLarge above the cap.
[[nodiscard]] std::vector<World> enumerate_worlds(
    const Signature& sig, std::size_t cap = default_world_cap);

[[nodiscard]] std::string world_to_string(const Signature& sig, const World& w);

}  // namespace excm
