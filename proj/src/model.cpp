#include "excm/model.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace excm {

Signature::Signature(std::vector<Variable> exogenous,
                     std::vector<Variable> endogenous)
    : exo_(std::move(exogenous)), endo_(std::move(endogenous)) {
  auto check = [](const Variable& v) {
    if (v.range.empty())
      throw InvalidModel("variable '" + v.name + "' has an empty range");
    for (std::size_t i = 0; i < v.range.size(); ++i)
      for (std::size_t j = i + 1; j < v.range.size(); ++j)
        if (v.range[i] == v.range[j])
          throw InvalidModel("variable '" + v.name + "' repeats value " +
                             std::to_string(v.range[i]));
  };
  for (std::size_t i = 0; i < exo_.size(); ++i) {
    check(exo_[i]);
    if (!exo_by_name_.emplace(exo_[i].name, static_cast<int>(i)).second)
      throw DuplicateDeclaration("variable '" + exo_[i].name + "' declared twice");
  }
  for (std::size_t i = 0; i < endo_.size(); ++i) {
    check(endo_[i]);
    if (exo_by_name_.count(endo_[i].name) ||
        !endo_by_name_.emplace(endo_[i].name, static_cast<int>(i)).second)
      throw DuplicateDeclaration("variable '" + endo_[i].name + "' declared twice");
  }
}

int Signature::exo_index(const std::string& name) const {
  auto it = exo_by_name_.find(name);
  return it == exo_by_name_.end() ? -1 : it->second;
}

int Signature::endo_index(const std::string& name) const {
  auto it = endo_by_name_.find(name);
  return it == endo_by_name_.end() ? -1 : it->second;
}

bool Signature::has(const std::string& name) const {
  return exo_index(name) >= 0 || endo_index(name) >= 0;
}

const std::vector<Value>& Signature::range_of(const std::string& name) const {
  if (int i = exo_index(name); i >= 0) return exo_[i].range;
  if (int i = endo_index(name); i >= 0) return endo_[i].range;
  throw UnknownVariable("unknown variable '" + name + "'");
}

namespace expr {

namespace {
ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.args = {std::move(a), std::move(b)};
  return node(std::move(e));
}
}  // namespace

ExprPtr constant(Value v) {
  Expr e;
  e.kind = Expr::Kind::constant;
  e.value = v;
  return node(std::move(e));
}

ExprPtr var(std::string name) {
  Expr e;
  e.kind = Expr::Kind::var;
  e.name = std::move(name);
  return node(std::move(e));
}

ExprPtr add(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::mul, std::move(a), std::move(b)); }
ExprPtr min(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::min, std::move(a), std::move(b)); }
ExprPtr max(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::max, std::move(a), std::move(b)); }
ExprPtr eq(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::eq, std::move(a), std::move(b)); }
ExprPtr geq(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::geq, std::move(a), std::move(b)); }

ExprPtr ite(ExprPtr cond, ExprPtr then_, ExprPtr else_) {
  Expr e;
  e.kind = Expr::Kind::ite;
  e.args = {std::move(cond), std::move(then_), std::move(else_)};
  return node(std::move(e));
}

ExprPtr table(std::vector<std::string> args,
              std::vector<std::vector<Value>> arg_ranges,
              std::vector<Value> outputs) {
  if (args.size() != arg_ranges.size())
    throw InvalidModel("table argument/range count mismatch");
  Expr e;
  e.kind = Expr::Kind::table;
  e.table_args = std::move(args);
  e.table_space = RadixSpace(std::move(arg_ranges));
  if (e.table_space.overflowed() ||
      outputs.size() != e.table_space.size())
    throw InvalidModel("table has " + std::to_string(outputs.size()) +
                       " outputs, expected " + std::to_string(e.table_space.size()));
  e.table_out = std::move(outputs);
  return node(std::move(e));
}

}  // namespace expr

Value eval_expr(const Expr& e, const EvalEnv& env) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::constant: return e.value;
    case K::var: return env(e.name);
    case K::add: return eval_expr(*e.args[0], env) + eval_expr(*e.args[1], env);
    case K::sub: return eval_expr(*e.args[0], env) - eval_expr(*e.args[1], env);
    case K::mul: return eval_expr(*e.args[0], env) * eval_expr(*e.args[1], env);
    case K::min: return std::min(eval_expr(*e.args[0], env), eval_expr(*e.args[1], env));
    case K::max: return std::max(eval_expr(*e.args[0], env), eval_expr(*e.args[1], env));
    case K::eq: return eval_expr(*e.args[0], env) == eval_expr(*e.args[1], env) ? 1 : 0;
    case K::geq: return eval_expr(*e.args[0], env) >= eval_expr(*e.args[1], env) ? 1 : 0;
    case K::ite:
      return eval_expr(*e.args[0], env) != 0 ? eval_expr(*e.args[1], env)
                                             : eval_expr(*e.args[2], env);
    case K::table: {
      std::vector<Value> vals(e.table_args.size());
      for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = env(e.table_args[k]);
      return e.table_out[e.table_space.encode(vals)];
    }
  }
  assert(false);
  return 0;
}

void collect_refs(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::var) out.insert(e.name);
  for (const auto& n : e.table_args) out.insert(n);
  for (const auto& a : e.args) collect_refs(*a, out);
}

namespace {

// Precedence levels of the file grammar: if-then-else 0, comparisons 1, +/- 2,
// * 3, atoms 4.
int prec_of(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::ite: return 0;
    case K::eq:
    case K::geq: return 1;
    case K::add:
    case K::sub: return 2;
    case K::mul: return 3;
    default: return 4;
  }
}

void render(const Expr& e, int parent_prec, std::string& out) {
  using K = Expr::Kind;
  int p = prec_of(e);
  bool parens = p < parent_prec;
  if (parens) out += "(";
  switch (e.kind) {
    case K::constant: out += std::to_string(e.value); break;
    case K::var: out += e.name; break;
    case K::add:
    case K::sub:
      render(*e.args[0], 2, out);
      out += e.kind == K::add ? " + " : " - ";
      render(*e.args[1], 3, out);
      break;
    case K::mul:
      render(*e.args[0], 3, out);
      out += " * ";
      render(*e.args[1], 4, out);
      break;
    case K::eq:
    case K::geq:
      render(*e.args[0], 2, out);
      out += e.kind == K::eq ? " == " : " >= ";
      render(*e.args[1], 2, out);
      break;
    case K::ite:
      out += "if ";
      render(*e.args[0], 1, out);
      out += " then ";
      render(*e.args[1], 1, out);
      out += " else ";
      render(*e.args[2], 0, out);
      break;
    case K::min:
    case K::max:
      out += e.kind == K::min ? "min(" : "max(";
      render(*e.args[0], 0, out);
      out += ", ";
      render(*e.args[1], 0, out);
      out += ")";
      break;
    case K::table: {
      out += "table(";
      for (std::size_t k = 0; k < e.table_args.size(); ++k) {
        if (k) out += ", ";
        out += e.table_args[k];
      }
      out += ") { ";
      std::vector<Value> vals;
      for (std::size_t i = 0; i < e.table_out.size(); ++i) {
        if (i) out += ", ";
        e.table_space.decode_into(i, vals);
        out += "(";
        for (std::size_t k = 0; k < vals.size(); ++k) {
          if (k) out += ", ";
          out += std::to_string(vals[k]);
        }
        out += "): " + std::to_string(e.table_out[i]);
      }
      out += " }";
      break;
    }
  }
  if (parens) out += ")";
}

}  // namespace

std::string expr_to_string(const Expr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

namespace {

struct Analysis {
  std::vector<int> endo_parents;
  std::vector<int> exo_parents;
};

// Exhaustively evaluates the equation over the ranges of its referenced
// variables: rejects out-of-range outputs and keeps only variables whose value
// can change the output (nontrivial reads).
Analysis analyze_equation(const Signature& sig, const std::string& target,
                          const Expr& body) {
  std::set<std::string> refs;
  collect_refs(body, refs);
  std::vector<std::string> names(refs.begin(), refs.end());
  std::vector<std::vector<Value>> ranges;
  for (const auto& n : names) {
    if (!sig.has(n))
      throw UnknownVariable("equation for '" + target +
                            "' references undeclared name '" + n + "'");
    ranges.push_back(sig.range_of(n));
  }
  RadixSpace space(ranges);
  if (space.overflowed() || space.size() > default_world_cap)
    throw SpaceTooLarge("equation for '" + target +
                        "' reads too many variables to validate exhaustively");

  const auto& target_range = sig.range_of(target);
  std::size_t total = space.size();
  std::vector<Value> outputs(total);
  std::vector<Value> vals;
  for (std::size_t i = 0; i < total; ++i) {
    space.decode_into(i, vals);
    EvalEnv env = [&](const std::string& n) -> Value {
      for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == n) return vals[k];
      assert(false);
      return 0;
    };
    outputs[i] = eval_expr(body, env);
    if (range_index(target_range, outputs[i]) < 0) {
      std::string setting;
      for (std::size_t k = 0; k < names.size(); ++k)
        setting += (k ? ", " : "") + names[k] + "=" + std::to_string(vals[k]);
      throw ValueOutOfRange("equation for '" + target + "' yields " +
                            std::to_string(outputs[i]) + " outside its range at " +
                            (setting.empty() ? "the empty setting" : setting));
    }
  }

  // Per-axis scan: a variable matters iff two settings adjacent along its axis
  // differ in output.
  std::vector<bool> nontrivial(names.size(), false);
  std::size_t stride = 1;
  for (std::size_t k = names.size(); k-- > 0;) {
    std::size_t sz = ranges[k].size();
    for (std::size_t i = 0; i < total && !nontrivial[k]; ++i) {
      std::size_t digit = (i / stride) % sz;
      if (digit + 1 < sz && outputs[i] != outputs[i + stride]) nontrivial[k] = true;
    }
    stride *= sz;
  }

  Analysis a;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (!nontrivial[k]) continue;
    if (int e = sig.endo_index(names[k]); e >= 0)
      a.endo_parents.push_back(e);
    else
      a.exo_parents.push_back(sig.exo_index(names[k]));
  }
  std::sort(a.endo_parents.begin(), a.endo_parents.end());
  std::sort(a.exo_parents.begin(), a.exo_parents.end());
  return a;
}

// A cycle through `remaining` vars, rendered "A -> B -> A".
std::string find_cycle(const Signature& sig,
                       const std::vector<std::vector<int>>& endo_parents,
                       const std::vector<bool>& remaining) {
  int start = -1;
  for (std::size_t i = 0; i < remaining.size(); ++i)
    if (remaining[i]) { start = static_cast<int>(i); break; }
  assert(start >= 0);
  // Walk parent edges within the remaining set; a repeat closes the cycle.
  std::vector<int> path;
  std::vector<int> seen_at(remaining.size(), -1);
  int cur = start;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    int next = -1;
    for (int p : endo_parents[cur])
      if (remaining[p]) { next = p; break; }
    assert(next >= 0);
    cur = next;
  }
  std::string msg;
  for (std::size_t i = seen_at[cur]; i < path.size(); ++i)
    msg += sig.endogenous()[path[i]].name + " -> ";
  msg += sig.endogenous()[cur].name;
  return msg;
}

}  // namespace

CausalModel CausalModel::make(Signature sig,
                              std::map<std::string, ExprPtr> equations) {
  CausalModel m;
  m.sig_ = std::move(sig);
  std::size_t n = m.sig_.endogenous().size();
  m.bodies_.assign(n, nullptr);
  for (auto& [name, body] : equations) {
    int i = m.sig_.endo_index(name);
    if (i < 0)
      throw UnknownVariable("equation target '" + name +
                            "' is not an endogenous variable");
    if (!body) throw InvalidModel("null equation body for '" + name + "'");
    m.bodies_[i] = std::move(body);
  }

  m.endo_parents_.assign(n, {});
  m.exo_parents_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.bodies_[i]) continue;
    Analysis a = analyze_equation(m.sig_, m.sig_.endogenous()[i].name,
                                  *m.bodies_[i]);
    m.endo_parents_[i] = std::move(a.endo_parents);
    m.exo_parents_[i] = std::move(a.exo_parents);
  }

  // Kahn's algorithm, smallest signature index first.
  std::vector<bool> placed(n, false);
  while (m.topo_.size() < n) {
    int pick = -1;
    for (std::size_t i = 0; i < n && pick < 0; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (int p : m.endo_parents_[i])
        if (!placed[p]) { ready = false; break; }
      if (ready) pick = static_cast<int>(i);
    }
    if (pick < 0) {
      std::vector<bool> remaining(n);
      for (std::size_t i = 0; i < n; ++i) remaining[i] = !placed[i];
      throw CyclicModel("cyclic dependency: " +
                        find_cycle(m.sig_, m.endo_parents_, remaining));
    }
    placed[pick] = true;
    m.topo_.push_back(pick);
  }
  return m;
}

namespace {

void validate_context(const CausalModel& m, const Context& ctx) {
  const Signature& sig = m.signature();
  for (const auto& [name, v] : ctx) {
    if (!sig.has(name))
      throw UnknownVariable("context assigns unknown variable '" + name + "'");
    if (range_index(sig.range_of(name), v) < 0)
      throw ValueOutOfRange("context value " + std::to_string(v) +
                            " outside range of '" + name + "'");
  }
  for (const auto& v : sig.exogenous())
    if (!ctx.count(v.name))
      throw InvalidContext("context misses exogenous variable '" + v.name + "'");
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i)
    if (!m.has_equation(static_cast<int>(i)) &&
        !ctx.count(sig.endogenous()[i].name))
      throw InvalidContext("context misses input root '" +
                           sig.endogenous()[i].name + "'");
}

EvalEnv world_env(const CausalModel& m, const Context& ctx, const World& w) {
  return [&m, &ctx, &w](const std::string& name) -> Value {
    if (int i = m.signature().endo_index(name); i >= 0) return w[i];
    auto it = ctx.find(name);
    if (it == ctx.end())
      throw InvalidContext("context misses exogenous variable '" + name + "'");
    return it->second;
  };
}

}  // namespace

World solve(const CausalModel& m, const Context& ctx) {
  validate_context(m, ctx);
  const Signature& sig = m.signature();
  std::size_t n = sig.endogenous().size();
  World w(n);
  // Placeholders keep trivially-read later variables well-defined during
  // evaluation; they cannot influence any output.
  for (std::size_t i = 0; i < n; ++i) w[i] = sig.endogenous()[i].range.front();
  EvalEnv env = world_env(m, ctx, w);
  for (int i : m.topological_order()) {
    if (m.has_equation(i))
      w[i] = eval_expr(*m.body(i), env);
    else
      w[i] = ctx.at(sig.endogenous()[i].name);
  }
  return w;
}

bool satisfies_equations(const CausalModel& m, const Context& ctx,
                         const World& w) {
  const Signature& sig = m.signature();
  EvalEnv env = world_env(m, ctx, w);
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i) {
    int idx = static_cast<int>(i);
    if (m.has_equation(idx)) {
      if (eval_expr(*m.body(idx), env) != w[i]) return false;
    } else {
      auto it = ctx.find(sig.endogenous()[i].name);
      if (it == ctx.end() || it->second != w[i]) return false;
    }
  }
  return true;
}

CausalModel intervene(const CausalModel& m,
                      const std::map<std::string, Value>& settings) {
  const Signature& sig = m.signature();
  for (const auto& [name, v] : settings) {
    int i = sig.endo_index(name);
    if (i < 0) {
      if (sig.exo_index(name) >= 0)
        throw UnknownVariable("cannot intervene on exogenous variable '" + name + "'");
      throw UnknownVariable("cannot intervene on undeclared variable '" + name + "'");
    }
    if (range_index(sig.endogenous()[i].range, v) < 0)
      throw ValueOutOfRange("intervention value " + std::to_string(v) +
                            " outside range of '" + name + "'");
  }
  std::map<std::string, ExprPtr> eqs;
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i) {
    const std::string& name = sig.endogenous()[i].name;
    if (auto it = settings.find(name); it != settings.end())
      eqs[name] = expr::constant(it->second);
    else if (m.has_equation(static_cast<int>(i)))
      eqs[name] = m.body(static_cast<int>(i));
  }
  return CausalModel::make(sig, std::move(eqs));
}

Dependence counterfactually_depends(const CausalModel& m, const Context& ctx,
                                    const std::string& x, const std::string& y) {
  const Signature& sig = m.signature();
  if (sig.endo_index(x) < 0)
    throw UnknownVariable("'" + x + "' is not an endogenous variable");
  int yi = sig.endo_index(y);
  if (yi < 0) throw UnknownVariable("'" + y + "' is not an endogenous variable");

  const auto& range = sig.range_of(x);
  std::vector<Value> ys;
  ys.reserve(range.size());
  for (Value v : range)
    ys.push_back(solve(intervene(m, {{x, v}}), ctx)[yi]);
  for (std::size_t i = 0; i < range.size(); ++i)
    for (std::size_t j = i + 1; j < range.size(); ++j)
      if (ys[i] != ys[j])
        return {true, range[i], range[j], ys[i], ys[j]};
  return {};
}

std::vector<World> enumerate_worlds(const Signature& sig, std::size_t cap) {
  std::vector<std::vector<Value>> ranges;
  for (const auto& v : sig.endogenous()) ranges.push_back(v.range);
  RadixSpace space(std::move(ranges));
  if (space.overflowed() || space.size() > cap)
    throw SpaceTooLarge("world space exceeds cap of " + std::to_string(cap) +
                        " worlds");
  std::vector<World> worlds(space.size());
  for (std::size_t i = 0; i < worlds.size(); ++i) space.decode_into(i, worlds[i]);
  return worlds;
}

std::string world_to_string(const Signature& sig, const World& w) {
  (void)sig;
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  out += ")";
  return out;
}

}  // namespace excm
