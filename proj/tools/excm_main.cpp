// Command line front end: load a model file, run one query, print the
// result on stdout. Diagnostics go to stderr. Exit status 0 means the
// query succeeded, 1 means it ran but came back negative (not a cause,
// an axiom failed, a grading candidate was excluded), 2 means the input
// was unusable.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "excm/axioms.hpp"
#include "excm/causation.hpp"
#include "excm/cost.hpp"
#include "excm/defaults.hpp"
#include "excm/document.hpp"
#include "excm/errors.hpp"
#include "excm/exporters.hpp"
#include "excm/model.hpp"
#include "excm/network.hpp"

namespace {

using namespace excm;

ModelDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

Context named_context(const ModelDocument& doc, const std::string& name) {
  const Context* ctx = doc.find_context(name);
  if (!ctx) throw Error("no context named '" + name + "' in the file");
  return *ctx;
}

// "X=1" -> {"X", 1}
std::pair<std::string, Value> split_assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error("expected NAME=VALUE, got '" + text + "'");
  try {
    std::size_t used = 0;
    std::string rest = text.substr(eq + 1);
    Value v = std::stol(rest, &used);
    if (used != rest.size()) throw Error("");
    return {text.substr(0, eq), v};
  } catch (const std::exception&) {
    throw Error("expected an integer after '=' in '" + text + "'");
  }
}

void print_world(const Signature& sig, const World& w) {
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i)
    std::cout << sig.endogenous()[i].name << " = " << w[i] << "\n";
}

std::string assignments(const Signature& sig, const World& w) {
  std::string out;
  for (std::size_t i = 0; i < sig.endogenous().size(); ++i) {
    if (i) out += ", ";
    out += sig.endogenous()[i].name + " = " + std::to_string(w[i]);
  }
  return out;
}

std::string query_label(const CauseQuery& q) {
  return q.cause_var + " = " + std::to_string(q.cause_value) +
         " is not a cause of " + q.effect_var + " = " +
         std::to_string(q.effect_value);
}

std::string reject_reason(const Verdict& v) {
  return v.status == VerdictStatus::factual_mismatch
             ? "the context does not realize both values"
             : "no intervention on it flips the effect";
}

NormalityOrder order_of(const ModelDocument& doc) {
  CompiledModel compiled = compile(doc.spec);
  return induced_order(compiled.net, compiled.atoms);
}

int run_solve(const std::string& file, const std::string& ctx_name) {
  ModelDocument doc = load(file);
  World w = solve(doc.spec.model, named_context(doc, ctx_name));
  print_world(doc.spec.model.signature(), w);
  return 0;
}

int run_intervene(const std::string& file,
                  const std::vector<std::string>& sets,
                  const std::string& ctx_name) {
  ModelDocument doc = load(file);
  std::map<std::string, Value> settings;
  for (const std::string& s : sets) {
    auto [name, value] = split_assignment(s);
    if (!settings.emplace(name, value).second)
      throw Error("'" + name + "' is set twice");
  }
  CausalModel cut = intervene(doc.spec.model, settings);
  Context ctx =
      ctx_name.empty() ? Context{} : named_context(doc, ctx_name);
  print_world(cut.signature(), solve(cut, ctx));
  return 0;
}

int run_order(const std::string& file, bool dot) {
  NormalityOrder no = order_of(load(file));
  std::cout << (dot ? order_to_dot(no) : order_to_json(no));
  return 0;
}

int run_cause(const std::string& file, const std::string& ctx_name,
              const std::string& cause_s, const std::string& effect_s) {
  ModelDocument doc = load(file);
  auto [xname, xval] = split_assignment(cause_s);
  auto [yname, yval] = split_assignment(effect_s);
  CauseQuery q{doc.spec.model, named_context(doc, ctx_name),
               xname, xval, yname, yval};
  Verdict v = actual_cause(q);
  if (!v.holds()) {
    std::cout << query_label(q) << " (" << reject_reason(v) << ")\n";
    return 1;
  }
  std::cout << q.cause_var << " = " << q.cause_value << " is a cause of "
            << q.effect_var << " = " << q.effect_value << "\n";
  for (const Witness& w : v.witnesses)
    std::cout << "  witness: " << q.cause_var << " = " << w.alternative
              << " yields " << assignments(doc.spec.model.signature(), w.world)
              << "\n";
  return 0;
}

int run_grade(const std::string& file, const std::string& ctx_name,
              const std::string& effect_s,
              const std::vector<std::string>& cand_s, bool dot) {
  ModelDocument doc = load(file);
  Context ctx = named_context(doc, ctx_name);
  auto [yname, yval] = split_assignment(effect_s);

  // keep only actual causes; grading is undefined for the rest
  std::vector<CauseQuery> kept;
  int excluded = 0;
  for (const std::string& s : cand_s) {
    auto [xname, xval] = split_assignment(s);
    CauseQuery q{doc.spec.model, ctx, xname, xval, yname, yval};
    Verdict v = actual_cause(q);
    if (v.holds()) {
      kept.push_back(std::move(q));
    } else {
      std::cerr << "excluded: " << query_label(q) << " ("
                << reject_reason(v) << ")\n";
      ++excluded;
    }
  }
  if (kept.empty()) {
    std::cerr << "nothing to grade\n";
    return 1;
  }
  Grading g = grade(kept, order_of(doc));
  std::cout << (dot ? grading_to_dot(g) : grading_to_json(g));
  return excluded ? 1 : 0;
}

int run_check(const std::string& file, std::size_t cap) {
  NormalityOrder no = order_of(load(file));
  AxiomReport report = check_cpm_axioms(no.order, cap);
  std::cout << axioms_to_json(report);
  return report.all_passed() ? 0 : 1;
}

int run_cost(const std::string& file) {
  ModelDocument doc = load(file);
  std::cout << cost_to_json(representation_cost(doc.spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural equations with a plausibility-ranked normality order"};
  app.require_subcommand(1);

  std::string file, ctx_name, effect;
  std::vector<std::string> sets, candidates;
  std::string cause_s, effect_s;
  bool dot = false, json = false;
  std::size_t cap = 8;

  auto* solve_cmd =
      app.add_subcommand("solve", "solve the equations under a context");
  solve_cmd->add_option("file", file, "model file")->required();
  solve_cmd->add_option("--context", ctx_name, "context name")->required();

  auto* intervene_cmd = app.add_subcommand(
      "intervene", "pin variables to values, then solve");
  intervene_cmd->add_option("file", file, "model file")->required();
  intervene_cmd->add_option("--set", sets, "assignment NAME=VALUE")
      ->required()
      ->take_all();
  intervene_cmd->add_option("--context", ctx_name,
                            "context for the remaining inputs");

  auto* order_cmd = app.add_subcommand(
      "order", "print the normality order over all worlds");
  order_cmd->add_option("file", file, "model file")->required();
  auto* order_dot = order_cmd->add_flag("--dot", dot, "Hasse diagram as DOT");
  order_cmd->add_flag("--json", json, "order as JSON (default)")
      ->excludes(order_dot);

  auto* cause_cmd = app.add_subcommand(
      "cause", "test whether one assignment causes another");
  cause_cmd->add_option("file", file, "model file")->required();
  cause_cmd->add_option("--context", ctx_name, "context name")->required();
  cause_cmd->add_option("cause", cause_s, "candidate cause NAME=VALUE")
      ->required();
  cause_cmd->add_option("effect", effect_s, "effect NAME=VALUE")->required();

  auto* grade_cmd = app.add_subcommand(
      "grade", "rank causes of an effect by witness normality");
  grade_cmd->add_option("file", file, "model file")->required();
  grade_cmd->add_option("--context", ctx_name, "context name")->required();
  grade_cmd->add_option("--effect", effect, "effect NAME=VALUE")->required();
  grade_cmd->add_option("candidates", candidates, "candidate NAME=VALUE")
      ->required();
  grade_cmd->add_flag("--dot", dot, "grading Hasse diagram as DOT");

  auto* check_cmd = app.add_subcommand(
      "check", "verify the plausibility measure axioms on the order");
  check_cmd->add_option("file", file, "model file")->required();
  check_cmd->add_option("--cap", cap, "world limit for the checks")
      ->capture_default_str();

  auto* cost_cmd =
      app.add_subcommand("cost", "representation size figures");
  cost_cmd->add_option("file", file, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(file, ctx_name);
    if (intervene_cmd->parsed()) return run_intervene(file, sets, ctx_name);
    if (order_cmd->parsed()) return run_order(file, dot);
    if (cause_cmd->parsed())
      return run_cause(file, ctx_name, cause_s, effect_s);
    if (grade_cmd->parsed())
      return run_grade(file, ctx_name, effect, candidates, dot);
    if (check_cmd->parsed()) return run_check(file, cap);
    if (cost_cmd->parsed()) return run_cost(file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
