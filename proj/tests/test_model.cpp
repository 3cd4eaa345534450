#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "excm/model.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excm;
namespace ex = excm::expr;

TEST_CASE("topological order places parents first") {
  auto m = fixtures::forest_fire_disjunctive();
  CHECK(m.topological_order() == std::vector<int>{0, 1, 2});

  Signature chain({}, {{"Z", {0, 1}}, {"Y", {0, 1}}, {"X", {0, 1}}});
  auto cm = CausalModel::make(chain, {{"Y", ex::var("X")}, {"Z", ex::var("Y")}});
  // X (index 2) is a root; Y reads X; Z reads Y.
  auto order = cm.topological_order();
  auto pos = [&](int i) {
    return std::find(order.begin(), order.end(), i) - order.begin();
  };
  CHECK(pos(2) < pos(1));
  CHECK(pos(1) < pos(0));
}

TEST_CASE("cyclic equations are rejected with a named cycle") {
  Signature sig({}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  try {
    CausalModel::make(sig, {{"X", ex::var("Y")}, {"Y", ex::var("X")}});
    FAIL("expected CyclicModel");
  } catch (const CyclicModel& e) {
    std::string msg = e.what();
    CHECK(msg.find("X") != std::string::npos);
    CHECK(msg.find("Y") != std::string::npos);
  }
}

TEST_CASE("dependence is semantic: multiplying by zero is not a read") {
  Signature sig({}, {{"Y", {0, 1}}, {"X", {0, 1}}});
  auto m = CausalModel::make(sig, {{"X", ex::mul(ex::var("Y"), ex::constant(0))}});
  CHECK(m.endo_parents(1).empty());

  // The syntactically identical read with *1 is a real edge.
  auto m2 = CausalModel::make(sig, {{"X", ex::mul(ex::var("Y"), ex::constant(1))}});
  CHECK(m2.endo_parents(1) == std::vector<int>{0});

  // Mutual trivial reads do not form a cycle.
  auto m3 = CausalModel::make(
      sig, {{"X", ex::mul(ex::var("Y"), ex::constant(0))},
            {"Y", ex::mul(ex::var("X"), ex::constant(0))}});
  CHECK(m3.topological_order().size() == 2);
}

TEST_CASE("equations leaving the target range are rejected at load") {
  Signature sig({}, {{"A", {0, 1}}, {"B", {0, 1}}, {"S", {0, 1}}});
  CHECK_THROWS_AS(
      CausalModel::make(sig, {{"S", ex::add(ex::var("A"), ex::var("B"))}}),
      ValueOutOfRange);
  // Same expression is fine once the range can hold the sum.
  Signature wide({}, {{"A", {0, 1}}, {"B", {0, 1}}, {"S", {0, 1, 2}}});
  CHECK_NOTHROW(
      CausalModel::make(wide, {{"S", ex::add(ex::var("A"), ex::var("B"))}}));
}

TEST_CASE("solve: forest fire from the exogenous pair encoding") {
  auto m = fixtures::forest_fire_exogenous();
  // U=2 encodes lightning without a match: L=1, M=0, so the fire happens.
  World w = solve(m, {{"U", 2}});
  CHECK(w == World{1, 0, 1});

  auto conj = fixtures::forest_fire_conjunctive();
  CHECK(solve(conj, {{"L", 1}, {"M", 0}}) == World{1, 0, 0});
  CHECK(solve(conj, {{"L", 1}, {"M", 1}}) == World{1, 1, 1});
}

TEST_CASE("solve: six of eleven votes carry the majority") {
  auto m = fixtures::voting_model();
  CHECK(solve(m, fixtures::votes(6)).back() == 1);
  CHECK(solve(m, fixtures::votes(5)).back() == 0);
}

TEST_CASE("solve validates its context") {
  auto m = fixtures::forest_fire_disjunctive();
  CHECK_THROWS_AS(solve(m, {{"L", 1}}), InvalidContext);       // M missing
  CHECK_THROWS_AS(solve(m, {{"L", 3}, {"M", 0}}), ValueOutOfRange);
  CHECK_THROWS_AS(solve(m, {{"L", 1}, {"M", 0}, {"Q", 1}}), UnknownVariable);
  // Entries for equation-bearing variables are allowed and ignored.
  CHECK(solve(m, {{"L", 1}, {"M", 0}, {"F", 0}}) == World{1, 0, 1});
}

TEST_CASE("intervene pins values and leaves the rest alone") {
  auto m = fixtures::forest_fire_exogenous();
  // Both causes active; removing the match still leaves the fire burning.
  auto no_match = intervene(m, {{"M", 0}});
  CHECK(solve(no_match, {{"U", 3}}) == World{1, 0, 1});
  // The original model is untouched.
  CHECK(solve(m, {{"U", 3}}) == World{1, 1, 1});
  // Forcing the fire works even when neither cause is present.
  CHECK(solve(intervene(m, {{"F", 1}}), {{"U", 0}}) == World{0, 0, 1});
  // Repeated intervention on the same variable: the last one wins.
  auto twice = intervene(intervene(m, {{"M", 0}}), {{"M", 1}});
  CHECK(solve(twice, {{"U", 0}}) == World{0, 1, 1});
}

TEST_CASE("intervene rejects bad targets") {
  auto m = fixtures::forest_fire_exogenous();
  CHECK_THROWS_AS(intervene(m, {{"U", 1}}), UnknownVariable);
  CHECK_THROWS_AS(intervene(m, {{"Q", 1}}), UnknownVariable);
  CHECK_THROWS_AS(intervene(m, {{"F", 7}}), ValueOutOfRange);
}

TEST_CASE("counterfactual dependence: pen outcome depends on either taker") {
  auto m = fixtures::pen_model();
  Context ctx{{"PS", 1}, {"AA", 1}};
  auto d = counterfactually_depends(m, ctx, "PS", "PO");
  CHECK(d.depends);
  CHECK(d.x != d.x_alt);
  CHECK(d.y != d.y_alt);
  CHECK(counterfactually_depends(m, ctx, "AA", "PO").depends);
}

TEST_CASE("counterfactual dependence: margins matter in the vote") {
  auto m = fixtures::voting_model();
  CHECK(counterfactually_depends(m, fixtures::votes(6), "V1", "W").depends);
  CHECK_FALSE(counterfactually_depends(m, fixtures::votes(8), "V1", "W").depends);
}

TEST_CASE("counterfactual dependence: constants depend on nothing") {
  Signature sig({}, {{"X", {0, 1}}, {"Y", {0, 1}}});
  auto m = CausalModel::make(sig, {{"Y", ex::constant(1)}});
  CHECK_FALSE(counterfactually_depends(m, {{"X", 0}}, "X", "Y").depends);
  CHECK_THROWS_AS(counterfactually_depends(m, {{"X", 0}}, "Q", "Y"),
                  UnknownVariable);
}

TEST_CASE("enumerate_worlds is lexicographic and capped") {
  std::vector<Variable> five;
  for (int i = 0; i < 5; ++i) five.push_back({"X" + std::to_string(i), {0, 1}});
  CHECK(enumerate_worlds(Signature({}, five)).size() == 32);

  Signature mixed({}, {{"A", {0, 1}}, {"B", {0, 1, 2}}, {"C", {0, 1}}});
  auto ws = enumerate_worlds(mixed);
  CHECK(ws.size() == 12);
  CHECK(ws.front() == World{0, 0, 0});
  CHECK(ws.back() == World{1, 2, 1});

  Signature small({}, {{"A", {0, 1}}, {"B", {0, 1}}, {"C", {0, 1}}});
  auto cube = enumerate_worlds(small);
  CHECK(cube.front() == World{0, 0, 0});
  CHECK(cube.back() == World{1, 1, 1});

  std::vector<Variable> many;
  for (int i = 0; i < 21; ++i) many.push_back({"X" + std::to_string(i), {0, 1}});
  CHECK_THROWS_AS(enumerate_worlds(Signature({}, many)), SpaceTooLarge);
}

TEST_CASE("solve agrees with the exhaustive satisfaction scan") {
  oracle::Rng rng(20260825);
  for (int t = 0; t < 120; ++t) {
    auto rm = oracle::random_binary_model(rng);
    World w = solve(rm.model, rm.context);
    CHECK(satisfies_equations(rm.model, rm.context, w));
    auto hits = oracle::scan_solutions(rm.model, rm.context);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == w);
  }
}

TEST_CASE("solve after intervene keeps the pinned value") {
  oracle::Rng rng(7);
  for (int t = 0; t < 60; ++t) {
    auto rm = oracle::random_binary_model(rng);
    const auto& endo = rm.model.signature().endogenous();
    const std::string& x = endo[oracle::pick(rng, static_cast<int>(endo.size()))].name;
    Value v = oracle::pick(rng, 2);
    auto mi = intervene(rm.model, {{x, v}});
    World w = solve(mi, rm.context);
    CHECK(w[rm.model.signature().endo_index(x)] == v);
    // Equations of untouched variables still hold in the intervened solution.
    for (std::size_t i = 0; i < endo.size(); ++i) {
      int idx = static_cast<int>(i);
      if (endo[i].name == x || !rm.model.has_equation(idx)) continue;
      EvalEnv env = [&](const std::string& n) -> Value {
        if (int e = rm.model.signature().endo_index(n); e >= 0) return w[e];
        return rm.context.at(n);
      };
      CHECK(eval_expr(*rm.model.body(idx), env) == w[i]);
    }
  }
}

TEST_CASE("dependence matches the brute-force oracle") {
  oracle::Rng rng(99);
  for (int t = 0; t < 80; ++t) {
    auto rm = oracle::random_binary_model(rng);
    const auto& endo = rm.model.signature().endogenous();
    for (const auto& x : endo)
      for (const auto& y : endo) {
        if (x.name == y.name) continue;
        bool got = counterfactually_depends(rm.model, rm.context, x.name, y.name).depends;
        CHECK(got == oracle::depends_brute(rm.model, rm.context, x.name, y.name));
      }
  }
}

TEST_CASE("expression rendering round-trips through the obvious forms") {
  auto e = ex::ite(ex::geq(ex::add(ex::var("A"), ex::var("B")), ex::constant(2)),
                   ex::constant(1), ex::mul(ex::var("A"), ex::constant(0)));
  CHECK(expr_to_string(*e) == "if A + B >= 2 then 1 else A * 0");
  auto t = ex::table({"A"}, {{0, 1}}, {1, 0});
  CHECK(expr_to_string(*t) == "table(A) { (0): 1, (1): 0 }");
  auto nested = ex::sub(ex::var("A"), ex::sub(ex::var("B"), ex::var("C")));
  CHECK(expr_to_string(*nested) == "A - (B - C)");
}
