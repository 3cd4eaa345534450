#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "excm/defaults.hpp"
#include "fixtures.hpp"

using namespace excm;
namespace ex = excm::expr;

namespace {

PlausCell cell(const std::string& var, Value v) { return {var, v, {}}; }

PlausCell cell(const std::string& var, Value v,
               std::vector<std::pair<std::string, Value>> given) {
  return {var, v, std::move(given)};
}

using fixtures::chair_spec;

void check_same_order(const NormalityOrder& a, const NormalityOrder& b) {
  REQUIRE(a.worlds == b.worlds);
  for (std::size_t i = 0; i < a.worlds.size(); ++i)
    for (std::size_t j = 0; j < a.worlds.size(); ++j)
      CHECK(a.order.geq(i, j) == b.order.geq(i, j));
}

}  // namespace

TEST_CASE("normal-causality expansion writes one row per table cell") {
  auto r = expand_rule1(fixtures::forest_fire_disjunctive());
  CHECK(r.universe.atoms == std::vector<std::string>{"d_F+", "d_F-"});
  REQUIRE(r.universe.default_pairs.size() == 1);
  CHECK(r.universe.default_pairs[0] == std::make_pair(std::string("d_F+"),
                                                      std::string("d_F-")));
  REQUIRE(r.rows.size() == 8);
  for (const auto& row : r.rows) {
    CHECK(row.var == "F");
    Value conforming = std::max(row.parent_values[0], row.parent_values[1]);
    CHECK(row.atom == (row.value == conforming ? "d_F+" : "d_F-"));
  }
}

TEST_CASE("expansion skips overridden variables") {
  auto r = expand_rule1(fixtures::forest_fire_disjunctive(), {"F"});
  CHECK(r.rows.empty());
  CHECK(r.universe.atoms.empty());
}

TEST_CASE("expansion refuses variables with exogenous parents") {
  CHECK_THROWS_AS(expand_rule1(fixtures::forest_fire_exogenous()),
                  ExogenousParent);
  // Overriding the offending variables sidesteps the rule.
  auto r = expand_rule1(fixtures::forest_fire_exogenous(), {"L", "M"});
  CHECK(r.universe.atoms == std::vector<std::string>{"d_F+", "d_F-"});
}

TEST_CASE("minimality keeps unrelated variables incomparable") {
  AtomUniverse u;
  for (const char* v : {"L", "M", "F"}) {
    std::string base = std::string("d_") + v;
    u.atoms.push_back(base + "+");
    u.atoms.push_back(base + "-");
    u.default_pairs.emplace_back(base + "+", base + "-");
  }
  auto o = apply_rule2(u, {});
  for (const char* a : {"d_L+", "d_M+", "d_F+"})
    for (const char* b : {"d_L+", "d_M+", "d_F+"}) {
      if (std::string(a) == b) continue;
      CHECK_FALSE(o.gt(o.id(a), o.id(b)));
    }
  CHECK(o.gt(o.id("d_L+"), o.id("d_L-")));
  CHECK_FALSE(o.gt(o.id("d_L+"), o.id("d_M-")));

  auto chained = apply_rule2(u, {{"d_L+", "d_M+"}, {"d_M-", "d_L-"}});
  CHECK(chained.gt(chained.id("d_L+"), chained.id("d_M-")));
  CHECK(chained.gt(chained.id("d_M+"), chained.id("d_L-")));

  // A four-atom chain closes end to end regardless of direction.
  auto mirrored = apply_rule2(
      u, {{"d_M+", "d_L+"}, {"d_L+", "d_L-"}, {"d_L-", "d_M-"}});
  CHECK(mirrored.gt(mirrored.id("d_M+"), mirrored.id("d_M-")));

  CHECK_THROWS_AS(apply_rule2(u, {{"d_M-", "d_M+"}}), CyclicAtomOrder);
}

TEST_CASE("compiled succinct fire listing matches the explicit tables") {
  auto fx = fixtures::fire_network();
  auto compiled = compile(fixtures::fire_compact());
  CHECK(compiled.net.total());
  // Binary roots with ordered cells earn the +/- names.
  for (const char* a : {"d_L+", "d_L-", "d_M+", "d_M-", "d_F+", "d_F-"})
    CHECK(compiled.atoms.has(a));
  check_same_order(induced_order(compiled.net, compiled.atoms),
                   induced_order(fx.net, fx.atoms));
}

TEST_CASE("compiled comparable-chain listing matches the explicit tables") {
  auto fx = fixtures::fire_network(/*comparable_chain=*/true);
  auto compiled = compile(fixtures::fire_compact(/*comparable_chain=*/true));
  auto no = induced_order(compiled.net, compiled.atoms);
  CHECK(no.gt({0, 1, 1}, {1, 0, 1}));
  check_same_order(no, induced_order(fx.net, fx.atoms));
}

TEST_CASE("under pure defaults the conforming world is the maximum") {
  auto compiled = compile(fixtures::fire_compact());
  auto no = induced_order(compiled.net, compiled.atoms);
  World best{0, 0, 0};  // most plausible roots, equation satisfied
  for (const auto& w : no.worlds)
    if (w != best) CHECK(no.gt(best, w));
}

TEST_CASE("compilation is independent of declaration order") {
  auto spec = chair_spec();
  auto flipped = spec;
  std::reverse(flipped.chains.begin(), flipped.chains.end());
  std::reverse(flipped.overrides["PS"].rows.begin(),
               flipped.overrides["PS"].rows.end());
  auto a = compile(spec);
  auto b = compile(flipped);
  CHECK(a.atoms.names() == b.atoms.names());
  for (AtomId x = 0; x < static_cast<AtomId>(a.atoms.size()); ++x)
    for (AtomId y = 0; y < static_cast<AtomId>(a.atoms.size()); ++y)
      CHECK(a.atoms.gt(x, y) == b.atoms.gt(x, y));
  check_same_order(induced_order(a.net, a.atoms),
                   induced_order(b.net, b.atoms));
}

TEST_CASE("overrides split the cpt structure from the causal structure") {
  auto compiled = compile(chair_spec());
  // The equation layer has no edge into PS; the table layer does.
  CHECK(compiled.net.parents_of("PS") == std::vector<std::string>{"CP"});
  CHECK(compiled.atoms.has("PS.follows"));
  AtomId follows = compiled.net.entry("PS", 0, {1});
  AtomId defies = compiled.net.entry("PS", 1, {1});
  CHECK(compiled.atoms.name(follows) == "PS.follows");
  CHECK(compiled.atoms.gt(follows, defies));
  // Unrelated override cells stay incomparable under minimality.
  AtomId declines = compiled.net.entry("PS", 0, {0});
  CHECK_FALSE(compiled.atoms.gt(follows, declines));
  CHECK_FALSE(compiled.atoms.gt(declines, follows));

  // Worlds are (CP, PS, AA, PO); taking the pen despite the policy is the
  // less normal of the two policy worlds.
  auto no = induced_order(compiled.net, compiled.atoms);
  CHECK(no.gt({1, 0, 0, 0}, {1, 1, 0, 0}));
}

TEST_CASE("roots without declarations are rejected") {
  auto spec = fixtures::fire_compact();
  spec.chains.pop_back();  // drop the M declaration
  CHECK_THROWS_AS(compile(spec), MissingRootTable);
}

TEST_CASE("non-binary and unordered roots get positional atom names") {
  Signature sig({}, {{"X", {0, 1, 2}}, {"Y", {0, 1}}});
  CompactSpec spec;
  spec.model = CausalModel::make(sig, {});
  spec.chains.push_back({cell("X", 0), cell("X", 1)});
  spec.chains.push_back({cell("Y", 0)});  // declared, never compared
  auto compiled = compile(spec);
  CHECK(compiled.atoms.has("d_X(0)"));
  CHECK(compiled.atoms.has("d_X(2)"));
  CHECK(compiled.atoms.gt(compiled.atoms.id("d_X(0)"),
                          compiled.atoms.id("d_X(1)")));
  CHECK_FALSE(compiled.atoms.gt(compiled.atoms.id("d_X(0)"),
                                compiled.atoms.id("d_X(2)")));
  CHECK(compiled.atoms.has("d_Y(0)"));
  CHECK(compiled.atoms.has("d_Y(1)"));
}

TEST_CASE("chains may reference equation-derived cells in any parent order") {
  auto spec = fixtures::fire_compact();
  spec.chains.push_back({cell("F", 1, {{"M", 0}, {"L", 1}}), cell("M", 0)});
  auto compiled = compile(spec);
  // The referenced cell holds d_F+ (1 = max(1,0)), so d_F+ > d_M+ now.
  CHECK(compiled.atoms.gt(compiled.atoms.id("d_F+"),
                          compiled.atoms.id("d_M+")));
}

TEST_CASE("a comparison collapsing to one atom is a cycle") {
  auto spec = fixtures::fire_compact();
  // Both cells conform to the equation, so both resolve to d_F+.
  spec.chains.push_back({cell("F", 1, {{"L", 1}, {"M", 0}}),
                         cell("F", 1, {{"L", 0}, {"M", 1}})});
  CHECK_THROWS_AS(compile(spec), CyclicAtomOrder);
}

TEST_CASE("bad compact listings fail with the right diagnostics") {
  auto base = fixtures::fire_compact();

  auto unknown_var = base;
  unknown_var.chains.push_back({cell("Z", 0), cell("Z", 1)});
  CHECK_THROWS_AS(compile(unknown_var), UnknownVariable);

  auto bad_value = base;
  bad_value.chains.push_back({cell("L", 7), cell("L", 1)});
  CHECK_THROWS_AS(compile(bad_value), ValueOutOfRange);

  auto unconditional_eq_cell = base;
  unconditional_eq_cell.chains.push_back({cell("F", 1), cell("L", 1)});
  CHECK_THROWS_AS(compile(unconditional_eq_cell), InvalidModel);

  auto non_parent = base;
  non_parent.chains.push_back(
      {cell("F", 1, {{"L", 1}, {"F", 0}}), cell("L", 1)});
  CHECK_THROWS_AS(compile(non_parent), InvalidModel);

  CompactSpec exo_cell;
  exo_cell.model = fixtures::forest_fire_exogenous();
  CptOverride flat;
  flat.rows = {{0, {}, "hi"}, {1, {}, "lo"}};
  exo_cell.overrides["L"] = flat;
  exo_cell.overrides["M"] = flat;
  exo_cell.chains.push_back({cell("U", 0), cell("U", 1)});
  CHECK_THROWS_AS(compile(exo_cell), InvalidModel);
}

TEST_CASE("bad overrides fail with the right diagnostics") {
  auto spec = chair_spec();
  spec.overrides["PS"].rows.pop_back();
  CHECK_THROWS_AS(compile(spec), MissingTableEntry);

  spec = chair_spec();
  spec.overrides["ZZ"] = spec.overrides["PS"];
  CHECK_THROWS_AS(compile(spec), UnknownVariable);

  spec = chair_spec();
  spec.overrides["PS"].rows[0].given = {{"AA", 1}};
  CHECK_THROWS_AS(compile(spec), InvalidModel);

  spec = chair_spec();
  spec.overrides["PS"].rows[0].given = {{"CP", 1}, {"CP", 0}};
  CHECK_THROWS_AS(compile(spec), DuplicateDeclaration);

  spec = chair_spec();
  spec.overrides["PS"].rows[0].value = 9;
  CHECK_THROWS_AS(compile(spec), ValueOutOfRange);

  spec = chair_spec();
  spec.overrides["PS"].parents = {"CP", "CP"};
  CHECK_THROWS_AS(compile(spec), DuplicateDeclaration);

  CompactSpec exo;
  exo.model = fixtures::forest_fire_exogenous();
  CptOverride ov;
  ov.parents = {"U"};
  exo.overrides["L"] = ov;
  CHECK_THROWS_AS(compile(exo), ExogenousParent);
}

TEST_CASE("models with equations everywhere need no declarations") {
  Signature sig({}, {{"A", {0, 1}}, {"B", {0, 1}}});
  CompactSpec spec;
  spec.model = CausalModel::make(
      sig, {{"A", ex::constant(1)}, {"B", ex::var("A")}});
  auto compiled = compile(spec);
  CHECK(compiled.net.total());
  // The constant equation's conforming value carries the plus atom.
  CHECK(compiled.atoms.name(compiled.net.entry("A", 1, {})) == "d_A+");
  CHECK(compiled.atoms.name(compiled.net.entry("B", 0, {0})) == "d_B+");
  CHECK(compiled.atoms.name(compiled.net.entry("B", 1, {0})) == "d_B-");
}
