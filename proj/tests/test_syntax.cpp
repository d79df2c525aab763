#include <doctest.h>

#include <functional>

#include "flif/eval.hpp"
#include "flif/oracle.hpp"
#include "flif/parser.hpp"
#include "flif/printer.hpp"
#include "helpers.hpp"

using namespace flif;
using namespace flif::testing;

TEST_CASE("parse_flif: bus/train composition") {
  FlifPtr e = parse_flif("B(x;y) ; T(y;x)");
  FlifPtr expected = comp(rel_atom("B", {"x"}, {"y"}), rel_atom("T", {"y"}, {"x"}));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("parse_flif: composition binds tighter than set operations") {
  FlifPtr e = parse_flif("R(;x) | S(;y) ; T(;z)");
  FlifPtr expected = flif_union(
      rel_atom("R", {}, {"x"}),
      comp(rel_atom("S", {}, {"y"}), rel_atom("T", {}, {"z"})));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("parse_flif: set operations associate to the left") {
  FlifPtr e = parse_flif("a(;) | b(;) - c(;)");
  FlifPtr expected = diff(flif_union(rel_atom("a", {}, {}), rel_atom("b", {}, {})),
                          rel_atom("c", {}, {}));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("parse_flif: negation example from the executable-FO section") {
  FlifPtr e = parse_flif("(u:=\"42\") - R(x;u);(u=y);(u:=\"42\")");
  FlifPtr expected =
      diff(const_assign("u", "42"),
           comp(comp(rel_atom("R", {"x"}, {"u"}), eq_test("u", "y")),
                const_assign("u", "42")));
  CHECK(structurally_equal(e, expected));
}

TEST_CASE("parse_flif: intersection sugar desugars to double difference") {
  FlifPtr e = parse_flif("R(x;y) & S(x;y)");
  FlifPtr a = rel_atom("R", {"x"}, {"y"});
  FlifPtr b = rel_atom("S", {"x"}, {"y"});
  CHECK(structurally_equal(e, diff(a, diff(a, b))));
}

TEST_CASE("parse_flif: errors carry positions") {
  CHECK_THROWS_AS(parse_flif("R(x;"), SyntaxError);
  CHECK_THROWS_AS(parse_flif("R(x;y) ;"), SyntaxError);
  CHECK_THROWS_AS(parse_flif("R(\"1\";y)"), ConstantPlacementError);
  CHECK_THROWS_AS(parse_flif(""), SyntaxError);
}

TEST_CASE("parse_fo: friends formula is a left-nested conjunction chain") {
  FoPtr f = parse_fo("F(x;y1) & F(x;y2) & F(y1;z) & F(y2;z) & !(y1=y2)");
  FoPtr expected = fo_and(
      fo_and(fo_and(fo_and(fo_rel("F", {"x"}, {"y1"}),
                           fo_rel("F", {"x"}, {"y2"})),
                    fo_rel("F", {"y1"}, {"z"})),
             fo_rel("F", {"y2"}, {"z"})),
      fo_not(fo_eq("y1", "y2")));
  CHECK(structurally_equal(f, expected));
}

TEST_CASE("parse_fo: existential quantification") {
  CHECK(structurally_equal(parse_fo("exists y. R(x;y)"),
                           fo_exists("y", fo_rel("R", {"x"}, {"y"}))));
  // parses fine; executability is a separate check
  CHECK(structurally_equal(parse_fo("exists x. R(x;y)"),
                           fo_exists("x", fo_rel("R", {"x"}, {"y"}))));
}

TEST_CASE("parse_fo: precedence and constants") {
  FoPtr f = parse_fo("!x = \"1\" & R(x;y) || S(x;)");
  FoPtr expected = fo_or(
      fo_and(fo_not(fo_eq_const("x", "1")), fo_rel("R", {"x"}, {"y"})),
      fo_rel("S", {"x"}, {}));
  CHECK(structurally_equal(f, expected));
  CHECK_THROWS_AS(parse_fo("R(\"c\";y)"), ConstantPlacementError);
}

TEST_CASE("parse_fo: hygiene renames shadowing binders") {
  FoPtr f = parse_fo("R(x;y) & (exists y. S(y;z) & (exists z. T(z;)))");
  VarSet bound;
  // collect bound variables
  std::function<void(const FoPtr&)> walk = [&](const FoPtr& g) {
    if (auto* ex = std::get_if<FoExists>(&g->node)) {
      bound.insert(ex->var);
      walk(ex->body);
    } else if (auto* a = std::get_if<FoAnd>(&g->node)) {
      walk(a->lhs);
      walk(a->rhs);
    } else if (auto* o = std::get_if<FoOr>(&g->node)) {
      walk(o->lhs);
      walk(o->rhs);
    } else if (auto* n = std::get_if<FoNot>(&g->node)) {
      walk(n->body);
    }
  };
  walk(f);
  VarSet free = fo_free_vars(f);
  for (const VarName& b : bound) CHECK(!free.count(b));
  CHECK(free == VarSet{"x", "y", "z"});
}

TEST_CASE("print/parse round-trip on the paper composition") {
  FlifPtr e = parse_flif("B(x;y) ; T(y;x)");
  CHECK(structurally_equal(parse_flif(print_flif(e)), e));
  CHECK(print_flif(comp(rel_atom("a", {}, {}), rel_atom("b", {}, {}))) ==
        "a(;) ; b(;)");
}

TEST_CASE("print/parse round-trip on 1000 random FLIF ASTs") {
  GenConfig cfg;
  Rng rng(7);
  auto [schema, db] = gen_instance(cfg, rng);
  for (int i = 0; i < 1000; ++i) {
    FlifPtr e = gen_flif(cfg, schema, rng);
    FlifPtr back = parse_flif(print_flif(e));
    CHECK(structurally_equal(back, e));
  }
}

namespace {
FoPtr gen_fo(Rng& rng, int depth) {
  std::vector<VarName> pool{"x", "y", "z"};
  auto var = [&] { return pool[rng() % pool.size()]; };
  switch (depth == 0 ? rng() % 3 : rng() % 7) {
  case 0: return fo_rel("R", {var()}, {var()});
  case 1: return fo_eq(var(), var());
  case 2: return fo_eq_const(var(), std::to_string(rng() % 3));
  case 3: return fo_and(gen_fo(rng, depth - 1), gen_fo(rng, depth - 1));
  case 4: return fo_or(gen_fo(rng, depth - 1), gen_fo(rng, depth - 1));
  case 5: return fo_not(gen_fo(rng, depth - 1));
  default: return fo_exists(var(), gen_fo(rng, depth - 1));
  }
}
} // namespace

TEST_CASE("print/parse round-trip on 1000 random FO ASTs") {
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    // round-trip is stated for hygienic trees (the parser normalizes)
    FoPtr f = hygiene_normalize(gen_fo(rng, 3));
    CHECK(structurally_equal(parse_fo(print_fo(f)), f));
  }
}

TEST_CASE("apply_renaming replaces occurrences, identity off support") {
  Renaming theta(std::map<VarName, VarName>{{"y", "y1"}});
  FlifPtr e = rel_atom("R", {"x"}, {"y"});
  CHECK(structurally_equal(apply_renaming(theta, e),
                           rel_atom("R", {"x"}, {"y1"})));

  Renaming ident{};
  FlifPtr g = parse_flif("R(x;y) ; (y:=z) - S(;y)");
  CHECK(structurally_equal(apply_renaming(ident, g), g));
}

TEST_CASE("swap renamings are involutions") {
  Renaming swap = Renaming::swap_pairs({{"y", "y1"}});
  FlifPtr e = parse_flif("R(y;y1) ; (y=y1)");
  CHECK(structurally_equal(apply_renaming(swap, apply_renaming(swap, e)), e));
}

TEST_CASE("renaming lemma: pairs transport along variable permutations") {
  // (nu1, nu2) in sem(alpha) iff (nu1 . theta, nu2 . theta) in
  // sem(theta(alpha)); checked by brute enumeration on a small instance.
  auto db = bus_train();
  VarSet v{"x", "y", "q"};
  std::set<Constant> dom{"1", "2", "3", "5"};
  Renaming theta = Renaming::swap_pairs({{"x", "q"}});
  for (const char* text : {"B(x;y)", "B(x;y) ; T(y;x)", "(x:=y) | (q:=y)"}) {
    FlifPtr e = parse_flif(text);
    FlifPtr renamed = apply_renaming(theta, e);
    PairSet before = brute_pairs(e, v, *db, dom);
    PairSet after = brute_pairs(renamed, v, *db, dom);
    PairSet transported;
    for (const auto& [nu1, nu2] : before) {
      // nu . theta reads the new variable's value from theta(variable)
      auto compose = [&](const Valuation& nu) {
        Valuation out;
        for (const VarName& w : v) out = out.extend(w, nu(theta(w)));
        return out;
      };
      transported.emplace(compose(nu1), compose(nu2));
    }
    CHECK(after == transported);
  }
}

TEST_CASE("renamings reject non-injective mappings") {
  CHECK_THROWS_AS(Renaming(std::map<VarName, VarName>{{"x", "z"}, {"y", "z"}}),
                  BadRenamingError);
}
