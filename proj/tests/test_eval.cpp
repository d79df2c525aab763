#include <doctest.h>

#include "flif/eval.hpp"
#include "flif/oracle.hpp"
#include "flif/parser.hpp"
#include "flif/printer.hpp"
#include "helpers.hpp"

using namespace flif;
using namespace flif::testing;

TEST_CASE("eval_flif_v on the bus/train composition") {
  auto db = bus_train();
  FlifPtr e = parse_flif("B(x;y) ; T(y;x)");
  VarSet v{"x", "y", "z"};

  ValuationSet out =
      eval_flif_v(e, v, *db, val({{"x", "1"}, {"y", "9"}, {"z", "9"}}));
  CHECK(out == rows(v, {val({{"x", "5"}, {"y", "3"}, {"z", "9"}})}));

  // from x = 3 the train source is empty at value 5
  CHECK(eval_flif_v(e, v, *db, val({{"x", "3"}, {"y", "9"}, {"z", "9"}}))
            .empty());
}

TEST_CASE("eval_flif_v atomic cases keep untouched variables") {
  auto db = bus_train();
  VarSet v{"x", "y", "z"};
  Valuation nu = val({{"x", "3"}, {"y", "7"}, {"z", "7"}});

  CHECK(eval_flif_v(parse_flif("B(x;x)"), v, *db, nu) ==
        rows(v, {val({{"x", "5"}, {"y", "7"}, {"z", "7"}})}));

  Valuation nu2 = val({{"x", "9"}, {"y", "7"}, {"z", "4"}});
  CHECK(eval_flif_v(parse_flif("(x:=z)"), v, *db, nu2) ==
        rows(v, {val({{"x", "4"}, {"y", "7"}, {"z", "4"}})}));

  CHECK(eval_flif_v(parse_flif("(x=z)"), v, *db, nu2).empty());
  CHECK(eval_flif_v(parse_flif("(x=z)"), v, *db,
                    val({{"x", "4"}, {"y", "7"}, {"z", "4"}}))
            .size() == 1);
}

TEST_CASE("eval_flif_v handles repeated output variables") {
  Schema schema;
  schema.declare("P", 3, 1);
  Instance db(schema);
  db.insert("P", {"1", "2", "2"});
  db.insert("P", {"1", "2", "3"});
  db.freeze();
  VarSet v{"x", "y"};
  // P(x; y, y): only tuples whose two output slots agree contribute
  ValuationSet out = eval_flif_v(parse_flif("P(x;y,y)"), v, db,
                                 val({{"x", "1"}, {"y", "9"}}));
  CHECK(out == rows(v, {val({{"x", "1"}, {"y", "2"}})}));
}

TEST_CASE("eval_flif_v validates inputs") {
  auto db = bus_train();
  FlifPtr e = parse_flif("B(x;y)");
  CHECK_THROWS_AS(eval_flif_v(e, {"x"}, *db, val({{"x", "1"}})), SchemaError);
  CHECK_THROWS_AS(eval_flif_v(e, {"x", "y"}, *db, val({{"x", "1"}})),
                  UnboundInputError);
  CHECK_THROWS_AS(
      eval_flif_v(parse_flif("B(x;y,z)"), {"x", "y", "z"}, *db,
                  val({{"x", "1"}, {"y", "1"}, {"z", "1"}})),
      ArityMismatchError);
}

TEST_CASE("eval_flif on the bus/train composition") {
  auto db = bus_train();
  FlifPtr e = parse_flif("B(x;y) ; T(y;x)");
  CHECK(eval_flif(e, *db, val({{"x", "1"}})) ==
        rows({"x", "y"}, {val({{"x", "5"}, {"y", "3"}})}));
  CHECK(eval_flif(e, *db, val({{"x", "2"}})) ==
        rows({"x", "y"}, {val({{"x", "5"}, {"y", "3"}})}));
  CHECK(eval_flif(e, *db, val({{"x", "3"}})).empty());
  CHECK_THROWS_AS(eval_flif(e, *db, val({{"x", "1"}, {"y", "1"}})),
                  InputDomainMismatchError);
}

TEST_CASE("eval_flif swaps values through the Swap relation") {
  Schema schema;
  schema.declare("Swap", 4, 2);
  Instance db(schema);
  db.insert("Swap", {"a", "b", "b", "a"});
  db.freeze();
  FlifPtr e = parse_flif("Swap(x,y;x,y)");
  CHECK(eval_flif(e, db, val({{"x", "a"}, {"y", "b"}})) ==
        rows({"x", "y"}, {val({{"x", "b"}, {"y", "a"}})}));
}

TEST_CASE("eval_flif is independent of the padding constant") {
  GenConfig cfg;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = gen_flif(cfg, schema, rng);
    IoProfile p = io_profile(e);
    Valuation input = gen_valuation(p.inputs, {"1", "2", "3"}, rng);
    CAPTURE(print_flif(e));
    CHECK(eval_flif_padded(e, *db, input, kPadding) ==
          eval_flif_padded(e, *db, input, "other_pad"));
  }
}

TEST_CASE("identity property at the Eval level for io-disjoint expressions") {
  GenConfig cfg;
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = gen_flif_io(cfg, schema, rng);
    IoProfile p = io_profile(e);
    Valuation input = gen_valuation(p.inputs, {"1", "2", "3"}, rng);
    ValuationSet first = eval_flif(e, *db, input);
    for (const Valuation& out : first.rows()) {
      ValuationSet again = eval_flif(e, *db, out.restrict(p.inputs));
      CAPTURE(print_flif(e));
      CHECK(again.contains(out));
    }
  }
}

TEST_CASE("eval_exfo atom semantics") {
  Schema schema;
  schema.declare("R", 2, 1);
  Instance db(schema);
  db.insert("R", {"1", "2"});
  db.insert("R", {"1", "3"});
  db.freeze();
  CHECK(eval_exfo(parse_fo("R(x;y)"), {"x"}, db, val({{"x", "1"}})) ==
        rows({"x", "y"}, {val({{"x", "1"}, {"y", "2"}}),
                          val({{"x", "1"}, {"y", "3"}})}));
  // bound output acts as a filter
  CHECK(eval_exfo(parse_fo("R(x;y)"), {"x", "y"}, db,
                  val({{"x", "1"}, {"y", "3"}}))
            .size() == 1);
  CHECK_THROWS_AS(eval_exfo(parse_fo("!x = y"), {"x"}, db, val({{"x", "1"}})),
                  NotExecutableError);
}

TEST_CASE("eval_exfo connectives") {
  auto db = bus_train();
  // exists projects the bound variable away
  CHECK(eval_exfo(parse_fo("exists y. B(x;y)"), {"x"}, *db,
                  val({{"x", "1"}})) == rows({"x"}, {val({{"x", "1"}})}));
  // negation filters
  CHECK(eval_exfo(parse_fo("!B(x;y)"), {"x", "y"}, *db,
                  val({{"x", "1"}, {"y", "2"}}))
            .empty());
  CHECK(eval_exfo(parse_fo("!B(x;y)"), {"x", "y"}, *db,
                  val({{"x", "1"}, {"y", "5"}}))
            .size() == 1);
  // disjunction unions rows on a shared schema
  CHECK(eval_exfo(parse_fo("B(x;y) || T(x;y)"), {"x"}, *db,
                  val({{"x", "3"}})) ==
        rows({"x", "y"},
             {val({{"x", "3"}, {"y", "5"}})}));
  CHECK(eval_exfo(parse_fo("B(x;y) || T(x;y)"), {"x"}, *db,
                  val({{"x", "1"}})) ==
        rows({"x", "y"},
             {val({{"x", "1"}, {"y", "2"}}), val({{"x", "1"}, {"y", "3"}}),
              val({{"x", "1"}, {"y", "4"}})}));
}

TEST_CASE("eval_exfo values stay within adom, inputs, and constants") {
  GenConfig cfg;
  Rng rng(31);
  auto [schema, db] = gen_instance(cfg, rng);
  std::set<Constant> allowed = db->adom();
  allowed.insert("9");
  for (const auto& [rel, info] : schema.entries()) {
    std::vector<VarName> in, out;
    for (std::size_t i = 0; i < info.input_arity; ++i)
      in.push_back("i" + std::to_string(i));
    for (std::size_t i = 0; i < info.output_arity(); ++i)
      out.push_back("o" + std::to_string(i));
    FoPtr atom = fo_rel(rel, in, out);
    VarSet v(in.begin(), in.end());
    Valuation input = gen_valuation(v, {"9", "1"}, rng);
    ValuationSet result = eval_exfo(atom, v, *db, input);
    for (const Valuation& row : result.rows())
      for (const auto& [var, value] : row.bindings())
        CHECK(allowed.count(value) + (value == "1") > 0);
  }
}

TEST_CASE("friends: executable FO and FLIF routes agree") {
  // F(x;y1) & F(x;y2) & F(y1;z) & F(y2;z) & !(y1=y2)  with V = {x}
  // versus  alpha - (alpha ; (y1=y2)) projected to {x,y1,y2,z}
  FoPtr phi = parse_fo("F(x;y1) & F(x;y2) & F(y1;z) & F(y2;z) & !(y1=y2)");
  FlifPtr alpha =
      parse_flif("F(x;y1) ; F(x;y2) ; F(y1;z) ; F(y2;z1) ; (z = z1)");
  FlifPtr query = diff(alpha, comp(alpha, eq_test("y1", "y2")));

  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    Schema schema;
    schema.declare("F", 2, 1);
    Instance db(schema);
    std::vector<Constant> people{"1", "2", "3", "4"};
    for (int i = 0; i < 8; ++i) {
      const Constant& a = people[rng() % people.size()];
      const Constant& b = people[rng() % people.size()];
      db.insert("F", {a, b});
      db.insert("F", {b, a}); // symmetric
    }
    db.freeze();

    for (const Constant& start : people) {
      ValuationSet viaFo =
          eval_exfo(phi, {"x"}, db, val({{"x", start}}));
      ValuationSet viaFlif = eval_flif(query, db, val({{"x", start}}));
      ValuationSet projected(VarSet{"x", "y1", "y2", "z"});
      for (const Valuation& row : viaFlif.rows())
        projected.insert(row.restrict({"x", "y1", "y2", "z"}));
      CAPTURE(start);
      CHECK(viaFo == projected);
    }
  }
}

TEST_CASE("in_sem base cases") {
  auto db = bus_train();
  VarSet v{"x", "y"};
  Valuation nu = val({{"x", "1"}, {"y", "1"}});
  CHECK(in_sem(parse_flif("(x=y)"), v, *db, nu, nu));
  CHECK(!in_sem(parse_flif("(x=y)"), v, *db, nu,
                val({{"x", "1"}, {"y", "2"}})));

  // pairs from the published table for B(x;y)
  FlifPtr b = parse_flif("B(x;y)");
  CHECK(in_sem(b, v, *db, val({{"x", "1"}, {"y", "9"}}),
               val({{"x", "1"}, {"y", "2"}})));
  CHECK(in_sem(b, v, *db, val({{"x", "3"}, {"y", "4"}}),
               val({{"x", "3"}, {"y", "5"}})));
  CHECK(!in_sem(b, v, *db, val({{"x", "1"}, {"y", "9"}}),
                val({{"x", "2"}, {"y", "3"}})));
}

TEST_CASE("in_sem agrees with eval_flif_v on randomized cases") {
  GenConfig cfg;
  cfg.max_depth = 3;
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = gen_flif(cfg, schema, rng, {"x", "y"});
    VarSet v{"x", "y"};
    std::set<Constant> dom = db->adom();
    auto consts = flif_constants(e);
    dom.insert(consts.begin(), consts.end());
    dom.insert("1");
    Valuation nu1 = gen_valuation(v, dom, rng);
    ValuationSet viaEval = eval_flif_v(e, v, *db, nu1);
    for (const Valuation& nu2 : all_valuations(v, dom)) {
      CAPTURE(print_flif(e));
      CHECK(in_sem(e, v, *db, nu1, nu2) == viaEval.contains(nu2));
    }
  }
}
