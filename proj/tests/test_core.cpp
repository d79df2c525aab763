#include <doctest.h>

#include "flif/core.hpp"
#include "flif/oracle.hpp"
#include "helpers.hpp"

using namespace flif;
using namespace flif::testing;

TEST_CASE("access returns matching output tuples") {
  auto db = bus_train();
  CHECK(db->access("B", {"1"}) == std::set<Tuple>{{"2"}, {"3"}});
  CHECK(db->access("T", {"2"}) == std::set<Tuple>{});
  CHECK(db->access("B", {"9"}) == std::set<Tuple>{});
}

TEST_CASE("access on a nullary-input relation returns the whole relation") {
  Schema schema;
  schema.declare("S", 2, 0);
  Instance db(schema);
  db.insert("S", {"a", "b"});
  db.insert("S", {"c", "d"});
  db.freeze();
  CHECK(db.access("S", {}) == std::set<Tuple>{{"a", "b"}, {"c", "d"}});
}

TEST_CASE("access validates relation and arity") {
  auto db = bus_train();
  CHECK_THROWS_AS(db->access("Z", {"1"}), UnknownRelationError);
  CHECK_THROWS_AS(db->access("B", {"1", "2"}), ArityMismatchError);
}

TEST_CASE("adom collects exactly the occurring constants") {
  CHECK(bus_train()->adom() ==
        std::set<Constant>{"1", "2", "3", "4", "5"});

  Schema schema;
  schema.declare("R", 2, 1);
  Instance empty(schema);
  empty.freeze();
  CHECK(empty.adom().empty());

  Instance single(schema);
  single.insert("R", {"7", "7"});
  single.freeze();
  CHECK(single.adom() == std::set<Constant>{"7"});
}

TEST_CASE("instances deduplicate tuples and check arity") {
  Schema schema;
  schema.declare("R", 2, 1);
  Instance db(schema);
  db.insert("R", {"1", "2"});
  db.insert("R", {"1", "2"});
  CHECK(db.relation("R").size() == 1);
  CHECK_THROWS_AS(db.insert("R", {"1"}), ArityMismatchError);
}

TEST_CASE("valuation operations") {
  Valuation nu = val({{"x", "1"}});
  Valuation extended = nu.extend("y", "2");
  CHECK(extended == val({{"x", "1"}, {"y", "2"}}));
  CHECK(extended("y") == "2");
  CHECK_THROWS_AS(nu("z"), UnboundInputError);
  CHECK_THROWS_AS(extended.restrict({"z"}), DomainMismatchError);

  CHECK(val({{"x", "1"}, {"y", "2"}})
            .agrees_on(val({{"x", "1"}, {"y", "9"}}), {"x"}));
  CHECK(val({{"x", "1"}, {"y", "2"}})
            .agrees_outside(val({{"x", "1"}, {"y", "9"}}), {"y"}));
  CHECK_THROWS_AS(
      val({{"x", "1"}}).agrees_outside(val({{"y", "1"}}), {}),
      DomainMismatchError);
}

TEST_CASE("restrict undoes extend outside the original domain") {
  Rng rng(11);
  std::set<Constant> dom{"1", "2", "3"};
  for (int i = 0; i < 50; ++i) {
    Valuation nu = gen_valuation({"x", "y"}, dom, rng);
    Valuation ext = nu.extend("z", "3");
    CHECK(ext.restrict(nu.domain()) == nu);
  }
}

TEST_CASE("access agrees with an exhaustive scan on random instances") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    for (const auto& [rel, info] : schema.entries()) {
      for (const Tuple& t : db->relation(rel)) {
        Tuple prefix(t.begin(), t.begin() + info.input_arity);
        std::set<Tuple> viaAccess = db->access(rel, prefix);
        std::set<Tuple> viaScan;
        for (const Tuple& u : db->relation(rel))
          if (std::equal(prefix.begin(), prefix.end(), u.begin()))
            viaScan.insert(Tuple(u.begin() + info.input_arity, u.end()));
        CHECK(viaAccess == viaScan);
      }
    }
  }
}

TEST_CASE("valuation sets enforce their schema") {
  ValuationSet set(VarSet{"x"});
  set.insert(val({{"x", "1"}}));
  CHECK_THROWS_AS(set.insert(val({{"y", "1"}})), DomainMismatchError);
}
