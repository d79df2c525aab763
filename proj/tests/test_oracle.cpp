#include <doctest.h>

#include <cmath>
#include <functional>

#include "flif/eval.hpp"
#include "flif/oracle.hpp"
#include "flif/parser.hpp"
#include "flif/printer.hpp"
#include "helpers.hpp"

using namespace flif;
using namespace flif::testing;

TEST_CASE("brute_pairs on B(x;x) over the bus/train instance") {
  auto db = bus_train();
  VarSet v{"x"};
  std::set<Constant> dom{"1", "2", "3", "4", "5"};
  PairSet pairs = brute_pairs(parse_flif("B(x;x)"), v, *db, dom);
  PairSet expected;
  for (auto [a, b] : {std::pair{"1", "2"}, {"1", "3"}, {"2", "3"}, {"3", "5"}})
    expected.emplace(val({{"x", a}}), val({{"x", b}}));
  CHECK(pairs == expected);
}

TEST_CASE("brute_pairs on (x=z) gives identical pairs with equal slots") {
  auto db = bus_train();
  VarSet v{"x", "z"};
  std::set<Constant> dom{"1", "2"};
  PairSet pairs = brute_pairs(parse_flif("(x=z)"), v, *db, dom);
  PairSet expected;
  for (const Constant& c : dom)
    for (const Constant& other : dom) {
      (void)other;
      expected.emplace(val({{"x", c}, {"z", c}}), val({{"x", c}, {"z", c}}));
    }
  CHECK(pairs == expected);
}

TEST_CASE("brute_pairs left-endpoint slices equal eval_flif_v") {
  GenConfig cfg;
  cfg.max_depth = 3;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = gen_flif(cfg, schema, rng, {"x", "y"});
    VarSet v{"x", "y"};
    std::set<Constant> dom = db->adom();
    auto consts = flif_constants(e);
    dom.insert(consts.begin(), consts.end());
    dom.insert("f1");
    if (std::pow(double(dom.size()), double(v.size())) > 1000) continue;
    PairSet pairs = brute_pairs(e, v, *db, dom);
    for (const Valuation& nu1 : all_valuations(v, dom)) {
      CAPTURE(print_flif(e));
      CHECK(pairs_from(pairs, nu1) == eval_flif_v(e, v, *db, nu1).rows());
    }
  }
}

TEST_CASE("brute_pairs enforces its enumeration budget") {
  auto db = bus_train();
  VarSet big{"a", "b", "c", "d", "e", "f"};
  CHECK_THROWS_AS(brute_pairs(parse_flif("(a=b)"), big, *db,
                              {"1", "2", "3", "4", "5"}),
                  BudgetExceededError);
}

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg;
  Rng rng1(7), rng2(7);
  auto a = gen_instance(cfg, rng1);
  auto b = gen_instance(cfg, rng2);
  CHECK(a.schema.entries() == b.schema.entries());
  for (const auto& [rel, info] : a.schema.entries()) {
    (void)info;
    CHECK(a.db->relation(rel) == b.db->relation(rel));
  }
  CHECK(structurally_equal(gen_flif(cfg, a.schema, rng1),
                           gen_flif(cfg, b.schema, rng2)));
}

TEST_CASE("gen_flif_io always produces io-disjoint expressions") {
  GenConfig cfg;
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = gen_flif_io(cfg, schema, rng);
    CAPTURE(print_flif(e));
    CHECK(is_io_disjoint(e).ok);
  }
}

TEST_CASE("gen_flif covers all eight constructors within 200 samples") {
  GenConfig cfg;
  Rng rng(5);
  auto [schema, db] = gen_instance(cfg, rng);
  std::set<std::size_t> seen;
  std::function<void(const FlifPtr&)> walk = [&](const FlifPtr& e) {
    seen.insert(e->node.index());
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Comp> ||
                        std::is_same_v<T, FlifUnion> ||
                        std::is_same_v<T, Diff>) {
            walk(node.lhs);
            walk(node.rhs);
          }
        },
        e->node);
  };
  for (int i = 0; i < 200; ++i) walk(gen_flif(cfg, schema, rng));
  CHECK(seen.size() == 8);
}

TEST_CASE("the semantic property spine holds on random brute runs") {
  GenConfig cfg;
  cfg.max_depth = 3;
  int ran = 0;
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    Rng rng(seed);
    auto [schema, db] = gen_instance(cfg, rng);
    FlifPtr e = rng() % 2 ? gen_flif(cfg, schema, rng, {"x", "y"})
                          : gen_flif_io(cfg, schema, rng, {"x", "y"});
    VarSet v{"x", "y", "q"};
    std::set<Constant> dom = db->adom();
    auto consts = flif_constants(e);
    dom.insert(consts.begin(), consts.end());
    dom.insert("f1");
    dom.insert("f2");
    if (std::pow(double(dom.size()), double(v.size())) > 1000) continue;
    PairSet pairs = brute_pairs(e, v, *db, dom);
    std::string failure = check_property_spine(e, v, pairs, dom);
    CHECK_MESSAGE(failure.empty(), failure);
    ++ran;
  }
  CHECK(ran > 20);
}
