#ifndef FLIF_TESTS_HELPERS_HPP
#define FLIF_TESTS_HELPERS_HPP

#include <memory>

#include "flif/core.hpp"
#include "flif/eval.hpp"
#include "flif/io_analysis.hpp"
#include "flif/oracle.hpp"

namespace flif::testing {

// The bus/train instance: D(B) = {(1,2),(1,3),(2,3),(3,5)},
// D(T) = {(1,4),(3,5)}, both of input arity one.
inline std::shared_ptr<Instance> bus_train() {
  Schema schema;
  schema.declare("B", 2, 1);
  schema.declare("T", 2, 1);
  auto db = std::make_shared<Instance>(schema);
  for (auto [a, b] : {std::pair{"1", "2"}, {"1", "3"}, {"2", "3"}, {"3", "5"}})
    db->insert("B", {a, b});
  for (auto [a, b] : {std::pair{"1", "4"}, {"3", "5"}})
    db->insert("T", {a, b});
  db->freeze();
  return db;
}

inline Valuation val(std::map<VarName, Constant> bindings) {
  return Valuation(std::move(bindings));
}

inline ValuationSet rows(VarSet schema, std::vector<Valuation> items) {
  ValuationSet out(std::move(schema));
  for (auto& v : items) out.insert(std::move(v));
  return out;
}

// Candidate domain {1..5} plus two constants never occurring in any
// instance, to probe behavior outside the active domain.
inline std::set<Constant> candidates_with_fresh() {
  return {"1", "2", "3", "4", "5", "f1", "f2"};
}

// Restriction of a brute-forced pair set to left endpoint nu1.
inline std::set<Valuation> pairs_from(const PairSet& pairs,
                                      const Valuation& nu1) {
  std::set<Valuation> out;
  for (const auto& [a, b] : pairs)
    if (a == nu1) out.insert(b);
  return out;
}

std::string valuation_debug(const Valuation& v);

// --- The semantic property spine (inertia, free-variable, determinacy in
// both forms, identity-for-io-disjoint), asserted over an enumerated pair
// set.  Returns a failure description, empty on success.
std::string check_property_spine(const FlifPtr& e, const VarSet& v,
                                 const PairSet& pairs,
                                 const std::set<Constant>& dom);

} // namespace flif::testing

#endif
