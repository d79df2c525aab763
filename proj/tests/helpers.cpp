#include "helpers.hpp"

#include "flif/printer.hpp"

namespace flif::testing {

namespace {
std::string describe(const Valuation& v) { return valuation_debug(v); }
} // namespace

std::string valuation_debug(const Valuation& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : v.bindings()) {
    if (!first) out += ",";
    out += var + ":" + value;
    first = false;
  }
  return out + "}";
}

std::string check_property_spine(const FlifPtr& e, const VarSet& v,
                                 const PairSet& pairs,
                                 const std::set<Constant>& dom) {
  IoProfile profile = io_profile(e);
  const bool ioDisjoint = is_io_disjoint(e).ok;
  std::map<Valuation, std::set<Valuation>> byLeft;
  for (const auto& [a, b] : pairs) byLeft[a].insert(b);

  for (const auto& [nu1, nu2] : pairs) {
    // Inertia: nu2 agrees with nu1 outside O(alpha).
    if (!nu1.agrees_outside(nu2, profile.outputs))
      return "inertia violated on " + print_flif(e) + " with nu1=" +
             describe(nu1) + " nu2=" + describe(nu2);

    for (const VarName& w : v) {
      for (const Constant& d : dom) {
        // Free-variable property: joint perturbation outside vars(alpha)
        // stays in the relation.
        if (!profile.vars.count(w)) {
          if (!pairs.count({nu1.extend(w, d), nu2.extend(w, d)}))
            return "free-variable property violated on " + print_flif(e) +
                   " perturbing " + w + ":=" + d + " from nu1=" +
                   describe(nu1);
        }
        // Determinacy, alternative form: perturbing nu1 on O \ I keeps the
        // same right endpoint.
        if (profile.outputs.count(w) && !profile.inputs.count(w)) {
          if (!pairs.count({nu1.extend(w, d), nu2}))
            return "input-output determinacy (alternative form) violated on " +
                   print_flif(e) + " perturbing " + w + ":=" + d +
                   " from nu1=" + describe(nu1);
        }
        // Determinacy, original form: perturbing nu1 anywhere outside
        // I(alpha) leaves some right endpoint agreeing on O(alpha).
        if (!profile.inputs.count(w)) {
          Valuation moved = nu1.extend(w, d);
          auto it = byLeft.find(moved);
          bool found = false;
          if (it != byLeft.end())
            for (const Valuation& cand : it->second)
              if (cand.agrees_on(nu2, profile.outputs)) {
                found = true;
                break;
              }
          if (!found)
            return "input-output determinacy violated on " + print_flif(e) +
                   " perturbing " + w + ":=" + d + " from nu1=" +
                   describe(nu1);
        }
      }
    }

    // Identity property, only for io-disjoint expressions.
    if (ioDisjoint && !pairs.count({nu2, nu2}))
      return "identity property violated on " + print_flif(e) +
             " with nu2=" + describe(nu2);
  }
  return {};
}

} // namespace flif::testing
