#ifndef FLIF_TRANSLATE_HPP
#define FLIF_TRANSLATE_HPP

#include "flif/ast.hpp"
#include "flif/io_analysis.hpp"

namespace flif {

// Deterministic fresh-variable issuance: names are base + "_k" with the
// smallest k avoiding the forbidden set and everything issued before.
class FreshVarSource {
public:
  FreshVarSource() = default;
  explicit FreshVarSource(VarSet forbidden) : forbidden_(std::move(forbidden)) {}

  void forbid(const VarSet& vars) {
    forbidden_.insert(vars.begin(), vars.end());
  }
  void forbid(const VarName& var) { forbidden_.insert(var); }

  VarName fresh(const std::string& base);

private:
  VarSet forbidden_;
  std::map<std::string, int> counters_;
};

// ---------------------------------------------------------------------------
// Executable FO -> FLIF.
// ---------------------------------------------------------------------------

struct Fo2FlifResult {
  FlifPtr expr;
  // Fresh variable -> original variable it stands in for (atom outputs that
  // were input-bound, plus the scratch variable of a negation, mapped to "").
  std::map<VarName, VarName> fresh_map;
};

// Requires exec_check(f, inputs).  The resulting expression never changes
// the value of an input variable, and evaluating it from any extension of an
// input valuation and restricting the results to FV(f) u inputs yields
// exactly the FO evaluation.
Fo2FlifResult exfo_to_flif(const FoPtr& f, const VarSet& inputs);

// ---------------------------------------------------------------------------
// FLIF -> executable FO over three variable copies.
// ---------------------------------------------------------------------------

struct Fo3nResult {
  FoPtr formula;
  std::vector<VarName> input_copy;  // the given V_x, in order
  std::vector<VarName> output_copy; // V_y, positionally matching V_x
};

// Requires vars(e) within V_x.  The formula is V_x-executable, uses at most
// the three copies V_x, V_y, V_z, and satisfies:
// (nu1, nu2) in sem(e) iff D, nu1 u (nu2 shifted onto V_y) |= formula.
Fo3nResult flif_to_exfo_3n(const FlifPtr& e, const std::vector<VarName>& v_x);

// ---------------------------------------------------------------------------
// Io-disjoint FLIF -> executable FO (the improved translation).
// ---------------------------------------------------------------------------

// Requires is_io_disjoint(e).  FV(formula) = vars(e), the formula is
// I(e)-executable, its size is linear in |e|, and FO evaluation from any
// input on I(e) agrees with FLIF evaluation.
FoPtr flifio_to_exfo(const FlifPtr& e);

// ---------------------------------------------------------------------------
// FLIF -> io-disjoint FLIF.
// ---------------------------------------------------------------------------

// Rewrites e into an io-disjoint expression whose outputs hold, under the
// renaming rho, the values the original outputs would have held.  rho must
// be injective on O(e) with image disjoint from vars(e).  Guarantees,
// asserted after every rewrite: the result is io-disjoint, I(result) = I(e),
// O(result) contains rho(O(e)), and the auxiliary outputs avoid `forbidden`.
FlifPtr rewrite_io_disjoint(const FlifPtr& e, const Renaming& rho,
                            const VarSet& forbidden);
// Convenience: forbidden defaults to vars(e) u image(rho).
FlifPtr rewrite_io_disjoint(const FlifPtr& e, const Renaming& rho);

} // namespace flif

#endif
