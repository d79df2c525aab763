#ifndef FLIF_IO_ANALYSIS_HPP
#define FLIF_IO_ANALYSIS_HPP

#include "flif/ast.hpp"

namespace flif {

// Syntactic input/output variables of an expression; vars = inputs U outputs.
struct IoProfile {
  VarSet inputs;
  VarSet outputs;
  VarSet vars;
};

IoProfile io_profile(const FlifPtr& e);

// Result of the io-disjointness check.  On failure, `witness` is the first
// offending subexpression in leftmost-innermost order.
struct IoCheck {
  bool ok = false;
  FlifPtr witness;
  explicit operator bool() const { return ok; }
};

IoCheck is_io_disjoint(const FlifPtr& e);

// V-executability check for FO formulas.  On failure, `witness` is the first
// failing subformula in leftmost-innermost order.
struct ExecCheck {
  bool ok = false;
  FoPtr witness;
  explicit operator bool() const { return ok; }
};

ExecCheck exec_check(const FoPtr& f, const VarSet& inputs);

// Set helpers shared across modules.
VarSet set_union(const VarSet& a, const VarSet& b);
VarSet set_intersect(const VarSet& a, const VarSet& b);
VarSet set_minus(const VarSet& a, const VarSet& b);
VarSet set_symdiff(const VarSet& a, const VarSet& b);
bool is_subset(const VarSet& a, const VarSet& b); // a subset of b

} // namespace flif

#endif
