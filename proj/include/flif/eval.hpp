#ifndef FLIF_EVAL_HPP
#define FLIF_EVAL_HPP

#include "flif/ast.hpp"
#include "flif/io_analysis.hpp"

namespace flif {

// Reference evaluator for the dynamic semantics: all nu_out on V with
// (nu_in, nu_out) in the semantics of e over V.  Requires vars(e) subset of V
// and nu_in total on V.
ValuationSet eval_flif_v(const FlifPtr& e, const VarSet& v, const Instance& db,
                         const Valuation& input);

// Evaluation with input variables: nu_in must be total on exactly I(e);
// output rows are on vars(e).  Output slots outside I(e) are padded with the
// reserved constant before running eval_flif_v; the choice of padding does
// not affect the result.
ValuationSet eval_flif(const FlifPtr& e, const Instance& db,
                       const Valuation& input);
ValuationSet eval_flif_padded(const FlifPtr& e, const Instance& db,
                              const Valuation& input, const Constant& padding);

// Executable-FO evaluation: all valuations on V u FV(f) extending nu_in that
// satisfy f.  Requires exec_check(f, V); evaluation follows the
// executability clauses left to right.
ValuationSet eval_exfo(const FoPtr& f, const VarSet& v, const Instance& db,
                       const Valuation& input);

// Pair-membership test: (nu1, nu2) in the semantics of e over V.  Both
// valuations must be total on V, with vars(e) subset of V.
bool in_sem(const FlifPtr& e, const VarSet& v, const Instance& db,
            const Valuation& nu1, const Valuation& nu2);

} // namespace flif

#endif
