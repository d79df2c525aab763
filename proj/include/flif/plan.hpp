#ifndef FLIF_PLAN_HPP
#define FLIF_PLAN_HPP

#include <optional>

#include "flif/ast.hpp"
#include "flif/io_analysis.hpp"

namespace flif {

// ---------------------------------------------------------------------------
// Relational-algebra plans over the named perspective, with the special
// relation In and access joins.  AccessJoin is the only node that names a
// database relation, so plan evaluation reaches the instance exclusively
// through the limited access pattern.
// ---------------------------------------------------------------------------

struct Plan;
using PlanPtr = std::shared_ptr<const Plan>;

struct PlanIn {};
struct PlanAccessJoin { // child |x|_access R(in; out)
  PlanPtr child;
  std::string rel;
  std::vector<VarName> in;
  std::vector<VarName> out;
};
struct PlanUnionNode {
  PlanPtr lhs, rhs;
};
struct PlanDiffNode {
  PlanPtr lhs, rhs;
};
struct PlanJoinNode { // natural join
  PlanPtr lhs, rhs;
};
struct PlanProject { // pi_keep(child)
  PlanPtr child;
  VarSet keep;
};
struct PlanExtendVar { // pi_{keep, target := source}(child)
  PlanPtr child;
  VarSet keep;
  VarName target, source;
};
struct PlanExtendConst { // pi_{keep, target := c}(child)
  PlanPtr child;
  VarSet keep;
  VarName target;
  Constant value;
};
struct PlanSelectVar { // sigma_{lhs = rhs}(child)
  PlanPtr child;
  VarName lhs, rhs;
};
struct PlanSelectConst { // sigma_{var = c}(child)
  PlanPtr child;
  VarName var;
  Constant value;
};
// Binds `bound` (evaluated against the current In) and evaluates `body` with
// In referring to the bound result.  Keeps substituted subplans shared, so
// compiled plans stay linear in the expression size.
struct PlanLet {
  std::string name;
  PlanPtr bound;
  PlanPtr body;
};

struct Plan {
  using Node =
      std::variant<PlanIn, PlanAccessJoin, PlanUnionNode, PlanDiffNode,
                   PlanJoinNode, PlanProject, PlanExtendVar, PlanExtendConst,
                   PlanSelectVar, PlanSelectConst, PlanLet>;
  Node node;
};

PlanPtr plan_in();
PlanPtr plan_access_join(PlanPtr child, std::string rel,
                         std::vector<VarName> in, std::vector<VarName> out);
PlanPtr plan_union(PlanPtr lhs, PlanPtr rhs);
PlanPtr plan_diff(PlanPtr lhs, PlanPtr rhs);
PlanPtr plan_join(PlanPtr lhs, PlanPtr rhs);
PlanPtr plan_project(PlanPtr child, VarSet keep);
PlanPtr plan_extend_var(PlanPtr child, VarSet keep, VarName target,
                        VarName source);
PlanPtr plan_extend_const(PlanPtr child, VarSet keep, VarName target,
                          Constant value);
PlanPtr plan_select_var(PlanPtr child, VarName lhs, VarName rhs);
PlanPtr plan_select_const(PlanPtr child, VarName var, Constant value);
PlanPtr plan_let(std::string name, PlanPtr bound, PlanPtr body);

bool structurally_equal(const PlanPtr& a, const PlanPtr& b);
std::size_t plan_size(const PlanPtr& p); // node count

// ---------------------------------------------------------------------------
// Static typing: every node has a derivable output schema given the schema
// of In.
// ---------------------------------------------------------------------------

struct PlanSchemaReport {
  VarSet input_schema;
  VarSet root_schema;
  // Schemas in evaluation order (post-order over the tree); mainly for
  // diagnostics.
  std::vector<std::pair<const Plan*, VarSet>> node_schemas;
};

// Throws PlanTypeError naming the first offending node.
PlanSchemaReport plan_schema(const PlanPtr& plan, const VarSet& input_schema,
                             const Schema& db_schema);

// ---------------------------------------------------------------------------
// Compilation of io-disjoint FLIF (requires is_io_disjoint) and evaluation.
// ---------------------------------------------------------------------------

// Compiles against an input relation schema Z (default: exactly I(e));
// Z must contain I(e) and avoid O(e).  The compiled plan type-checks for
// that Z and evaluates to
//   { nu on Z u O(e) | nu|Z in N and nu|vars(e) in eval_flif(e, D, nu|I(e)) }.
PlanPtr compile_plan(const FlifPtr& e);
PlanPtr compile_plan(const FlifPtr& e, const VarSet& input_schema);

ValuationSet eval_plan(const PlanPtr& plan, const Instance& db,
                       const ValuationSet& input);

// Parenthesized text form mirroring the AST; parse(print(p)) == p.
std::string print_plan(const PlanPtr& plan);
PlanPtr parse_plan(const std::string& text);

} // namespace flif

#endif
