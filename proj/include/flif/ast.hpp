#ifndef FLIF_AST_HPP
#define FLIF_AST_HPP

#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "flif/core.hpp"

namespace flif {

// ---------------------------------------------------------------------------
// FLIF expressions.  Immutable trees; nodes are shared freely.
// ---------------------------------------------------------------------------

struct FlifExpr;
using FlifPtr = std::shared_ptr<const FlifExpr>;

// R(x1,..;y1,..).  Variables may repeat on either side: R(x;x) is legal.
struct RelAtom {
  std::string rel;
  std::vector<VarName> in;
  std::vector<VarName> out;
};
struct EqTest {           // (x = y)
  VarName lhs, rhs;
};
struct ConstTest {        // (x = c)
  VarName var;
  Constant value;
};
struct Assign {           // (x := y)
  VarName target, source;
};
struct ConstAssign {      // (x := c)
  VarName target;
  Constant value;
};
struct Comp {             // a ; b
  FlifPtr lhs, rhs;
};
struct FlifUnion {        // a | b
  FlifPtr lhs, rhs;
};
struct Diff {             // a - b
  FlifPtr lhs, rhs;
};

struct FlifExpr {
  using Node = std::variant<RelAtom, EqTest, ConstTest, Assign, ConstAssign,
                            Comp, FlifUnion, Diff>;
  Node node;
};

FlifPtr rel_atom(std::string rel, std::vector<VarName> in,
                 std::vector<VarName> out);
FlifPtr eq_test(VarName lhs, VarName rhs);
FlifPtr const_test(VarName var, Constant value);
FlifPtr assign(VarName target, VarName source);
FlifPtr const_assign(VarName target, Constant value);
FlifPtr comp(FlifPtr lhs, FlifPtr rhs);
FlifPtr flif_union(FlifPtr lhs, FlifPtr rhs);
FlifPtr diff(FlifPtr lhs, FlifPtr rhs);

// Left-associated composition of a nonempty part list.
FlifPtr comp_all(const std::vector<FlifPtr>& parts);

bool structurally_equal(const FlifPtr& a, const FlifPtr& b);
bool is_atomic(const FlifPtr& e);

// All variables occurring in the expression (= free variables; FLIF has no
// quantifiers).
VarSet flif_vars(const FlifPtr& e);
// Variables of e in order of first occurrence (preorder, inputs before
// outputs within an atom).
std::vector<VarName> flif_vars_in_order(const FlifPtr& e);
std::set<Constant> flif_constants(const FlifPtr& e);
std::size_t flif_size(const FlifPtr& e); // node count

// Checks relation atoms against the schema: declared, |in| = iar, |out| = oar.
void validate_flif(const FlifPtr& e, const Schema& schema);

// ---------------------------------------------------------------------------
// Executable-FO formulas.  Constants appear only in equalities x = c.
// ---------------------------------------------------------------------------

struct FoFormula;
using FoPtr = std::shared_ptr<const FoFormula>;

struct FoRel {
  std::string rel;
  std::vector<VarName> in;
  std::vector<VarName> out;
};
struct FoEq {             // x = y
  VarName lhs, rhs;
};
struct FoEqConst {        // x = c
  VarName var;
  Constant value;
};
struct FoAnd {
  FoPtr lhs, rhs;
};
struct FoOr {
  FoPtr lhs, rhs;
};
struct FoNot {
  FoPtr body;
};
struct FoExists {
  VarName var;
  FoPtr body;
};

struct FoFormula {
  using Node = std::variant<FoRel, FoEq, FoEqConst, FoAnd, FoOr, FoNot, FoExists>;
  Node node;
};

FoPtr fo_rel(std::string rel, std::vector<VarName> in, std::vector<VarName> out);
FoPtr fo_eq(VarName lhs, VarName rhs);
FoPtr fo_eq_const(VarName var, Constant value);
FoPtr fo_and(FoPtr lhs, FoPtr rhs);
FoPtr fo_or(FoPtr lhs, FoPtr rhs);
FoPtr fo_not(FoPtr body);
FoPtr fo_exists(VarName var, FoPtr body);

bool structurally_equal(const FoPtr& a, const FoPtr& b);

VarSet fo_free_vars(const FoPtr& f);
VarSet fo_all_vars(const FoPtr& f); // free and bound
std::set<Constant> fo_constants(const FoPtr& f);
std::size_t fo_size(const FoPtr& f);

void validate_fo(const FoPtr& f, const Schema& schema);

// ---------------------------------------------------------------------------
// Renamings.
// ---------------------------------------------------------------------------

// A finite injective variable mapping, applied as the identity off its
// support.
class Renaming {
public:
  Renaming() = default;
  explicit Renaming(std::map<VarName, VarName> mapping);

  static Renaming swap_pairs(const std::map<VarName, VarName>& pairs);

  const VarName& operator()(const VarName& var) const; // identity off support
  bool maps(const VarName& var) const { return mapping_.count(var) > 0; }
  const std::map<VarName, VarName>& mapping() const { return mapping_; }
  VarSet support() const;
  VarSet image() const;

private:
  std::map<VarName, VarName> mapping_;
};

// Replaces every variable occurrence x by theta(x).
FlifPtr apply_renaming(const Renaming& theta, const FlifPtr& e);

} // namespace flif

#endif
