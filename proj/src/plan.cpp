#include "flif/plan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "flif/printer.hpp"

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

PlanPtr make(Plan::Node node) {
  return std::make_shared<const Plan>(Plan{std::move(node)});
}
} // namespace

PlanPtr plan_in() { return make(PlanIn{}); }
PlanPtr plan_access_join(PlanPtr child, std::string rel,
                         std::vector<VarName> in, std::vector<VarName> out) {
  return make(PlanAccessJoin{std::move(child), std::move(rel), std::move(in),
                             std::move(out)});
}
PlanPtr plan_union(PlanPtr lhs, PlanPtr rhs) {
  return make(PlanUnionNode{std::move(lhs), std::move(rhs)});
}
PlanPtr plan_diff(PlanPtr lhs, PlanPtr rhs) {
  return make(PlanDiffNode{std::move(lhs), std::move(rhs)});
}
PlanPtr plan_join(PlanPtr lhs, PlanPtr rhs) {
  return make(PlanJoinNode{std::move(lhs), std::move(rhs)});
}
PlanPtr plan_project(PlanPtr child, VarSet keep) {
  return make(PlanProject{std::move(child), std::move(keep)});
}
PlanPtr plan_extend_var(PlanPtr child, VarSet keep, VarName target,
                        VarName source) {
  return make(PlanExtendVar{std::move(child), std::move(keep),
                            std::move(target), std::move(source)});
}
PlanPtr plan_extend_const(PlanPtr child, VarSet keep, VarName target,
                          Constant value) {
  return make(PlanExtendConst{std::move(child), std::move(keep),
                              std::move(target), std::move(value)});
}
PlanPtr plan_select_var(PlanPtr child, VarName lhs, VarName rhs) {
  return make(PlanSelectVar{std::move(child), std::move(lhs), std::move(rhs)});
}
PlanPtr plan_select_const(PlanPtr child, VarName var, Constant value) {
  return make(
      PlanSelectConst{std::move(child), std::move(var), std::move(value)});
}
PlanPtr plan_let(std::string name, PlanPtr bound, PlanPtr body) {
  return make(PlanLet{std::move(name), std::move(bound), std::move(body)});
}

bool structurally_equal(const PlanPtr& a, const PlanPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const PlanIn&) { return true; },
          [&](const PlanAccessJoin& x) {
            const auto& y = std::get<PlanAccessJoin>(b->node);
            return x.rel == y.rel && x.in == y.in && x.out == y.out &&
                   structurally_equal(x.child, y.child);
          },
          [&](const PlanUnionNode& x) {
            const auto& y = std::get<PlanUnionNode>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const PlanDiffNode& x) {
            const auto& y = std::get<PlanDiffNode>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const PlanJoinNode& x) {
            const auto& y = std::get<PlanJoinNode>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const PlanProject& x) {
            const auto& y = std::get<PlanProject>(b->node);
            return x.keep == y.keep && structurally_equal(x.child, y.child);
          },
          [&](const PlanExtendVar& x) {
            const auto& y = std::get<PlanExtendVar>(b->node);
            return x.keep == y.keep && x.target == y.target &&
                   x.source == y.source && structurally_equal(x.child, y.child);
          },
          [&](const PlanExtendConst& x) {
            const auto& y = std::get<PlanExtendConst>(b->node);
            return x.keep == y.keep && x.target == y.target &&
                   x.value == y.value && structurally_equal(x.child, y.child);
          },
          [&](const PlanSelectVar& x) {
            const auto& y = std::get<PlanSelectVar>(b->node);
            return x.lhs == y.lhs && x.rhs == y.rhs &&
                   structurally_equal(x.child, y.child);
          },
          [&](const PlanSelectConst& x) {
            const auto& y = std::get<PlanSelectConst>(b->node);
            return x.var == y.var && x.value == y.value &&
                   structurally_equal(x.child, y.child);
          },
          [&](const PlanLet& x) {
            const auto& y = std::get<PlanLet>(b->node);
            return x.name == y.name && structurally_equal(x.bound, y.bound) &&
                   structurally_equal(x.body, y.body);
          },
      },
      a->node);
}

std::size_t plan_size(const PlanPtr& p) {
  return std::visit(
      overloaded{
          [&](const PlanIn&) { return std::size_t{1}; },
          [&](const PlanAccessJoin& x) { return 1 + plan_size(x.child); },
          [&](const PlanUnionNode& x) {
            return 1 + plan_size(x.lhs) + plan_size(x.rhs);
          },
          [&](const PlanDiffNode& x) {
            return 1 + plan_size(x.lhs) + plan_size(x.rhs);
          },
          [&](const PlanJoinNode& x) {
            return 1 + plan_size(x.lhs) + plan_size(x.rhs);
          },
          [&](const PlanProject& x) { return 1 + plan_size(x.child); },
          [&](const PlanExtendVar& x) { return 1 + plan_size(x.child); },
          [&](const PlanExtendConst& x) { return 1 + plan_size(x.child); },
          [&](const PlanSelectVar& x) { return 1 + plan_size(x.child); },
          [&](const PlanSelectConst& x) { return 1 + plan_size(x.child); },
          [&](const PlanLet& x) {
            return 1 + plan_size(x.bound) + plan_size(x.body);
          },
      },
      p->node);
}

// --- Typing ---------------------------------------------------------------

namespace {
std::string show_vars(const VarSet& vars) {
  std::string out = "{";
  bool first = true;
  for (const VarName& v : vars) {
    if (!first) out += ",";
    out += v;
    first = false;
  }
  return out + "}";
}

VarSet schema_rec(const PlanPtr& p, const VarSet& in_schema,
                  const Schema& dbSchema, PlanSchemaReport& report) {
  VarSet result = std::visit(
      overloaded{
          [&](const PlanIn&) { return in_schema; },
          [&](const PlanAccessJoin& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            const RelInfo& info = dbSchema.at(x.rel);
            if (x.in.size() != info.input_arity ||
                x.out.size() != info.output_arity())
              throw PlanTypeError("access join arity mismatch on " + x.rel);
            VarSet xs(x.in.begin(), x.in.end());
            VarSet ys(x.out.begin(), x.out.end());
            if (!set_intersect(xs, ys).empty())
              throw PlanTypeError(
                  "access join on " + x.rel +
                  " must have disjoint input and output variables");
            if (!is_subset(xs, z))
              throw PlanTypeError("access join on " + x.rel +
                                  ": input variables " + show_vars(xs) +
                                  " not all in child schema " + show_vars(z));
            if (!set_intersect(ys, z).empty())
              throw PlanTypeError("access join on " + x.rel +
                                  ": output variables " + show_vars(ys) +
                                  " overlap child schema " + show_vars(z));
            return set_union(z, ys);
          },
          [&](const PlanUnionNode& x) {
            VarSet l = schema_rec(x.lhs, in_schema, dbSchema, report);
            VarSet r = schema_rec(x.rhs, in_schema, dbSchema, report);
            if (l != r)
              throw PlanTypeError("union operands have schemas " +
                                  show_vars(l) + " and " + show_vars(r));
            return l;
          },
          [&](const PlanDiffNode& x) {
            VarSet l = schema_rec(x.lhs, in_schema, dbSchema, report);
            VarSet r = schema_rec(x.rhs, in_schema, dbSchema, report);
            if (l != r)
              throw PlanTypeError("difference operands have schemas " +
                                  show_vars(l) + " and " + show_vars(r));
            return l;
          },
          [&](const PlanJoinNode& x) {
            VarSet l = schema_rec(x.lhs, in_schema, dbSchema, report);
            VarSet r = schema_rec(x.rhs, in_schema, dbSchema, report);
            return set_union(l, r);
          },
          [&](const PlanProject& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            if (!is_subset(x.keep, z))
              throw PlanTypeError("projection keeps " + show_vars(x.keep) +
                                  " outside child schema " + show_vars(z));
            return x.keep;
          },
          [&](const PlanExtendVar& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            if (!is_subset(x.keep, z))
              throw PlanTypeError("generalized projection keeps variables "
                                  "outside child schema");
            if (!x.keep.count(x.source))
              throw PlanTypeError("generalized projection source " + x.source +
                                  " not kept");
            if (x.keep.count(x.target))
              throw PlanTypeError("generalized projection target " + x.target +
                                  " already present");
            VarSet out = x.keep;
            out.insert(x.target);
            return out;
          },
          [&](const PlanExtendConst& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            if (!is_subset(x.keep, z))
              throw PlanTypeError("generalized projection keeps variables "
                                  "outside child schema");
            if (x.keep.count(x.target))
              throw PlanTypeError("generalized projection target " + x.target +
                                  " already present");
            VarSet out = x.keep;
            out.insert(x.target);
            return out;
          },
          [&](const PlanSelectVar& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            if (!z.count(x.lhs) || !z.count(x.rhs))
              throw PlanTypeError("selection compares variables outside the "
                                  "schema " +
                                  show_vars(z));
            return z;
          },
          [&](const PlanSelectConst& x) {
            VarSet z = schema_rec(x.child, in_schema, dbSchema, report);
            if (!z.count(x.var))
              throw PlanTypeError("selection tests variable " + x.var +
                                  " outside the schema " + show_vars(z));
            return z;
          },
          [&](const PlanLet& x) {
            VarSet bound = schema_rec(x.bound, in_schema, dbSchema, report);
            return schema_rec(x.body, bound, dbSchema, report);
          },
      },
      p->node);
  report.node_schemas.emplace_back(p.get(), result);
  return result;
}
} // namespace

PlanSchemaReport plan_schema(const PlanPtr& plan, const VarSet& input_schema,
                             const Schema& db_schema) {
  PlanSchemaReport report;
  report.input_schema = input_schema;
  report.root_schema = schema_rec(plan, input_schema, db_schema, report);
  return report;
}

// --- Evaluation -------------------------------------------------------------

namespace {
ValuationSet eval_rec(const PlanPtr& p, const Instance& db,
                      const ValuationSet& in) {
  return std::visit(
      overloaded{
          [&](const PlanIn&) { return in; },
          [&](const PlanAccessJoin& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            ValuationSet out(set_union(child.schema(),
                                       VarSet(x.out.begin(), x.out.end())));
            for (const Valuation& row : child.rows()) {
              Tuple t1;
              t1.reserve(x.in.size());
              for (const VarName& v : x.in) t1.push_back(row(v));
              for (const Tuple& t2 : db.access(x.rel, t1)) {
                std::map<VarName, Constant> fresh;
                bool ok = true;
                for (std::size_t i = 0; i < x.out.size() && ok; ++i) {
                  auto [it, inserted] = fresh.emplace(x.out[i], t2[i]);
                  if (!inserted) ok = it->second == t2[i];
                }
                if (!ok) continue;
                Valuation extended = row;
                for (const auto& [var, value] : fresh)
                  extended = extended.extend(var, value);
                out.insert(std::move(extended));
              }
            }
            return out;
          },
          [&](const PlanUnionNode& x) {
            ValuationSet l = eval_rec(x.lhs, db, in);
            ValuationSet r = eval_rec(x.rhs, db, in);
            ValuationSet out(l.schema());
            for (const Valuation& row : l.rows()) out.insert(row);
            for (const Valuation& row : r.rows()) out.insert(row);
            return out;
          },
          [&](const PlanDiffNode& x) {
            ValuationSet l = eval_rec(x.lhs, db, in);
            ValuationSet r = eval_rec(x.rhs, db, in);
            ValuationSet out(l.schema());
            for (const Valuation& row : l.rows())
              if (!r.contains(row)) out.insert(row);
            return out;
          },
          [&](const PlanJoinNode& x) {
            ValuationSet l = eval_rec(x.lhs, db, in);
            ValuationSet r = eval_rec(x.rhs, db, in);
            VarSet shared = set_intersect(l.schema(), r.schema());
            ValuationSet out(set_union(l.schema(), r.schema()));
            std::map<Valuation, std::vector<const Valuation*>> byKey;
            for (const Valuation& row : r.rows())
              byKey[row.restrict(shared)].push_back(&row);
            for (const Valuation& lrow : l.rows()) {
              auto it = byKey.find(lrow.restrict(shared));
              if (it == byKey.end()) continue;
              for (const Valuation* rrow : it->second) {
                Valuation joined = lrow;
                for (const auto& [var, value] : rrow->bindings())
                  joined = joined.extend(var, value);
                out.insert(std::move(joined));
              }
            }
            return out;
          },
          [&](const PlanProject& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            ValuationSet out(x.keep);
            for (const Valuation& row : child.rows())
              out.insert(row.restrict(x.keep));
            return out;
          },
          [&](const PlanExtendVar& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            VarSet schema = x.keep;
            schema.insert(x.target);
            ValuationSet out(schema);
            for (const Valuation& row : child.rows()) {
              Valuation kept = row.restrict(x.keep);
              out.insert(kept.extend(x.target, row(x.source)));
            }
            return out;
          },
          [&](const PlanExtendConst& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            VarSet schema = x.keep;
            schema.insert(x.target);
            ValuationSet out(schema);
            for (const Valuation& row : child.rows())
              out.insert(row.restrict(x.keep).extend(x.target, x.value));
            return out;
          },
          [&](const PlanSelectVar& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            ValuationSet out(child.schema());
            for (const Valuation& row : child.rows())
              if (row(x.lhs) == row(x.rhs)) out.insert(row);
            return out;
          },
          [&](const PlanSelectConst& x) {
            ValuationSet child = eval_rec(x.child, db, in);
            ValuationSet out(child.schema());
            for (const Valuation& row : child.rows())
              if (row(x.var) == x.value) out.insert(row);
            return out;
          },
          [&](const PlanLet& x) {
            // The bound subplan evaluates once; the body sees its result
            // as In.
            ValuationSet bound = eval_rec(x.bound, db, in);
            return eval_rec(x.body, db, bound);
          },
      },
      p->node);
}
} // namespace

ValuationSet eval_plan(const PlanPtr& plan, const Instance& db,
                       const ValuationSet& input) {
  plan_schema(plan, input.schema(), db.schema()); // reject ill-typed plans
  return eval_rec(plan, db, input);
}

// --- Compilation ------------------------------------------------------------

namespace {
std::size_t count_free_in(const PlanPtr& p) {
  return std::visit(
      overloaded{
          [&](const PlanIn&) { return std::size_t{1}; },
          [&](const PlanAccessJoin& x) { return count_free_in(x.child); },
          [&](const PlanUnionNode& x) {
            return count_free_in(x.lhs) + count_free_in(x.rhs);
          },
          [&](const PlanDiffNode& x) {
            return count_free_in(x.lhs) + count_free_in(x.rhs);
          },
          [&](const PlanJoinNode& x) {
            return count_free_in(x.lhs) + count_free_in(x.rhs);
          },
          [&](const PlanProject& x) { return count_free_in(x.child); },
          [&](const PlanExtendVar& x) { return count_free_in(x.child); },
          [&](const PlanExtendConst& x) { return count_free_in(x.child); },
          [&](const PlanSelectVar& x) { return count_free_in(x.child); },
          [&](const PlanSelectConst& x) { return count_free_in(x.child); },
          // In occurrences inside a let body refer to the let binding.
          [&](const PlanLet& x) { return count_free_in(x.bound); },
      },
      p->node);
}

PlanPtr substitute_in(const PlanPtr& p, const PlanPtr& replacement) {
  return std::visit(
      overloaded{
          [&](const PlanIn&) { return replacement; },
          [&](const PlanAccessJoin& x) {
            return plan_access_join(substitute_in(x.child, replacement), x.rel,
                                    x.in, x.out);
          },
          [&](const PlanUnionNode& x) {
            return plan_union(substitute_in(x.lhs, replacement),
                              substitute_in(x.rhs, replacement));
          },
          [&](const PlanDiffNode& x) {
            return plan_diff(substitute_in(x.lhs, replacement),
                             substitute_in(x.rhs, replacement));
          },
          [&](const PlanJoinNode& x) {
            return plan_join(substitute_in(x.lhs, replacement),
                             substitute_in(x.rhs, replacement));
          },
          [&](const PlanProject& x) {
            return plan_project(substitute_in(x.child, replacement), x.keep);
          },
          [&](const PlanExtendVar& x) {
            return plan_extend_var(substitute_in(x.child, replacement), x.keep,
                                   x.target, x.source);
          },
          [&](const PlanExtendConst& x) {
            return plan_extend_const(substitute_in(x.child, replacement),
                                     x.keep, x.target, x.value);
          },
          [&](const PlanSelectVar& x) {
            return plan_select_var(substitute_in(x.child, replacement), x.lhs,
                                   x.rhs);
          },
          [&](const PlanSelectConst& x) {
            return plan_select_const(substitute_in(x.child, replacement), x.var,
                                     x.value);
          },
          [&](const PlanLet& x) {
            return plan_let(x.name, substitute_in(x.bound, replacement),
                            x.body);
          },
      },
      p->node);
}

// Q(P): substitute P for the free In occurrences of Q.  Direct substitution
// when In occurs once; otherwise a let binding keeps the plan linear.
PlanPtr apply_to(const PlanPtr& q, const PlanPtr& p, int& letCounter) {
  if (std::holds_alternative<PlanIn>(p->node)) return q;
  if (count_free_in(q) <= 1) return substitute_in(q, p);
  return plan_let("P" + std::to_string(++letCounter), p, q);
}

PlanPtr compile_rec(const FlifPtr& e, const VarSet& z, int& letCounter) {
  return std::visit(
      overloaded{
          [&](const RelAtom& a) -> PlanPtr {
            return plan_access_join(plan_in(), a.rel, a.in, a.out);
          },
          [&](const EqTest& a) -> PlanPtr {
            return plan_select_var(plan_in(), a.lhs, a.rhs);
          },
          [&](const ConstTest& a) -> PlanPtr {
            return plan_select_const(plan_in(), a.var, a.value);
          },
          [&](const Assign& a) -> PlanPtr {
            return plan_extend_var(plan_in(), z, a.target, a.source);
          },
          [&](const ConstAssign& a) -> PlanPtr {
            return plan_extend_const(plan_in(), z, a.target, a.value);
          },
          [&](const Comp& a) -> PlanPtr {
            // E2 runs over E1's output schema with the columns E2 rewrites
            // projected away.
            VarSet o1 = io_profile(a.lhs).outputs;
            VarSet o2 = io_profile(a.rhs).outputs;
            PlanPtr e1 = compile_rec(a.lhs, z, letCounter);
            VarSet mid = set_minus(set_union(z, o1), o2);
            PlanPtr p1 = e1;
            if (mid != set_union(z, o1)) p1 = plan_project(e1, mid);
            PlanPtr e2 = compile_rec(a.rhs, mid, letCounter);
            return apply_to(e2, p1, letCounter);
          },
          [&](const FlifUnion& a) -> PlanPtr {
            return plan_union(compile_rec(a.lhs, z, letCounter),
                              compile_rec(a.rhs, z, letCounter));
          },
          [&](const Diff& a) -> PlanPtr {
            // The right side recomputes O(rhs) from scratch, then the join
            // with In pins the recomputed values that were inputs.
            VarSet o2 = io_profile(a.rhs).outputs;
            PlanPtr e1 = compile_rec(a.lhs, z, letCounter);
            VarSet reduced = set_minus(z, o2);
            PlanPtr input2 =
                reduced == z ? plan_in() : plan_project(plan_in(), reduced);
            PlanPtr e2 = compile_rec(a.rhs, reduced, letCounter);
            PlanPtr applied = apply_to(e2, input2, letCounter);
            return plan_diff(e1, plan_join(applied, plan_in()));
          },
      },
      e->node);
}
} // namespace

PlanPtr compile_plan(const FlifPtr& e, const VarSet& input_schema) {
  if (auto check = is_io_disjoint(e); !check.ok)
    throw NotIoDisjointError(print_flif(check.witness));
  IoProfile p = io_profile(e);
  if (!is_subset(p.inputs, input_schema))
    throw PlanTypeError("input schema must contain I(alpha)");
  if (!set_intersect(input_schema, p.outputs).empty())
    throw PlanTypeError("input schema must be disjoint from O(alpha)");
  int letCounter = 0;
  return compile_rec(e, input_schema, letCounter);
}

PlanPtr compile_plan(const FlifPtr& e) {
  return compile_plan(e, io_profile(e).inputs);
}

// --- Text form --------------------------------------------------------------

namespace {
std::string vars_list(const std::vector<VarName>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ",";
    out += vars[i];
  }
  return out;
}

void print_rec(const PlanPtr& p, std::string& out) {
  std::visit(
      overloaded{
          [&](const PlanIn&) { out += "In"; },
          [&](const PlanAccessJoin& x) {
            out += "(";
            print_rec(x.child, out);
            out += " ajoin " + x.rel + "(" + vars_list(x.in) + ";" +
                   vars_list(x.out) + "))";
          },
          [&](const PlanUnionNode& x) {
            out += "(";
            print_rec(x.lhs, out);
            out += " union ";
            print_rec(x.rhs, out);
            out += ")";
          },
          [&](const PlanDiffNode& x) {
            out += "(";
            print_rec(x.lhs, out);
            out += " diff ";
            print_rec(x.rhs, out);
            out += ")";
          },
          [&](const PlanJoinNode& x) {
            out += "(";
            print_rec(x.lhs, out);
            out += " join ";
            print_rec(x.rhs, out);
            out += ")";
          },
          [&](const PlanProject& x) {
            out += "project[" +
                   vars_list({x.keep.begin(), x.keep.end()}) + "](";
            print_rec(x.child, out);
            out += ")";
          },
          [&](const PlanExtendVar& x) {
            out += "project[" + vars_list({x.keep.begin(), x.keep.end()}) +
                   (x.keep.empty() ? "" : ",") + x.target + ":=" + x.source +
                   "](";
            print_rec(x.child, out);
            out += ")";
          },
          [&](const PlanExtendConst& x) {
            out += "project[" + vars_list({x.keep.begin(), x.keep.end()}) +
                   (x.keep.empty() ? "" : ",") + x.target +
                   ":=" + quote_constant(x.value) + "](";
            print_rec(x.child, out);
            out += ")";
          },
          [&](const PlanSelectVar& x) {
            out += "select[" + x.lhs + "=" + x.rhs + "](";
            print_rec(x.child, out);
            out += ")";
          },
          [&](const PlanSelectConst& x) {
            out += "select[" + x.var + "=" + quote_constant(x.value) + "](";
            print_rec(x.child, out);
            out += ")";
          },
          [&](const PlanLet& x) {
            out += "(let " + x.name + " = ";
            print_rec(x.bound, out);
            out += " in ";
            print_rec(x.body, out);
            out += ")";
          },
      },
      p->node);
}
} // namespace

std::string print_plan(const PlanPtr& plan) {
  std::string out;
  print_rec(plan, out);
  return out;
}

// Plans print fully parenthesized, so parsing needs no precedence handling:
//
//   plan  := "In"
//          | "project" "[" items "]" "(" plan ")"
//          | "select" "[" VAR "=" (VAR | CONST) "]" "(" plan ")"
//          | "(" "let" NAME "=" plan "in" plan ")"
//          | "(" plan ("union" | "diff" | "join") plan ")"
//          | "(" plan "ajoin" REL "(" vars ";" vars ")" ")"
//   items := possibly-empty comma list of VAR or VAR ":=" (VAR | CONST)
namespace {
struct PlanToken {
  enum Kind { Ident, Str, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<PlanToken> plan_lex(const std::string& text) {
  std::vector<PlanToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      out.push_back({PlanToken::Ident, text.substr(i, j - i), start});
      i = j;
    } else if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\\') ++j;
        if (j >= text.size())
          throw SyntaxError("unterminated string literal", start);
        value += text[j++];
      }
      if (j >= text.size())
        throw SyntaxError("unterminated string literal", start);
      out.push_back({PlanToken::Str, value, start});
      i = j + 1;
    } else if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back({PlanToken::Sym, ":=", start});
      i += 2;
    } else if (std::string("()[],;=").find(c) != std::string::npos) {
      out.push_back({PlanToken::Sym, std::string(1, c), start});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({PlanToken::End, "", text.size()});
  return out;
}

class PlanCursor {
public:
  explicit PlanCursor(std::vector<PlanToken> tokens)
      : tokens_(std::move(tokens)) {}
  const PlanToken& peek(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  PlanToken next() {
    PlanToken t = peek();
    if (t.kind != PlanToken::End) ++idx_;
    return t;
  }
  bool accept_sym(const std::string& s) {
    if (peek().kind == PlanToken::Sym && peek().text == s) {
      next();
      return true;
    }
    return false;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s))
      throw SyntaxError("expected '" + s + "' in plan text", peek().pos);
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != PlanToken::Ident)
      throw SyntaxError("expected " + what + " in plan text", peek().pos);
    return next().text;
  }

private:
  std::vector<PlanToken> tokens_;
  std::size_t idx_ = 0;
};

std::vector<VarName> parse_plan_vars(PlanCursor& cur) {
  std::vector<VarName> vars;
  while (cur.peek().kind == PlanToken::Ident) {
    vars.push_back(cur.next().text);
    if (!cur.accept_sym(",")) break;
  }
  return vars;
}

PlanPtr parse_plan_rec(PlanCursor& cur) {
  if (cur.peek().kind == PlanToken::Ident) {
    std::string word = cur.next().text;
    if (word == "In") return plan_in();
    if (word == "project") {
      cur.expect_sym("[");
      VarSet keep;
      std::optional<std::pair<VarName, std::variant<VarName, Constant>>> ext;
      while (cur.peek().kind == PlanToken::Ident) {
        VarName v = cur.next().text;
        if (cur.accept_sym(":=")) {
          if (ext)
            throw SyntaxError("multiple := items in one projection",
                              cur.peek().pos);
          if (cur.peek().kind == PlanToken::Str)
            ext = {v, std::variant<VarName, Constant>(
                          std::in_place_index<1>, cur.next().text)};
          else
            ext = {v, std::variant<VarName, Constant>(
                          std::in_place_index<0>,
                          cur.expect_ident("variable"))};
        } else {
          keep.insert(v);
        }
        if (!cur.accept_sym(",")) break;
      }
      cur.expect_sym("]");
      cur.expect_sym("(");
      PlanPtr child = parse_plan_rec(cur);
      cur.expect_sym(")");
      if (!ext) return plan_project(std::move(child), std::move(keep));
      if (ext->second.index() == 0)
        return plan_extend_var(std::move(child), std::move(keep), ext->first,
                               std::get<0>(ext->second));
      return plan_extend_const(std::move(child), std::move(keep), ext->first,
                               std::get<1>(ext->second));
    }
    if (word == "select") {
      cur.expect_sym("[");
      VarName lhs = cur.expect_ident("variable");
      cur.expect_sym("=");
      PlanPtr result;
      if (cur.peek().kind == PlanToken::Str) {
        Constant value = cur.next().text;
        cur.expect_sym("]");
        cur.expect_sym("(");
        PlanPtr child = parse_plan_rec(cur);
        cur.expect_sym(")");
        result = plan_select_const(std::move(child), lhs, value);
      } else {
        VarName rhs = cur.expect_ident("variable");
        cur.expect_sym("]");
        cur.expect_sym("(");
        PlanPtr child = parse_plan_rec(cur);
        cur.expect_sym(")");
        result = plan_select_var(std::move(child), lhs, rhs);
      }
      return result;
    }
    throw SyntaxError("unexpected word '" + word + "' in plan text",
                      cur.peek().pos);
  }
  cur.expect_sym("(");
  if (cur.peek().kind == PlanToken::Ident && cur.peek().text == "let") {
    cur.next();
    std::string name = cur.expect_ident("binding name");
    cur.expect_sym("=");
    PlanPtr bound = parse_plan_rec(cur);
    std::string kw = cur.expect_ident("'in'");
    if (kw != "in") throw SyntaxError("expected 'in'", cur.peek().pos);
    PlanPtr body = parse_plan_rec(cur);
    cur.expect_sym(")");
    return plan_let(std::move(name), std::move(bound), std::move(body));
  }
  PlanPtr lhs = parse_plan_rec(cur);
  std::string op = cur.expect_ident("plan operator");
  PlanPtr result;
  if (op == "union" || op == "diff" || op == "join") {
    PlanPtr rhs = parse_plan_rec(cur);
    result = op == "union"  ? plan_union(std::move(lhs), std::move(rhs))
             : op == "diff" ? plan_diff(std::move(lhs), std::move(rhs))
                            : plan_join(std::move(lhs), std::move(rhs));
  } else if (op == "ajoin") {
    std::string rel = cur.expect_ident("relation name");
    cur.expect_sym("(");
    auto in = parse_plan_vars(cur);
    cur.expect_sym(";");
    auto out = parse_plan_vars(cur);
    cur.expect_sym(")");
    result = plan_access_join(std::move(lhs), std::move(rel), std::move(in),
                              std::move(out));
  } else {
    throw SyntaxError("unknown plan operator '" + op + "'", cur.peek().pos);
  }
  cur.expect_sym(")");
  return result;
}
} // namespace

PlanPtr parse_plan(const std::string& text) {
  PlanCursor cur(plan_lex(text));
  PlanPtr p = parse_plan_rec(cur);
  if (cur.peek().kind != PlanToken::End)
    throw SyntaxError("trailing input after plan", cur.peek().pos);
  return p;
}

} // namespace flif
