#include "flif/eval.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "flif/printer.hpp"

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// Extends `base` with the output bindings of one retrieved tuple.  Repeated
// output variables must receive equal values within the tuple, otherwise the
// tuple contributes nothing (nullopt).
std::optional<Valuation> bind_outputs(const Valuation& base,
                                      const std::vector<VarName>& outs,
                                      const Tuple& values) {
  std::map<VarName, Constant> fresh;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    auto [it, inserted] = fresh.emplace(outs[i], values[i]);
    if (!inserted && it->second != values[i]) return std::nullopt;
  }
  Valuation out = base;
  for (const auto& [var, value] : fresh) out = out.extend(var, value);
  return out;
}

ValuationSet eval_rec(const FlifPtr& e, const VarSet& v, const Instance& db,
                      const Valuation& input) {
  ValuationSet result(v);
  std::visit(
      overloaded{
          [&](const RelAtom& a) {
            Tuple t1;
            t1.reserve(a.in.size());
            for (const VarName& x : a.in) t1.push_back(input(x));
            for (const Tuple& t2 : db.access(a.rel, t1))
              if (auto row = bind_outputs(input, a.out, t2))
                result.insert(std::move(*row));
          },
          [&](const EqTest& a) {
            if (input(a.lhs) == input(a.rhs)) result.insert(input);
          },
          [&](const ConstTest& a) {
            if (input(a.var) == a.value) result.insert(input);
          },
          [&](const Assign& a) {
            result.insert(input.extend(a.target, input(a.source)));
          },
          [&](const ConstAssign& a) {
            result.insert(input.extend(a.target, a.value));
          },
          [&](const Comp& a) {
            ValuationSet mids = eval_rec(a.lhs, v, db, input);
            for (const Valuation& mid : mids.rows()) {
              ValuationSet outs = eval_rec(a.rhs, v, db, mid);
              for (const Valuation& out : outs.rows()) result.insert(out);
            }
          },
          [&](const FlifUnion& a) {
            ValuationSet lhs = eval_rec(a.lhs, v, db, input);
            for (const Valuation& out : lhs.rows()) result.insert(out);
            ValuationSet rhs = eval_rec(a.rhs, v, db, input);
            for (const Valuation& out : rhs.rows()) result.insert(out);
          },
          [&](const Diff& a) {
            // Pair-set difference restricted to left endpoint `input`.
            ValuationSet rhs = eval_rec(a.rhs, v, db, input);
            ValuationSet lhs = eval_rec(a.lhs, v, db, input);
            for (const Valuation& out : lhs.rows())
              if (!rhs.contains(out)) result.insert(out);
          },
      },
      e->node);
  return result;
}
} // namespace

ValuationSet eval_flif_v(const FlifPtr& e, const VarSet& v, const Instance& db,
                         const Valuation& input) {
  if (!is_subset(flif_vars(e), v))
    throw SchemaError("expression uses variables outside V");
  if (input.domain() != v)
    throw UnboundInputError("input valuation is not total on V");
  validate_flif(e, db.schema());
  return eval_rec(e, v, db, input);
}

ValuationSet eval_flif_padded(const FlifPtr& e, const Instance& db,
                              const Valuation& input,
                              const Constant& padding) {
  IoProfile p = io_profile(e);
  if (input.domain() != p.inputs)
    throw InputDomainMismatchError(
        "input valuation must be total on exactly I(alpha)");
  Valuation padded = input;
  for (const VarName& x : set_minus(p.vars, p.inputs))
    padded = padded.extend(x, padding);
  ValuationSet wide = eval_flif_v(e, p.vars, db, padded);
  ValuationSet out(p.vars);
  for (const Valuation& row : wide.rows()) out.insert(row);
  return out;
}

ValuationSet eval_flif(const FlifPtr& e, const Instance& db,
                       const Valuation& input) {
  return eval_flif_padded(e, db, input, kPadding);
}

namespace {
ValuationSet exfo_rec(const FoPtr& f, const VarSet& v, const Instance& db,
                      const Valuation& input) {
  VarSet schema = set_union(v, fo_free_vars(f));
  ValuationSet result(schema);
  std::visit(
      overloaded{
          [&](const FoRel& a) {
            Tuple t1;
            t1.reserve(a.in.size());
            for (const VarName& x : a.in) t1.push_back(input(x));
            for (const Tuple& t2 : db.access(a.rel, t1)) {
              // Output positions bound in V act as filters; unbound ones
              // extend the row.  Repeats must be consistent.
              std::map<VarName, Constant> fresh;
              bool ok = true;
              for (std::size_t i = 0; i < a.out.size() && ok; ++i) {
                const VarName& y = a.out[i];
                if (input.defines(y)) {
                  ok = input(y) == t2[i];
                } else {
                  auto [it, inserted] = fresh.emplace(y, t2[i]);
                  if (!inserted) ok = it->second == t2[i];
                }
              }
              if (!ok) continue;
              Valuation row = input;
              for (const auto& [var, value] : fresh)
                row = row.extend(var, value);
              result.insert(std::move(row));
            }
          },
          [&](const FoEq& a) {
            bool lb = input.defines(a.lhs), rb = input.defines(a.rhs);
            if (lb && rb) {
              if (input(a.lhs) == input(a.rhs)) result.insert(input);
            } else if (lb) {
              result.insert(input.extend(a.rhs, input(a.lhs)));
            } else if (rb) {
              result.insert(input.extend(a.lhs, input(a.rhs)));
            } else {
              throw NotExecutableError(print_fo(f));
            }
          },
          [&](const FoEqConst& a) {
            if (input.defines(a.var)) {
              if (input(a.var) == a.value) result.insert(input);
            } else {
              result.insert(input.extend(a.var, a.value));
            }
          },
          [&](const FoAnd& a) {
            VarSet v2 = set_union(v, fo_free_vars(a.lhs));
            ValuationSet lhs = exfo_rec(a.lhs, v, db, input);
            for (const Valuation& mid : lhs.rows()) {
              ValuationSet rhs = exfo_rec(a.rhs, v2, db, mid);
              for (const Valuation& row : rhs.rows()) result.insert(row);
            }
          },
          [&](const FoOr& a) {
            // FV(lhs) symdiff FV(rhs) is within V, so both branches produce
            // rows on the same schema.
            ValuationSet lhs = exfo_rec(a.lhs, v, db, input);
            for (const Valuation& row : lhs.rows()) result.insert(row);
            ValuationSet rhs = exfo_rec(a.rhs, v, db, input);
            for (const Valuation& row : rhs.rows()) result.insert(row);
          },
          [&](const FoNot& a) {
            // FV(body) is within V, so the body evaluation is a pure test.
            if (exfo_rec(a.body, v, db, input).empty()) result.insert(input);
          },
          [&](const FoExists& a) {
            VarSet innerV = v;
            innerV.erase(a.var);
            Valuation innerInput =
                input.defines(a.var) ? input.restrict(innerV) : input;
            ValuationSet body = exfo_rec(a.body, innerV, db, innerInput);
            for (const Valuation& row : body.rows()) {
              Valuation projected = row.restrict(set_minus(
                  row.domain(), VarSet{a.var}));
              if (v.count(a.var))
                projected = projected.extend(a.var, input(a.var));
              result.insert(std::move(projected));
            }
          },
      },
      f->node);
  return result;
}
} // namespace

ValuationSet eval_exfo(const FoPtr& f, const VarSet& v, const Instance& db,
                       const Valuation& input) {
  if (auto check = exec_check(f, v); !check.ok)
    throw NotExecutableError(print_fo(check.witness));
  if (input.domain() != v)
    throw UnboundInputError("input valuation is not total on V");
  validate_fo(f, db.schema());
  return exfo_rec(f, v, db, input);
}

namespace {
bool in_sem_rec(const FlifPtr& e, const VarSet& v, const Instance& db,
                const Valuation& nu1, const Valuation& nu2,
                const std::set<Constant>& candidates) {
  return std::visit(
      overloaded{
          [&](const RelAtom& a) {
            VarSet outs(a.out.begin(), a.out.end());
            if (!nu1.agrees_outside(nu2, outs)) return false;
            Tuple t;
            t.reserve(a.in.size() + a.out.size());
            for (const VarName& x : a.in) t.push_back(nu1(x));
            for (const VarName& y : a.out) t.push_back(nu2(y));
            return db.relation(a.rel).count(t) > 0;
          },
          [&](const EqTest& a) {
            return nu1 == nu2 && nu1(a.lhs) == nu1(a.rhs);
          },
          [&](const ConstTest& a) { return nu1 == nu2 && nu1(a.var) == a.value; },
          [&](const Assign& a) {
            return nu2 == nu1.extend(a.target, nu1(a.source));
          },
          [&](const ConstAssign& a) {
            return nu2 == nu1.extend(a.target, a.value);
          },
          [&](const FlifUnion& a) {
            return in_sem_rec(a.lhs, v, db, nu1, nu2, candidates) ||
                   in_sem_rec(a.rhs, v, db, nu1, nu2, candidates);
          },
          [&](const Diff& a) {
            return in_sem_rec(a.lhs, v, db, nu1, nu2, candidates) &&
                   !in_sem_rec(a.rhs, v, db, nu1, nu2, candidates);
          },
          [&](const Comp& a) {
            // The intermediate valuation agrees with nu1 outside O(lhs)
            // (inertia), and on O(lhs) it can only hold values from the
            // candidate set: every value produced along a path comes from a
            // retrieved tuple (adom), an assigned constant of the
            // expression, or is copied from nu1.  Values of nu2 are included
            // for symmetry with the enumeration bound.
            VarSet changeable = set_intersect(io_profile(a.lhs).outputs, v);
            std::vector<VarName> order(changeable.begin(), changeable.end());
            std::vector<Constant> cand(candidates.begin(), candidates.end());
            std::function<bool(std::size_t, Valuation)> search =
                [&](std::size_t i, Valuation mid) -> bool {
              if (i == order.size())
                return in_sem_rec(a.lhs, v, db, nu1, mid, candidates) &&
                       in_sem_rec(a.rhs, v, db, mid, nu2, candidates);
              for (const Constant& c : cand)
                if (search(i + 1, mid.extend(order[i], c))) return true;
              return false;
            };
            return search(0, nu1);
          },
      },
      e->node);
}
} // namespace

bool in_sem(const FlifPtr& e, const VarSet& v, const Instance& db,
            const Valuation& nu1, const Valuation& nu2) {
  if (!is_subset(flif_vars(e), v))
    throw SchemaError("expression uses variables outside V");
  if (nu1.domain() != v || nu2.domain() != v)
    throw UnboundInputError("valuations must be total on V");
  validate_flif(e, db.schema());
  std::set<Constant> candidates = db.adom();
  auto r1 = nu1.range(), r2 = nu2.range();
  candidates.insert(r1.begin(), r1.end());
  candidates.insert(r2.begin(), r2.end());
  auto consts = flif_constants(e);
  candidates.insert(consts.begin(), consts.end());
  return in_sem_rec(e, v, db, nu1, nu2, candidates);
}

} // namespace flif
