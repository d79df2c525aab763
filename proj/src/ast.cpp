#include "flif/ast.hpp"

#include <algorithm>

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

FlifPtr make(FlifExpr::Node node) {
  return std::make_shared<const FlifExpr>(FlifExpr{std::move(node)});
}
FoPtr make(FoFormula::Node node) {
  return std::make_shared<const FoFormula>(FoFormula{std::move(node)});
}
} // namespace

FlifPtr rel_atom(std::string rel, std::vector<VarName> in,
                 std::vector<VarName> out) {
  return make(RelAtom{std::move(rel), std::move(in), std::move(out)});
}
FlifPtr eq_test(VarName lhs, VarName rhs) {
  return make(EqTest{std::move(lhs), std::move(rhs)});
}
FlifPtr const_test(VarName var, Constant value) {
  return make(ConstTest{std::move(var), std::move(value)});
}
FlifPtr assign(VarName target, VarName source) {
  return make(Assign{std::move(target), std::move(source)});
}
FlifPtr const_assign(VarName target, Constant value) {
  return make(ConstAssign{std::move(target), std::move(value)});
}
FlifPtr comp(FlifPtr lhs, FlifPtr rhs) {
  return make(Comp{std::move(lhs), std::move(rhs)});
}
FlifPtr flif_union(FlifPtr lhs, FlifPtr rhs) {
  return make(FlifUnion{std::move(lhs), std::move(rhs)});
}
FlifPtr diff(FlifPtr lhs, FlifPtr rhs) {
  return make(Diff{std::move(lhs), std::move(rhs)});
}

FlifPtr comp_all(const std::vector<FlifPtr>& parts) {
  if (parts.empty()) throw Error("comp_all of an empty part list");
  FlifPtr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = comp(acc, parts[i]);
  return acc;
}

bool structurally_equal(const FlifPtr& a, const FlifPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const RelAtom& x) {
            const auto& y = std::get<RelAtom>(b->node);
            return x.rel == y.rel && x.in == y.in && x.out == y.out;
          },
          [&](const EqTest& x) {
            const auto& y = std::get<EqTest>(b->node);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const ConstTest& x) {
            const auto& y = std::get<ConstTest>(b->node);
            return x.var == y.var && x.value == y.value;
          },
          [&](const Assign& x) {
            const auto& y = std::get<Assign>(b->node);
            return x.target == y.target && x.source == y.source;
          },
          [&](const ConstAssign& x) {
            const auto& y = std::get<ConstAssign>(b->node);
            return x.target == y.target && x.value == y.value;
          },
          [&](const Comp& x) {
            const auto& y = std::get<Comp>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const FlifUnion& x) {
            const auto& y = std::get<FlifUnion>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const Diff& x) {
            const auto& y = std::get<Diff>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
      },
      a->node);
}

bool is_atomic(const FlifPtr& e) {
  return !std::holds_alternative<Comp>(e->node) &&
         !std::holds_alternative<FlifUnion>(e->node) &&
         !std::holds_alternative<Diff>(e->node);
}

namespace {
void collect_vars(const FlifPtr& e, std::vector<VarName>& order,
                  VarSet& seen) {
  auto add = [&](const VarName& v) {
    if (seen.insert(v).second) order.push_back(v);
  };
  std::visit(overloaded{
                 [&](const RelAtom& a) {
                   for (const auto& v : a.in) add(v);
                   for (const auto& v : a.out) add(v);
                 },
                 [&](const EqTest& a) {
                   add(a.lhs);
                   add(a.rhs);
                 },
                 [&](const ConstTest& a) { add(a.var); },
                 [&](const Assign& a) {
                   add(a.target);
                   add(a.source);
                 },
                 [&](const ConstAssign& a) { add(a.target); },
                 [&](const Comp& a) {
                   collect_vars(a.lhs, order, seen);
                   collect_vars(a.rhs, order, seen);
                 },
                 [&](const FlifUnion& a) {
                   collect_vars(a.lhs, order, seen);
                   collect_vars(a.rhs, order, seen);
                 },
                 [&](const Diff& a) {
                   collect_vars(a.lhs, order, seen);
                   collect_vars(a.rhs, order, seen);
                 },
             },
             e->node);
}
} // namespace

VarSet flif_vars(const FlifPtr& e) {
  std::vector<VarName> order;
  VarSet seen;
  collect_vars(e, order, seen);
  return seen;
}

std::vector<VarName> flif_vars_in_order(const FlifPtr& e) {
  std::vector<VarName> order;
  VarSet seen;
  collect_vars(e, order, seen);
  return order;
}

std::set<Constant> flif_constants(const FlifPtr& e) {
  std::set<Constant> out;
  std::visit(overloaded{
                 [&](const RelAtom&) {},
                 [&](const EqTest&) {},
                 [&](const ConstTest& a) { out.insert(a.value); },
                 [&](const Assign&) {},
                 [&](const ConstAssign& a) { out.insert(a.value); },
                 [&](const Comp& a) {
                   auto l = flif_constants(a.lhs), r = flif_constants(a.rhs);
                   out.insert(l.begin(), l.end());
                   out.insert(r.begin(), r.end());
                 },
                 [&](const FlifUnion& a) {
                   auto l = flif_constants(a.lhs), r = flif_constants(a.rhs);
                   out.insert(l.begin(), l.end());
                   out.insert(r.begin(), r.end());
                 },
                 [&](const Diff& a) {
                   auto l = flif_constants(a.lhs), r = flif_constants(a.rhs);
                   out.insert(l.begin(), l.end());
                   out.insert(r.begin(), r.end());
                 },
             },
             e->node);
  return out;
}

std::size_t flif_size(const FlifPtr& e) {
  return std::visit(
      overloaded{
          [&](const Comp& a) { return 1 + flif_size(a.lhs) + flif_size(a.rhs); },
          [&](const FlifUnion& a) {
            return 1 + flif_size(a.lhs) + flif_size(a.rhs);
          },
          [&](const Diff& a) { return 1 + flif_size(a.lhs) + flif_size(a.rhs); },
          [&](const auto&) { return std::size_t{1}; },
      },
      e->node);
}

void validate_flif(const FlifPtr& e, const Schema& schema) {
  std::visit(overloaded{
                 [&](const RelAtom& a) {
                   const RelInfo& info = schema.at(a.rel);
                   if (a.in.size() != info.input_arity ||
                       a.out.size() != info.output_arity())
                     throw ArityMismatchError(
                         "atom " + a.rel + " expects " +
                         std::to_string(info.input_arity) + ";" +
                         std::to_string(info.output_arity()) +
                         " variables, got " + std::to_string(a.in.size()) +
                         ";" + std::to_string(a.out.size()));
                 },
                 [&](const Comp& a) {
                   validate_flif(a.lhs, schema);
                   validate_flif(a.rhs, schema);
                 },
                 [&](const FlifUnion& a) {
                   validate_flif(a.lhs, schema);
                   validate_flif(a.rhs, schema);
                 },
                 [&](const Diff& a) {
                   validate_flif(a.lhs, schema);
                   validate_flif(a.rhs, schema);
                 },
                 [&](const auto&) {},
             },
             e->node);
}

FoPtr fo_rel(std::string rel, std::vector<VarName> in,
             std::vector<VarName> out) {
  return make(FoRel{std::move(rel), std::move(in), std::move(out)});
}
FoPtr fo_eq(VarName lhs, VarName rhs) {
  return make(FoEq{std::move(lhs), std::move(rhs)});
}
FoPtr fo_eq_const(VarName var, Constant value) {
  return make(FoEqConst{std::move(var), std::move(value)});
}
FoPtr fo_and(FoPtr lhs, FoPtr rhs) {
  return make(FoAnd{std::move(lhs), std::move(rhs)});
}
FoPtr fo_or(FoPtr lhs, FoPtr rhs) {
  return make(FoOr{std::move(lhs), std::move(rhs)});
}
FoPtr fo_not(FoPtr body) { return make(FoNot{std::move(body)}); }
FoPtr fo_exists(VarName var, FoPtr body) {
  return make(FoExists{std::move(var), std::move(body)});
}

bool structurally_equal(const FoPtr& a, const FoPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      overloaded{
          [&](const FoRel& x) {
            const auto& y = std::get<FoRel>(b->node);
            return x.rel == y.rel && x.in == y.in && x.out == y.out;
          },
          [&](const FoEq& x) {
            const auto& y = std::get<FoEq>(b->node);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const FoEqConst& x) {
            const auto& y = std::get<FoEqConst>(b->node);
            return x.var == y.var && x.value == y.value;
          },
          [&](const FoAnd& x) {
            const auto& y = std::get<FoAnd>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const FoOr& x) {
            const auto& y = std::get<FoOr>(b->node);
            return structurally_equal(x.lhs, y.lhs) &&
                   structurally_equal(x.rhs, y.rhs);
          },
          [&](const FoNot& x) {
            const auto& y = std::get<FoNot>(b->node);
            return structurally_equal(x.body, y.body);
          },
          [&](const FoExists& x) {
            const auto& y = std::get<FoExists>(b->node);
            return x.var == y.var && structurally_equal(x.body, y.body);
          },
      },
      a->node);
}

VarSet fo_free_vars(const FoPtr& f) {
  return std::visit(
      overloaded{
          [&](const FoRel& a) {
            VarSet out(a.in.begin(), a.in.end());
            out.insert(a.out.begin(), a.out.end());
            return out;
          },
          [&](const FoEq& a) { return VarSet{a.lhs, a.rhs}; },
          [&](const FoEqConst& a) { return VarSet{a.var}; },
          [&](const FoAnd& a) {
            VarSet out = fo_free_vars(a.lhs);
            auto r = fo_free_vars(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoOr& a) {
            VarSet out = fo_free_vars(a.lhs);
            auto r = fo_free_vars(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoNot& a) { return fo_free_vars(a.body); },
          [&](const FoExists& a) {
            VarSet out = fo_free_vars(a.body);
            out.erase(a.var);
            return out;
          },
      },
      f->node);
}

VarSet fo_all_vars(const FoPtr& f) {
  return std::visit(
      overloaded{
          [&](const FoRel& a) {
            VarSet out(a.in.begin(), a.in.end());
            out.insert(a.out.begin(), a.out.end());
            return out;
          },
          [&](const FoEq& a) { return VarSet{a.lhs, a.rhs}; },
          [&](const FoEqConst& a) { return VarSet{a.var}; },
          [&](const FoAnd& a) {
            VarSet out = fo_all_vars(a.lhs);
            auto r = fo_all_vars(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoOr& a) {
            VarSet out = fo_all_vars(a.lhs);
            auto r = fo_all_vars(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoNot& a) { return fo_all_vars(a.body); },
          [&](const FoExists& a) {
            VarSet out = fo_all_vars(a.body);
            out.insert(a.var);
            return out;
          },
      },
      f->node);
}

std::set<Constant> fo_constants(const FoPtr& f) {
  return std::visit(
      overloaded{
          [&](const FoRel&) { return std::set<Constant>{}; },
          [&](const FoEq&) { return std::set<Constant>{}; },
          [&](const FoEqConst& a) { return std::set<Constant>{a.value}; },
          [&](const FoAnd& a) {
            auto out = fo_constants(a.lhs);
            auto r = fo_constants(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoOr& a) {
            auto out = fo_constants(a.lhs);
            auto r = fo_constants(a.rhs);
            out.insert(r.begin(), r.end());
            return out;
          },
          [&](const FoNot& a) { return fo_constants(a.body); },
          [&](const FoExists& a) { return fo_constants(a.body); },
      },
      f->node);
}

std::size_t fo_size(const FoPtr& f) {
  return std::visit(
      overloaded{
          [&](const FoAnd& a) { return 1 + fo_size(a.lhs) + fo_size(a.rhs); },
          [&](const FoOr& a) { return 1 + fo_size(a.lhs) + fo_size(a.rhs); },
          [&](const FoNot& a) { return 1 + fo_size(a.body); },
          [&](const FoExists& a) { return 1 + fo_size(a.body); },
          [&](const auto&) { return std::size_t{1}; },
      },
      f->node);
}

void validate_fo(const FoPtr& f, const Schema& schema) {
  std::visit(overloaded{
                 [&](const FoRel& a) {
                   const RelInfo& info = schema.at(a.rel);
                   if (a.in.size() != info.input_arity ||
                       a.out.size() != info.output_arity())
                     throw ArityMismatchError(
                         "atom " + a.rel + " expects " +
                         std::to_string(info.input_arity) + ";" +
                         std::to_string(info.output_arity()) +
                         " variables, got " + std::to_string(a.in.size()) +
                         ";" + std::to_string(a.out.size()));
                 },
                 [&](const FoAnd& a) {
                   validate_fo(a.lhs, schema);
                   validate_fo(a.rhs, schema);
                 },
                 [&](const FoOr& a) {
                   validate_fo(a.lhs, schema);
                   validate_fo(a.rhs, schema);
                 },
                 [&](const FoNot& a) { validate_fo(a.body, schema); },
                 [&](const FoExists& a) { validate_fo(a.body, schema); },
                 [&](const auto&) {},
             },
             f->node);
}

Renaming::Renaming(std::map<VarName, VarName> mapping)
    : mapping_(std::move(mapping)) {
  std::set<VarName> seen;
  for (const auto& [from, to] : mapping_) {
    (void)from;
    if (!seen.insert(to).second)
      throw BadRenamingError("renaming is not injective: duplicate image " + to);
  }
}

Renaming Renaming::swap_pairs(const std::map<VarName, VarName>& pairs) {
  std::map<VarName, VarName> m;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    m[a] = b;
    m[b] = a;
  }
  return Renaming(std::move(m));
}

const VarName& Renaming::operator()(const VarName& var) const {
  auto it = mapping_.find(var);
  return it == mapping_.end() ? var : it->second;
}

VarSet Renaming::support() const {
  VarSet out;
  for (const auto& [k, v] : mapping_) {
    (void)v;
    out.insert(k);
  }
  return out;
}

VarSet Renaming::image() const {
  VarSet out;
  for (const auto& [k, v] : mapping_) {
    (void)k;
    out.insert(v);
  }
  return out;
}

FlifPtr apply_renaming(const Renaming& theta, const FlifPtr& e) {
  auto ren = [&](const std::vector<VarName>& vs) {
    std::vector<VarName> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(theta(v));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const RelAtom& a) {
            return rel_atom(a.rel, ren(a.in), ren(a.out));
          },
          [&](const EqTest& a) { return eq_test(theta(a.lhs), theta(a.rhs)); },
          [&](const ConstTest& a) { return const_test(theta(a.var), a.value); },
          [&](const Assign& a) {
            return assign(theta(a.target), theta(a.source));
          },
          [&](const ConstAssign& a) {
            return const_assign(theta(a.target), a.value);
          },
          [&](const Comp& a) {
            return comp(apply_renaming(theta, a.lhs),
                        apply_renaming(theta, a.rhs));
          },
          [&](const FlifUnion& a) {
            return flif_union(apply_renaming(theta, a.lhs),
                              apply_renaming(theta, a.rhs));
          },
          [&](const Diff& a) {
            return diff(apply_renaming(theta, a.lhs),
                        apply_renaming(theta, a.rhs));
          },
      },
      e->node);
}

} // namespace flif
