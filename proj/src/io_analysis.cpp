#include "flif/io_analysis.hpp"

#include <algorithm>

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VarSet set_intersect(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

VarSet set_minus(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

VarSet set_symdiff(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()));
  return out;
}

bool is_subset(const VarSet& a, const VarSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IoProfile io_profile(const FlifPtr& e) {
  IoProfile p = std::visit(
      overloaded{
          [&](const RelAtom& a) {
            return IoProfile{VarSet(a.in.begin(), a.in.end()),
                             VarSet(a.out.begin(), a.out.end()),
                             {}};
          },
          [&](const EqTest& a) {
            return IoProfile{{a.lhs, a.rhs}, {}, {}};
          },
          [&](const ConstTest& a) {
            return IoProfile{{a.var}, {}, {}};
          },
          [&](const Assign& a) {
            return IoProfile{{a.source}, {a.target}, {}};
          },
          [&](const ConstAssign& a) {
            return IoProfile{{}, {a.target}, {}};
          },
          [&](const Comp& a) {
            IoProfile l = io_profile(a.lhs), r = io_profile(a.rhs);
            return IoProfile{
                set_union(l.inputs, set_minus(r.inputs, l.outputs)),
                set_union(l.outputs, r.outputs),
                {}};
          },
          [&](const FlifUnion& a) {
            IoProfile l = io_profile(a.lhs), r = io_profile(a.rhs);
            return IoProfile{
                set_union(set_union(l.inputs, r.inputs),
                          set_symdiff(l.outputs, r.outputs)),
                set_union(l.outputs, r.outputs),
                {}};
          },
          [&](const Diff& a) {
            IoProfile l = io_profile(a.lhs), r = io_profile(a.rhs);
            return IoProfile{
                set_union(set_union(l.inputs, r.inputs),
                          set_symdiff(l.outputs, r.outputs)),
                l.outputs,
                {}};
          },
      },
      e->node);
  p.vars = set_union(p.inputs, p.outputs);
  return p;
}

namespace {
// Structural conditions equivalent to "every subexpression beta has
// I(beta) and O(beta) disjoint".  A self-assignment (x := x) has
// I = O = {x}, so it is the one atomic form that can fail.
IoCheck check_io(const FlifPtr& e) {
  return std::visit(
      overloaded{
          [&](const RelAtom& a) -> IoCheck {
            VarSet in(a.in.begin(), a.in.end());
            VarSet out(a.out.begin(), a.out.end());
            if (!set_intersect(in, out).empty()) return {false, e};
            return {true, nullptr};
          },
          [&](const EqTest&) -> IoCheck { return {true, nullptr}; },
          [&](const ConstTest&) -> IoCheck { return {true, nullptr}; },
          [&](const Assign& a) -> IoCheck {
            if (a.target == a.source) return {false, e};
            return {true, nullptr};
          },
          [&](const ConstAssign&) -> IoCheck { return {true, nullptr}; },
          [&](const Comp& a) -> IoCheck {
            if (auto l = check_io(a.lhs); !l.ok) return l;
            if (auto r = check_io(a.rhs); !r.ok) return r;
            if (!set_intersect(io_profile(a.lhs).inputs,
                               io_profile(a.rhs).outputs)
                     .empty())
              return {false, e};
            return {true, nullptr};
          },
          [&](const FlifUnion& a) -> IoCheck {
            if (auto l = check_io(a.lhs); !l.ok) return l;
            if (auto r = check_io(a.rhs); !r.ok) return r;
            if (io_profile(a.lhs).outputs != io_profile(a.rhs).outputs)
              return {false, e};
            return {true, nullptr};
          },
          [&](const Diff& a) -> IoCheck {
            if (auto l = check_io(a.lhs); !l.ok) return l;
            if (auto r = check_io(a.rhs); !r.ok) return r;
            if (!is_subset(io_profile(a.lhs).outputs,
                           io_profile(a.rhs).outputs))
              return {false, e};
            return {true, nullptr};
          },
      },
      e->node);
}
} // namespace

IoCheck is_io_disjoint(const FlifPtr& e) { return check_io(e); }

namespace {
ExecCheck exec_rec(const FoPtr& f, const VarSet& v) {
  return std::visit(
      overloaded{
          [&](const FoEq& a) -> ExecCheck {
            if (v.count(a.lhs) || v.count(a.rhs)) return {true, nullptr};
            return {false, f};
          },
          [&](const FoEqConst&) -> ExecCheck { return {true, nullptr}; },
          [&](const FoRel& a) -> ExecCheck {
            for (const VarName& x : a.in)
              if (!v.count(x)) return {false, f};
            return {true, nullptr};
          },
          [&](const FoNot& a) -> ExecCheck {
            if (auto b = exec_rec(a.body, v); !b.ok) return b;
            if (!is_subset(fo_free_vars(a.body), v)) return {false, f};
            return {true, nullptr};
          },
          [&](const FoAnd& a) -> ExecCheck {
            if (auto l = exec_rec(a.lhs, v); !l.ok) return l;
            VarSet v2 = set_union(v, fo_free_vars(a.lhs));
            if (auto r = exec_rec(a.rhs, v2); !r.ok) return r;
            return {true, nullptr};
          },
          [&](const FoOr& a) -> ExecCheck {
            if (auto l = exec_rec(a.lhs, v); !l.ok) return l;
            if (auto r = exec_rec(a.rhs, v); !r.ok) return r;
            if (!is_subset(set_symdiff(fo_free_vars(a.lhs),
                                       fo_free_vars(a.rhs)),
                           v))
              return {false, f};
            return {true, nullptr};
          },
          [&](const FoExists& a) -> ExecCheck {
            VarSet v2 = v;
            v2.erase(a.var);
            if (auto b = exec_rec(a.body, v2); !b.ok) return b;
            return {true, nullptr};
          },
      },
      f->node);
}
} // namespace

ExecCheck exec_check(const FoPtr& f, const VarSet& inputs) {
  return exec_rec(f, inputs);
}

} // namespace flif
