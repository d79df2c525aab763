#include "flif/translate.hpp"

#include <algorithm>

#include "flif/parser.hpp"
#include "flif/printer.hpp"

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

VarName FreshVarSource::fresh(const std::string& base) {
  int& k = counters_[base];
  for (;;) {
    ++k;
    VarName candidate = base + "_" + std::to_string(k);
    if (!forbidden_.count(candidate)) {
      forbidden_.insert(candidate);
      return candidate;
    }
  }
}

// --- Executable FO -> FLIF ----------------------------------------------

namespace {
FlifPtr exfo_rec(const FoPtr& f, const VarSet& v, FreshVarSource& source,
                 std::map<VarName, VarName>& freshMap) {
  return std::visit(
      overloaded{
          [&](const FoRel& a) -> FlifPtr {
            // Output positions holding input-bound variables are redirected
            // to fresh variables; an equality chain then compares them with
            // the bound originals.
            std::map<VarName, VarName> replaced; // original -> fresh
            std::vector<VarName> outs;
            std::vector<std::pair<VarName, VarName>> eqChain; // (fresh, orig)
            for (const VarName& y : a.out) {
              if (!v.count(y)) {
                outs.push_back(y);
                continue;
              }
              auto it = replaced.find(y);
              if (it == replaced.end()) {
                VarName z = source.fresh(y);
                freshMap.emplace(z, y);
                it = replaced.emplace(y, z).first;
                eqChain.emplace_back(z, y);
              }
              outs.push_back(it->second);
            }
            FlifPtr acc = rel_atom(a.rel, a.in, std::move(outs));
            for (const auto& [z, y] : eqChain) acc = comp(acc, eq_test(z, y));
            return acc;
          },
          [&](const FoEq& a) -> FlifPtr { return eq_test(a.lhs, a.rhs); },
          [&](const FoEqConst& a) -> FlifPtr {
            return const_test(a.var, a.value);
          },
          [&](const FoAnd& a) -> FlifPtr {
            FlifPtr lhs = exfo_rec(a.lhs, v, source, freshMap);
            VarSet v2 = set_union(v, fo_free_vars(a.lhs));
            return comp(lhs, exfo_rec(a.rhs, v2, source, freshMap));
          },
          [&](const FoOr& a) -> FlifPtr {
            return flif_union(exfo_rec(a.lhs, v, source, freshMap),
                              exfo_rec(a.rhs, v, source, freshMap));
          },
          [&](const FoExists& a) -> FlifPtr {
            if (!v.count(a.var))
              return exfo_rec(a.body, v, source, freshMap);
            // The bound variable collides with an input; alpha-rename it.
            VarName renamed = source.fresh(a.var);
            return exfo_rec(fo_substitute_var(a.body, a.var, renamed), v,
                            source, freshMap);
          },
          [&](const FoNot& a) -> FlifPtr {
            FlifPtr inner = exfo_rec(a.body, v, source, freshMap);
            VarSet scratch = set_minus(flif_vars(inner), v);
            if (scratch.empty()) {
              VarName extra = source.fresh("u");
              freshMap.emplace(extra, "");
              scratch.insert(extra);
            }
            std::vector<FlifPtr> resets;
            for (const VarName& z : scratch)
              resets.push_back(const_assign(z, kDesignated));
            FlifPtr xi = comp_all(resets);
            return diff(xi, comp(inner, xi));
          },
      },
      f->node);
}
} // namespace

Fo2FlifResult exfo_to_flif(const FoPtr& f, const VarSet& inputs) {
  if (auto check = exec_check(f, inputs); !check.ok)
    throw NotExecutableError(print_fo(check.witness));
  FreshVarSource source(set_union(fo_all_vars(f), inputs));
  Fo2FlifResult result;
  result.expr = exfo_rec(f, inputs, source, result.fresh_map);
  return result;
}

// --- FLIF -> FO over three variable copies -------------------------------

namespace {
enum class Copy { X = 0, Y = 1, Z = 2 };

struct CopyNames {
  std::vector<VarName> names[3]; // indexed by Copy
  std::map<VarName, std::size_t> indexOf;

  const VarName& map(Copy c, const VarName& original) const {
    return names[static_cast<int>(c)][indexOf.at(original)];
  }
};

FoPtr conj(FoPtr acc, FoPtr next) {
  return acc ? fo_and(std::move(acc), std::move(next)) : next;
}

FoPtr fo3n_rec(const FlifPtr& e, Copy u, Copy v, const CopyNames& copies) {
  const auto& vx = copies.names[0];
  auto mu = [&](const VarName& a) { return copies.map(u, a); };
  auto mv = [&](const VarName& a) { return copies.map(v, a); };
  // Frame equalities mu(c) = mv(c) for every c of V_x outside `exclude`.
  auto frame = [&](FoPtr acc, const VarSet& exclude) {
    for (const VarName& c : vx)
      if (!exclude.count(c)) acc = conj(std::move(acc), fo_eq(mu(c), mv(c)));
    return acc;
  };
  return std::visit(
      overloaded{
          [&](const RelAtom& a) -> FoPtr {
            std::vector<VarName> in, out;
            for (const VarName& x : a.in) in.push_back(mu(x));
            for (const VarName& y : a.out) out.push_back(mv(y));
            return frame(fo_rel(a.rel, std::move(in), std::move(out)),
                         VarSet(a.out.begin(), a.out.end()));
          },
          [&](const EqTest& a) -> FoPtr {
            return frame(fo_eq(mu(a.lhs), mu(a.rhs)), {});
          },
          [&](const ConstTest& a) -> FoPtr {
            return frame(fo_eq_const(mu(a.var), a.value), {});
          },
          [&](const Assign& a) -> FoPtr {
            return frame(fo_eq(mv(a.target), mu(a.source)), {a.target});
          },
          [&](const ConstAssign& a) -> FoPtr {
            return frame(fo_eq_const(mv(a.target), a.value), {a.target});
          },
          [&](const FlifUnion& a) -> FoPtr {
            return fo_or(fo3n_rec(a.lhs, u, v, copies),
                         fo3n_rec(a.rhs, u, v, copies));
          },
          [&](const Diff& a) -> FoPtr {
            return fo_and(fo3n_rec(a.lhs, u, v, copies),
                          fo_not(fo3n_rec(a.rhs, u, v, copies)));
          },
          [&](const Comp& a) -> FoPtr {
            Copy w = Copy(3 - static_cast<int>(u) - static_cast<int>(v));
            FoPtr body = fo_and(fo3n_rec(a.lhs, u, w, copies),
                                fo3n_rec(a.rhs, w, v, copies));
            const auto& wNames = copies.names[static_cast<int>(w)];
            for (auto it = wNames.rbegin(); it != wNames.rend(); ++it)
              body = fo_exists(*it, std::move(body));
            return body;
          },
      },
      e->node);
}
} // namespace

Fo3nResult flif_to_exfo_3n(const FlifPtr& e, const std::vector<VarName>& v_x) {
  VarSet given(v_x.begin(), v_x.end());
  if (given.size() != v_x.size())
    throw Error("V_x contains a duplicate variable");
  if (!is_subset(flif_vars(e), given))
    throw Error("expression uses variables outside V_x");

  CopyNames copies;
  copies.names[0] = v_x;
  for (std::size_t i = 0; i < v_x.size(); ++i) copies.indexOf[v_x[i]] = i;
  // The y/z copies are named positionally (y1, z1, ...), deviating to
  // suffixed fresh names only on a clash with V_x.
  FreshVarSource source(given);
  for (int c = 1; c <= 2; ++c) {
    const char* prefix = c == 1 ? "y" : "z";
    for (std::size_t i = 0; i < v_x.size(); ++i) {
      VarName name = prefix + std::to_string(i + 1);
      if (given.count(name)) name = source.fresh(name);
      given.insert(name);
      copies.names[c].push_back(name);
    }
  }

  Fo3nResult result;
  result.formula = fo3n_rec(e, Copy::X, Copy::Y, copies);
  result.input_copy = copies.names[0];
  result.output_copy = copies.names[1];
  return result;
}

// --- Io-disjoint FLIF -> executable FO -----------------------------------

FoPtr flifio_to_exfo(const FlifPtr& e) {
  if (auto check = is_io_disjoint(e); !check.ok)
    throw NotIoDisjointError(print_flif(check.witness));
  return std::visit(
      overloaded{
          [&](const RelAtom& a) -> FoPtr { return fo_rel(a.rel, a.in, a.out); },
          [&](const EqTest& a) -> FoPtr { return fo_eq(a.lhs, a.rhs); },
          [&](const ConstTest& a) -> FoPtr {
            return fo_eq_const(a.var, a.value);
          },
          [&](const Assign& a) -> FoPtr { return fo_eq(a.target, a.source); },
          [&](const ConstAssign& a) -> FoPtr {
            return fo_eq_const(a.target, a.value);
          },
          [&](const Comp& a) -> FoPtr {
            FoPtr lhs = flifio_to_exfo(a.lhs);
            VarSet shared = set_intersect(io_profile(a.lhs).outputs,
                                          io_profile(a.rhs).outputs);
            for (auto it = shared.rbegin(); it != shared.rend(); ++it)
              lhs = fo_exists(*it, std::move(lhs));
            return fo_and(std::move(lhs), flifio_to_exfo(a.rhs));
          },
          [&](const FlifUnion& a) -> FoPtr {
            return fo_or(flifio_to_exfo(a.lhs), flifio_to_exfo(a.rhs));
          },
          [&](const Diff& a) -> FoPtr {
            return fo_and(flifio_to_exfo(a.lhs), fo_not(flifio_to_exfo(a.rhs)));
          },
      },
      e->node);
}

// --- FLIF -> io-disjoint FLIF ---------------------------------------------

namespace {
// The restriction of rho to `vars`.
Renaming restrict_renaming(const Renaming& rho, const VarSet& vars) {
  std::map<VarName, VarName> m;
  for (const VarName& v : vars) m.emplace(v, rho(v));
  return Renaming(std::move(m));
}

std::vector<VarName> sorted(const VarSet& s) {
  return std::vector<VarName>(s.begin(), s.end());
}

// First element of `eligible` in order of first occurrence in `e`.
VarName earliest_occurrence(const VarSet& eligible, const FlifPtr& e) {
  for (const VarName& v : flif_vars_in_order(e))
    if (eligible.count(v)) return v;
  throw Error("no eligible reset variable");
}

FlifPtr seq(std::vector<FlifPtr> parts) {
  std::vector<FlifPtr> nonempty;
  for (auto& p : parts)
    if (p) nonempty.push_back(std::move(p));
  return comp_all(nonempty);
}

struct RewriteContext {
  FreshVarSource fresh;
};

FlifPtr rewrite_rec(const FlifPtr& e, const VarSet& w, const Renaming& rho,
                    RewriteContext& ctx);

// Composition of (rho2(y) := y) for y in `vars`, in lexicographic order;
// null when `vars` is empty.
FlifPtr save_chain(const Renaming& rho, const VarSet& vars) {
  if (vars.empty()) return nullptr;
  std::vector<FlifPtr> parts;
  for (const VarName& y : sorted(vars)) parts.push_back(assign(rho(y), y));
  return comp_all(parts);
}

// Composition of (y := z) for y in `vars`; null when empty.
FlifPtr reset_chain(const VarSet& vars, const VarName& z) {
  if (vars.empty()) return nullptr;
  std::vector<FlifPtr> parts;
  for (const VarName& y : sorted(vars)) parts.push_back(assign(y, z));
  return comp_all(parts);
}

FlifPtr rewrite_comp(const Comp& a, const FlifPtr& whole, const VarSet& w,
                     const Renaming& rho, RewriteContext& ctx) {
  const VarSet vars = flif_vars(whole);
  IoProfile p1 = io_profile(a.lhs), p2 = io_profile(a.rhs);

  // Right part first: it keeps rho on its own outputs.
  VarSet w2 = set_union(set_union(w, vars), [&] {
    VarSet im;
    for (const VarName& y : p1.outputs) im.insert(rho(y));
    return im;
  }());
  Renaming rho2 = restrict_renaming(rho, p2.outputs);
  FlifPtr beta2 = rewrite_rec(a.rhs, w2, rho2, ctx);

  // rho1 deviates from rho exactly on outputs of the left part that the
  // right part both reads and overwrites.
  VarSet deviate =
      set_intersect(set_intersect(p1.outputs, p2.outputs), p2.inputs);
  ctx.fresh.forbid(set_union(vars, set_union(flif_vars(beta2), rho.image())));
  ctx.fresh.forbid(w);
  std::map<VarName, VarName> rho1map;
  for (const VarName& y : p1.outputs)
    rho1map.emplace(y, deviate.count(y) ? ctx.fresh.fresh(y) : rho(y));
  Renaming rho1(std::move(rho1map));

  VarSet w1 = set_union(w, vars);
  FlifPtr beta1 = rewrite_rec(a.lhs, w1, rho1, ctx);

  // theta swaps each intermediate y with rho1(y), feeding the left part's
  // renamed outputs into the right part's inputs.
  std::map<VarName, VarName> swaps;
  for (const VarName& y : set_intersect(p2.inputs, p1.outputs))
    swaps.emplace(y, rho1(y));
  Renaming theta = Renaming::swap_pairs(swaps);
  return comp(beta1, apply_renaming(theta, beta2));
}

FlifPtr rewrite_union(const FlifUnion& a, const FlifPtr& whole, const VarSet& w,
                      const Renaming& rho, RewriteContext& ctx) {
  const VarSet vars = flif_vars(whole);
  IoProfile p1 = io_profile(a.lhs), p2 = io_profile(a.rhs);

  VarSet w1 = set_union(set_union(w, vars), [&] {
    VarSet im;
    for (const VarName& y : p2.outputs) im.insert(rho(y));
    return im;
  }());
  FlifPtr beta1 = rewrite_rec(a.lhs, w1, restrict_renaming(rho, p1.outputs), ctx);

  VarSet w2 = set_union(set_union(w, vars), io_profile(beta1).outputs);
  FlifPtr beta2 = rewrite_rec(a.rhs, w2, restrict_renaming(rho, p2.outputs), ctx);

  VarSet beta1Outs = io_profile(beta1).outputs;
  VarSet beta2Outs = io_profile(beta2).outputs;
  VarSet rho1Image, rho2Image;
  for (const VarName& y : p1.outputs) rho1Image.insert(rho(y));
  for (const VarName& y : p2.outputs) rho2Image.insert(rho(y));
  VarSet inter1 = set_minus(beta1Outs, rho1Image); // intermediates of beta1
  VarSet inter2 = set_minus(beta2Outs, rho2Image);

  // gamma_i copies the outputs missing from branch i; eta_i resets the other
  // branch's intermediates to a value available in branch i.
  FlifPtr gamma1 = save_chain(rho, set_minus(p2.outputs, p1.outputs));
  FlifPtr gamma2 = save_chain(rho, set_minus(p1.outputs, p2.outputs));
  FlifPtr eta1 = nullptr, eta2 = nullptr;
  if (!inter2.empty()) {
    VarName z = beta1Outs.empty() ? earliest_occurrence(flif_vars(a.rhs), a.rhs)
                                  : *beta1Outs.begin();
    eta1 = reset_chain(inter2, z);
  }
  if (!inter1.empty()) {
    VarName z = beta2Outs.empty() ? earliest_occurrence(flif_vars(a.lhs), a.lhs)
                                  : *beta2Outs.begin();
    eta2 = reset_chain(inter1, z);
  }
  return flif_union(seq({beta1, eta1, gamma1}), seq({beta2, eta2, gamma2}));
}

FlifPtr rewrite_diff(const Diff& a, const FlifPtr& whole, const VarSet& w,
                     const Renaming& rho, RewriteContext& ctx) {
  const VarSet vars = flif_vars(whole);
  IoProfile p1 = io_profile(a.lhs), p2 = io_profile(a.rhs);

  VarSet w1 = set_union(w, vars);
  FlifPtr beta1 = rewrite_rec(a.lhs, w1, rho, ctx); // O(whole) = O(lhs)

  VarSet shared = set_intersect(p1.outputs, p2.outputs);
  VarSet w2 = set_union(w1, io_profile(beta1).outputs);
  ctx.fresh.forbid(w2);
  ctx.fresh.forbid(rho.image());
  std::map<VarName, VarName> rho2map;
  for (const VarName& y : p2.outputs)
    rho2map.emplace(y, shared.count(y) ? rho(y) : ctx.fresh.fresh(y));
  Renaming rho2(std::move(rho2map));
  FlifPtr beta2 = rewrite_rec(a.rhs, w2, rho2, ctx);

  VarSet beta1Outs = io_profile(beta1).outputs;
  VarSet beta2Outs = io_profile(beta2).outputs;
  VarSet rho1Image, rho2Image;
  for (const VarName& y : p1.outputs) rho1Image.insert(rho(y));
  for (const VarName& y : p2.outputs) rho2Image.insert(rho2(y));
  VarSet inter1 = set_minus(beta1Outs, rho1Image);
  VarSet inter2 = set_minus(beta2Outs, rho2Image);
  VarSet sharedImage;
  for (const VarName& y : shared) sharedImage.insert(rho(y));

  FlifPtr gamma1 = save_chain(rho2, set_minus(p2.outputs, p1.outputs));
  FlifPtr gamma2 = save_chain(rho, set_minus(p1.outputs, p2.outputs));
  // Difference is sensitive to every variable, so the resets appear on both
  // sides and must target a value computable on both.
  FlifPtr eta1 = nullptr, eta2 = nullptr;
  if (!inter2.empty()) {
    VarName z = !shared.empty() ? *sharedImage.begin()
                                : earliest_occurrence(flif_vars(a.rhs), a.rhs);
    eta1 = reset_chain(inter2, z);
  }
  if (!inter1.empty()) {
    VarName z = !shared.empty() ? *sharedImage.begin()
                                : earliest_occurrence(flif_vars(a.lhs), a.lhs);
    eta2 = reset_chain(inter1, z);
  }
  return diff(seq({beta1, eta1, eta2, gamma1}), seq({beta2, eta1, eta2, gamma2}));
}

FlifPtr rewrite_rec(const FlifPtr& e, const VarSet& w, const Renaming& rho,
                    RewriteContext& ctx) {
  if (flif_vars(e).empty()) return e; // nullary: unchanged
  return std::visit(
      overloaded{
          [&](const RelAtom& a) -> FlifPtr {
            std::vector<VarName> outs;
            for (const VarName& y : a.out) outs.push_back(rho(y));
            return rel_atom(a.rel, a.in, std::move(outs));
          },
          [&](const EqTest&) -> FlifPtr { return e; },
          [&](const ConstTest&) -> FlifPtr { return e; },
          [&](const Assign& a) -> FlifPtr {
            return assign(rho(a.target), a.source);
          },
          [&](const ConstAssign& a) -> FlifPtr {
            return const_assign(rho(a.target), a.value);
          },
          [&](const Comp& a) -> FlifPtr {
            return rewrite_comp(a, e, w, rho, ctx);
          },
          [&](const FlifUnion& a) -> FlifPtr {
            return rewrite_union(a, e, w, rho, ctx);
          },
          [&](const Diff& a) -> FlifPtr {
            return rewrite_diff(a, e, w, rho, ctx);
          },
      },
      e->node);
}
} // namespace

FlifPtr rewrite_io_disjoint(const FlifPtr& e, const Renaming& rho,
                            const VarSet& forbidden) {
  IoProfile profile = io_profile(e);
  if (rho.support() != profile.outputs)
    throw BadRenamingError("renaming must be defined on exactly O(alpha)");
  if (!set_intersect(rho.image(), profile.vars).empty())
    throw BadRenamingError("renaming image overlaps vars(alpha)");

  RewriteContext ctx;
  ctx.fresh.forbid(forbidden);
  ctx.fresh.forbid(profile.vars);
  ctx.fresh.forbid(rho.image());
  FlifPtr beta = rewrite_rec(e, forbidden, rho, ctx);

  // Contract assertions (always on, not only under test).
  IoProfile betaProfile = io_profile(beta);
  if (!is_io_disjoint(beta).ok)
    throw Error("internal: rewrite produced a non-io-disjoint expression");
  if (betaProfile.inputs != profile.inputs)
    throw Error("internal: rewrite changed the input variables");
  VarSet rhoImage;
  for (const VarName& y : profile.outputs) rhoImage.insert(rho(y));
  if (!is_subset(rhoImage, betaProfile.outputs))
    throw Error("internal: rewrite lost a renamed output");
  if (!set_intersect(set_minus(betaProfile.outputs, rhoImage), forbidden)
           .empty())
    throw Error("internal: rewrite used a forbidden auxiliary variable");
  return beta;
}

FlifPtr rewrite_io_disjoint(const FlifPtr& e, const Renaming& rho) {
  return rewrite_io_disjoint(e, rho,
                             set_union(flif_vars(e), rho.image()));
}

} // namespace flif
