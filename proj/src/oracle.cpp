#include "flif/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "flif/io_analysis.hpp"

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

std::vector<Valuation> all_valuations(const VarSet& vars,
                                      const std::set<Constant>& dom) {
  std::vector<Valuation> out;
  std::vector<VarName> order(vars.begin(), vars.end());
  std::vector<Constant> values(dom.begin(), dom.end());
  out.push_back(Valuation{});
  for (const VarName& var : order) {
    std::vector<Valuation> next;
    next.reserve(out.size() * values.size());
    for (const Valuation& base : out)
      for (const Constant& c : values) next.push_back(base.extend(var, c));
    out = std::move(next);
  }
  return out;
}

namespace {
void check_budget(const VarSet& v, const std::set<Constant>& dom) {
  double count = std::pow(static_cast<double>(dom.size()),
                          static_cast<double>(v.size()));
  if (count > 1000.0)
    throw BudgetExceededError(
        "candidate valuation space too large for brute enumeration");
}

PairSet brute_rec(const FlifPtr& e, const VarSet& v, const Instance& db,
                  const std::set<Constant>& dom) {
  PairSet out;
  std::visit(
      overloaded{
          [&](const RelAtom& a) {
            // Definition: nu1(xbar) . nu2(ybar) in D(R) and nu1, nu2 agree
            // outside the variables of ybar.
            VarSet outs(a.out.begin(), a.out.end());
            for (const Valuation& nu1 : all_valuations(v, dom)) {
              for (const Tuple& t : db.relation(a.rel)) {
                bool match = true;
                for (std::size_t i = 0; i < a.in.size() && match; ++i)
                  match = nu1(a.in[i]) == t[i];
                if (!match) continue;
                std::map<VarName, Constant> outVals;
                bool ok = true;
                for (std::size_t i = 0; i < a.out.size() && ok; ++i) {
                  auto [it, inserted] =
                      outVals.emplace(a.out[i], t[a.in.size() + i]);
                  if (!inserted) ok = it->second == t[a.in.size() + i];
                }
                if (!ok) continue;
                Valuation nu2 = nu1;
                bool inDom = true;
                for (const auto& [var, value] : outVals) {
                  if (!dom.count(value)) inDom = false;
                  nu2 = nu2.extend(var, value);
                }
                if (inDom) out.emplace(nu1, nu2);
              }
            }
          },
          [&](const EqTest& a) {
            for (const Valuation& nu : all_valuations(v, dom))
              if (nu(a.lhs) == nu(a.rhs)) out.emplace(nu, nu);
          },
          [&](const ConstTest& a) {
            for (const Valuation& nu : all_valuations(v, dom))
              if (nu(a.var) == a.value) out.emplace(nu, nu);
          },
          [&](const Assign& a) {
            for (const Valuation& nu : all_valuations(v, dom))
              out.emplace(nu, nu.extend(a.target, nu(a.source)));
          },
          [&](const ConstAssign& a) {
            for (const Valuation& nu : all_valuations(v, dom))
              out.emplace(nu, nu.extend(a.target, a.value));
          },
          [&](const Comp& a) {
            PairSet lhs = brute_rec(a.lhs, v, db, dom);
            PairSet rhs = brute_rec(a.rhs, v, db, dom);
            std::map<Valuation, std::vector<const Valuation*>> bySource;
            for (const auto& [mid, target] : rhs)
              bySource[mid].push_back(&target);
            for (const auto& [source, mid] : lhs) {
              auto it = bySource.find(mid);
              if (it == bySource.end()) continue;
              for (const Valuation* target : it->second)
                out.emplace(source, *target);
            }
          },
          [&](const FlifUnion& a) {
            out = brute_rec(a.lhs, v, db, dom);
            PairSet rhs = brute_rec(a.rhs, v, db, dom);
            out.insert(rhs.begin(), rhs.end());
          },
          [&](const Diff& a) {
            PairSet lhs = brute_rec(a.lhs, v, db, dom);
            PairSet rhs = brute_rec(a.rhs, v, db, dom);
            std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                std::inserter(out, out.end()));
          },
      },
      e->node);
  return out;
}
} // namespace

PairSet brute_pairs(const FlifPtr& e, const VarSet& v, const Instance& db,
                    const std::set<Constant>& candidate_dom) {
  if (!is_subset(flif_vars(e), v))
    throw SchemaError("expression uses variables outside V");
  auto consts = flif_constants(e);
  if (!std::includes(candidate_dom.begin(), candidate_dom.end(),
                     consts.begin(), consts.end()))
    throw SchemaError("candidate domain misses constants of the expression");
  check_budget(v, candidate_dom);
  validate_flif(e, db.schema());
  return brute_rec(e, v, db, candidate_dom);
}

// --- Generators --------------------------------------------------------

namespace {
std::size_t pick(Rng& rng, std::size_t bound) { // uniform in [0, bound)
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

template <typename T>
T pick_one(Rng& rng, const std::vector<T>& items) {
  return items[pick(rng, items.size())];
}
} // namespace

std::vector<VarName> gen_var_pool() { return {"x", "y", "z", "u", "v", "w"}; }

GeneratedInstance gen_instance(const GenConfig& cfg, Rng& rng) {
  Schema schema;
  std::size_t nRels = 1 + pick(rng, cfg.max_relations);
  for (std::size_t i = 0; i < nRels; ++i) {
    std::size_t arity = 1 + pick(rng, cfg.max_arity);
    std::size_t iar = pick(rng, arity + 1);
    schema.declare("R" + std::to_string(i), arity, iar);
  }
  std::vector<Constant> dom;
  std::size_t nConst = 1 + pick(rng, cfg.max_adom);
  for (std::size_t i = 1; i <= nConst; ++i)
    dom.push_back(std::to_string(i));
  auto db = std::make_shared<Instance>(schema);
  for (const auto& [rel, info] : schema.entries()) {
    std::size_t nTuples = pick(rng, 2 * nConst + 1);
    for (std::size_t i = 0; i < nTuples; ++i) {
      Tuple t;
      for (std::size_t j = 0; j < info.arity; ++j)
        t.push_back(pick_one(rng, dom));
      db->insert(rel, std::move(t));
    }
  }
  db->freeze();
  return {schema, db};
}

namespace {
std::vector<std::string> relation_names(const Schema& schema) {
  std::vector<std::string> out;
  for (const auto& [name, info] : schema.entries()) {
    (void)info;
    out.push_back(name);
  }
  return out;
}

std::vector<Constant> gen_const_pool(const GenConfig& cfg) {
  std::vector<Constant> out;
  for (std::size_t i = 1; i <= cfg.max_adom; ++i)
    out.push_back(std::to_string(i));
  return out;
}

FlifPtr gen_flif_rec(const GenConfig& cfg, const Schema& schema, Rng& rng,
                     const std::vector<VarName>& pool,
                     const std::vector<Constant>& consts, std::size_t depth) {
  std::size_t kind = depth == 0 ? pick(rng, 5) : pick(rng, 8);
  switch (kind) {
  case 0: { // relation atom
    const std::string rel = pick_one(rng, relation_names(schema));
    const RelInfo& info = schema.at(rel);
    std::vector<VarName> in, out;
    for (std::size_t i = 0; i < info.input_arity; ++i)
      in.push_back(pick_one(rng, pool));
    for (std::size_t i = 0; i < info.output_arity(); ++i)
      out.push_back(pick_one(rng, pool));
    return rel_atom(rel, std::move(in), std::move(out));
  }
  case 1:
    return eq_test(pick_one(rng, pool), pick_one(rng, pool));
  case 2:
    return const_test(pick_one(rng, pool), pick_one(rng, consts));
  case 3:
    return assign(pick_one(rng, pool), pick_one(rng, pool));
  case 4:
    return const_assign(pick_one(rng, pool), pick_one(rng, consts));
  case 5:
    return comp(gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1),
                gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1));
  case 6:
    return flif_union(gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1),
                      gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1));
  default:
    return diff(gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1),
                gen_flif_rec(cfg, schema, rng, pool, consts, depth - 1));
  }
}

// Prefixes `e` with constant assignments so its output set grows by `add`.
// Assignments are composed in front, which never breaks io-disjointness:
// their input set is empty.
FlifPtr pad_outputs_front(const FlifPtr& e, const VarSet& add,
                          const std::vector<Constant>& consts, Rng& rng) {
  FlifPtr acc = e;
  for (auto it = add.rbegin(); it != add.rend(); ++it)
    acc = comp(const_assign(*it, pick_one(rng, consts)), acc);
  return acc;
}

FlifPtr gen_flif_io_rec(const GenConfig& cfg, const Schema& schema, Rng& rng,
                        const std::vector<VarName>& pool,
                        const std::vector<Constant>& consts, std::size_t depth,
                        const VarSet& banned_out) {
  std::vector<VarName> outPool;
  for (const VarName& v : pool)
    if (!banned_out.count(v)) outPool.push_back(v);

  std::vector<std::size_t> kinds = {0, 1, 2};
  if (!outPool.empty()) {
    kinds.push_back(3);
    kinds.push_back(4);
  }
  if (depth > 0) {
    kinds.push_back(5);
    kinds.push_back(6);
    kinds.push_back(7);
  }
  std::size_t kind = pick_one(rng, kinds);
  switch (kind) {
  case 0: { // relation atom with disjoint input/output variable sets
    std::vector<std::string> rels;
    for (const std::string& rel : relation_names(schema)) {
      const RelInfo& info = schema.at(rel);
      if (info.output_arity() == 0 || !outPool.empty()) rels.push_back(rel);
    }
    if (rels.empty()) return eq_test(pick_one(rng, pool), pick_one(rng, pool));
    const std::string rel = pick_one(rng, rels);
    const RelInfo& info = schema.at(rel);
    std::vector<VarName> out;
    VarSet outSet;
    for (std::size_t i = 0; i < info.output_arity(); ++i) {
      const VarName y = pick_one(rng, outPool);
      out.push_back(y);
      outSet.insert(y);
    }
    std::vector<VarName> inPool;
    for (const VarName& v : pool)
      if (!outSet.count(v)) inPool.push_back(v);
    std::vector<VarName> in;
    for (std::size_t i = 0; i < info.input_arity; ++i)
      in.push_back(pick_one(rng, inPool));
    return rel_atom(rel, std::move(in), std::move(out));
  }
  case 1:
    return eq_test(pick_one(rng, pool), pick_one(rng, pool));
  case 2:
    return const_test(pick_one(rng, pool), pick_one(rng, consts));
  case 3: { // (x := y) with x distinct from y and not banned
    const VarName target = pick_one(rng, outPool);
    std::vector<VarName> srcPool;
    for (const VarName& v : pool)
      if (v != target) srcPool.push_back(v);
    return assign(target, pick_one(rng, srcPool));
  }
  case 4:
    return const_assign(pick_one(rng, outPool), pick_one(rng, consts));
  case 5: { // composition: rhs must not write into lhs inputs
    FlifPtr lhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, banned_out);
    VarSet rhsBan = set_union(banned_out, io_profile(lhs).inputs);
    FlifPtr rhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, rhsBan);
    return comp(lhs, rhs);
  }
  case 6: { // union: pad both branches to a common output set
    FlifPtr lhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, banned_out);
    FlifPtr rhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, banned_out);
    VarSet lo = io_profile(lhs).outputs, ro = io_profile(rhs).outputs;
    lhs = pad_outputs_front(lhs, set_minus(ro, lo), consts, rng);
    rhs = pad_outputs_front(rhs, set_minus(lo, ro), consts, rng);
    return flif_union(lhs, rhs);
  }
  default: { // difference: pad rhs so O(lhs) is contained in O(rhs)
    FlifPtr lhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, banned_out);
    FlifPtr rhs =
        gen_flif_io_rec(cfg, schema, rng, pool, consts, depth - 1, banned_out);
    VarSet lo = io_profile(lhs).outputs, ro = io_profile(rhs).outputs;
    rhs = pad_outputs_front(rhs, set_minus(lo, ro), consts, rng);
    return diff(lhs, rhs);
  }
  }
}
} // namespace

FlifPtr gen_flif(const GenConfig& cfg, const Schema& schema, Rng& rng) {
  return gen_flif_rec(cfg, schema, rng, gen_var_pool(), gen_const_pool(cfg),
                      cfg.max_depth);
}

FlifPtr gen_flif(const GenConfig& cfg, const Schema& schema, Rng& rng,
                 const std::vector<VarName>& pool) {
  return gen_flif_rec(cfg, schema, rng, pool, gen_const_pool(cfg),
                      cfg.max_depth);
}

FlifPtr gen_flif_io(const GenConfig& cfg, const Schema& schema, Rng& rng) {
  return gen_flif_io_rec(cfg, schema, rng, gen_var_pool(), gen_const_pool(cfg),
                         cfg.max_depth, {});
}

FlifPtr gen_flif_io(const GenConfig& cfg, const Schema& schema, Rng& rng,
                    const std::vector<VarName>& pool) {
  return gen_flif_io_rec(cfg, schema, rng, pool, gen_const_pool(cfg),
                         cfg.max_depth, {});
}

Valuation gen_valuation(const VarSet& vars, const std::set<Constant>& dom,
                        Rng& rng) {
  std::vector<Constant> values(dom.begin(), dom.end());
  Valuation out;
  for (const VarName& v : vars) out = out.extend(v, pick_one(rng, values));
  return out;
}

} // namespace flif
