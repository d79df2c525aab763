#ifndef FLIF_ORACLE_HPP
#define FLIF_ORACLE_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "flif/ast.hpp"

namespace flif {

using ValuationPair = std::pair<Valuation, Valuation>;
using PairSet = std::set<ValuationPair>;

// Brute-force enumeration of the pair semantics over a finite candidate
// domain.  Structurally independent of the set-at-a-time evaluator: atomic
// pair relations are enumerated directly from the definition, operators are
// plain operations on pair sets, and composition is an explicit join on the
// intermediate valuation.  candidate_dom must cover adom(D) and the
// constants of the expression; |candidate_dom|^|V| is capped at 1000 so the
// enumerated pair space stays within 10^6.
PairSet brute_pairs(const FlifPtr& e, const VarSet& v, const Instance& db,
                    const std::set<Constant>& candidate_dom);

// All valuations on `vars` over `dom`, in lexicographic order.
std::vector<Valuation> all_valuations(const VarSet& vars,
                                      const std::set<Constant>& dom);

// ---------------------------------------------------------------------------
// Randomized generators.  Generation is a pure function of (config, seed).
// ---------------------------------------------------------------------------

struct GenConfig {
  std::size_t max_relations = 3;
  std::size_t max_arity = 3;
  std::size_t max_adom = 5;
  std::size_t max_depth = 4;
  std::uint64_t seed = 0;
};

using Rng = std::mt19937_64;

struct GeneratedInstance {
  Schema schema;
  std::shared_ptr<Instance> db;
};

GeneratedInstance gen_instance(const GenConfig& cfg, Rng& rng);

// Arbitrary FLIF expression over the schema and a small variable pool.
FlifPtr gen_flif(const GenConfig& cfg, const Schema& schema, Rng& rng);
FlifPtr gen_flif(const GenConfig& cfg, const Schema& schema, Rng& rng,
                 const std::vector<VarName>& pool);

// Io-disjoint FLIF expression: atoms draw disjoint input/output variable
// pools, union branches are padded so their output sets coincide, and
// difference right branches are padded so O(lhs) is contained in O(rhs).
FlifPtr gen_flif_io(const GenConfig& cfg, const Schema& schema, Rng& rng);
FlifPtr gen_flif_io(const GenConfig& cfg, const Schema& schema, Rng& rng,
                    const std::vector<VarName>& pool);

Valuation gen_valuation(const VarSet& vars, const std::set<Constant>& dom,
                        Rng& rng);

// The variable pool the expression generators draw from.
std::vector<VarName> gen_var_pool();

} // namespace flif

#endif
