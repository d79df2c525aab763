#ifndef FLIF_CORE_HPP
#define FLIF_CORE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "flif/errors.hpp"

namespace flif {

// Constants are opaque strings: equality is exact text equality, there is
// no numeric coercion ("1" != "01").
using Constant = std::string;
using VarName = std::string;
using Tuple = std::vector<Constant>;
using VarSet = std::set<VarName>;

// Reserved constants.  kPadding fills output slots when extending an input
// valuation to the full variable set; kDesignated is the fixed constant used
// by the negation and reset translations.  Both are rejected in data files.
inline const Constant kPadding = "⊥";       // "⊥"
inline const Constant kDesignated = "⊥c";   // "⊥c"

bool is_identifier(const std::string& s);

// Relation signature: arity and input arity, with iar <= arity.
struct RelInfo {
  std::size_t arity = 0;
  std::size_t input_arity = 0;
  std::size_t output_arity() const { return arity - input_arity; }
  bool operator==(const RelInfo&) const = default;
};

class Schema {
public:
  Schema() = default;

  void declare(const std::string& name, std::size_t arity,
               std::size_t input_arity);
  bool has(const std::string& name) const;
  const RelInfo& at(const std::string& name) const; // throws UnknownRelation
  const std::map<std::string, RelInfo>& entries() const { return entries_; }

private:
  std::map<std::string, RelInfo> entries_;
};

// A finite database instance.  Relations are duplicate-free sets of tuples.
// Immutable once built; retrieval goes through access(), which respects the
// limited access pattern (an input-prefix hash index backs it).
class Instance {
public:
  explicit Instance(Schema schema);

  // Inserts one tuple; duplicates are silently absorbed.
  void insert(const std::string& rel, Tuple tuple);
  void freeze(); // builds the access index; insert() is rejected afterwards

  const Schema& schema() const { return schema_; }
  const std::set<Tuple>& relation(const std::string& rel) const;

  // All o-tuples t2 with t1 . t2 in D(R).  |t1| must equal iar(R).
  std::set<Tuple> access(const std::string& rel, const Tuple& input) const;

  // The set of constants occurring in any tuple of any relation.
  std::set<Constant> adom() const;

private:
  Schema schema_;
  std::map<std::string, std::set<Tuple>> relations_;
  std::map<std::string, std::map<Tuple, std::set<Tuple>>> index_;
  bool frozen_ = false;
};

// A total mapping from a finite variable set to constants.  Lookups outside
// the domain throw; there are no silent defaults.
class Valuation {
public:
  Valuation() = default;
  explicit Valuation(std::map<VarName, Constant> bindings)
      : bindings_(std::move(bindings)) {}

  static Valuation on(const VarSet& domain, const Constant& value);

  bool defines(const VarName& var) const { return bindings_.count(var) > 0; }
  const Constant& operator()(const VarName& var) const;

  VarSet domain() const;
  std::size_t size() const { return bindings_.size(); }
  const std::map<VarName, Constant>& bindings() const { return bindings_; }

  // nu[x := c]
  Valuation extend(const VarName& var, const Constant& value) const;
  // Restriction to Y; Y must be a subset of the domain.
  Valuation restrict(const VarSet& vars) const;
  std::set<Constant> range() const;

  bool agrees_on(const Valuation& other, const VarSet& vars) const;
  // Agreement on domain \ vars; both valuations must share a domain.
  bool agrees_outside(const Valuation& other, const VarSet& vars) const;

  auto operator<=>(const Valuation&) const = default;

private:
  std::map<VarName, Constant> bindings_;
};

// A set of valuations all sharing a domain; the relation view of a
// valuation set (variables as attributes).
class ValuationSet {
public:
  ValuationSet() = default;
  explicit ValuationSet(VarSet schema) : schema_(std::move(schema)) {}

  const VarSet& schema() const { return schema_; }
  const std::set<Valuation>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  bool contains(const Valuation& row) const { return rows_.count(row) > 0; }

  void insert(Valuation row); // row domain must equal the schema

  bool operator==(const ValuationSet&) const = default;

private:
  VarSet schema_;
  std::set<Valuation> rows_;
};

} // namespace flif

#endif
