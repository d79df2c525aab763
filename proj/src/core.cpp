#include "flif/core.hpp"

#include <algorithm>
#include <cctype>

namespace flif {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void Schema::declare(const std::string& name, std::size_t arity,
                     std::size_t input_arity) {
  if (!is_identifier(name))
    throw SchemaError("relation name is not a valid identifier: " + name);
  if (input_arity > arity)
    throw SchemaError("input arity exceeds arity for relation " + name);
  auto [it, fresh] = entries_.emplace(name, RelInfo{arity, input_arity});
  if (!fresh && !(it->second == RelInfo{arity, input_arity}))
    throw SchemaError("conflicting redeclaration of relation " + name);
}

bool Schema::has(const std::string& name) const {
  return entries_.count(name) > 0;
}

const RelInfo& Schema::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnknownRelationError(name);
  return it->second;
}

Instance::Instance(Schema schema) : schema_(std::move(schema)) {
  for (const auto& [name, info] : schema_.entries()) {
    (void)info;
    relations_[name];
  }
}

void Instance::insert(const std::string& rel, Tuple tuple) {
  if (frozen_) throw SchemaError("instance is frozen");
  const RelInfo& info = schema_.at(rel);
  if (tuple.size() != info.arity)
    throw ArityMismatchError("tuple of length " + std::to_string(tuple.size()) +
                             " inserted into " + rel + " of arity " +
                             std::to_string(info.arity));
  relations_[rel].insert(std::move(tuple));
}

void Instance::freeze() {
  if (frozen_) return;
  for (const auto& [rel, tuples] : relations_) {
    const RelInfo& info = schema_.at(rel);
    auto& idx = index_[rel];
    for (const Tuple& t : tuples) {
      Tuple prefix(t.begin(), t.begin() + info.input_arity);
      Tuple suffix(t.begin() + info.input_arity, t.end());
      idx[std::move(prefix)].insert(std::move(suffix));
    }
  }
  frozen_ = true;
}

const std::set<Tuple>& Instance::relation(const std::string& rel) const {
  auto it = relations_.find(rel);
  if (it == relations_.end()) throw UnknownRelationError(rel);
  return it->second;
}

std::set<Tuple> Instance::access(const std::string& rel,
                                 const Tuple& input) const {
  const RelInfo& info = schema_.at(rel);
  if (input.size() != info.input_arity)
    throw ArityMismatchError("access to " + rel + " expects " +
                             std::to_string(info.input_arity) +
                             " input values, got " +
                             std::to_string(input.size()));
  if (frozen_) {
    auto relIt = index_.find(rel);
    if (relIt != index_.end()) {
      auto it = relIt->second.find(input);
      if (it != relIt->second.end()) return it->second;
    }
    return {};
  }
  std::set<Tuple> out;
  for (const Tuple& t : relation(rel)) {
    if (std::equal(input.begin(), input.end(), t.begin()))
      out.insert(Tuple(t.begin() + info.input_arity, t.end()));
  }
  return out;
}

std::set<Constant> Instance::adom() const {
  std::set<Constant> out;
  for (const auto& [rel, tuples] : relations_)
    for (const Tuple& t : tuples) out.insert(t.begin(), t.end());
  return out;
}

Valuation Valuation::on(const VarSet& domain, const Constant& value) {
  std::map<VarName, Constant> b;
  for (const VarName& v : domain) b.emplace(v, value);
  return Valuation(std::move(b));
}

const Constant& Valuation::operator()(const VarName& var) const {
  auto it = bindings_.find(var);
  if (it == bindings_.end())
    throw UnboundInputError("variable not in valuation domain: " + var);
  return it->second;
}

VarSet Valuation::domain() const {
  VarSet out;
  for (const auto& [k, v] : bindings_) {
    (void)v;
    out.insert(k);
  }
  return out;
}

Valuation Valuation::extend(const VarName& var, const Constant& value) const {
  auto b = bindings_;
  b[var] = value;
  return Valuation(std::move(b));
}

Valuation Valuation::restrict(const VarSet& vars) const {
  std::map<VarName, Constant> b;
  for (const VarName& v : vars) {
    auto it = bindings_.find(v);
    if (it == bindings_.end())
      throw DomainMismatchError("restriction to variable outside domain: " + v);
    b.emplace(v, it->second);
  }
  return Valuation(std::move(b));
}

std::set<Constant> Valuation::range() const {
  std::set<Constant> out;
  for (const auto& [k, v] : bindings_) {
    (void)k;
    out.insert(v);
  }
  return out;
}

bool Valuation::agrees_on(const Valuation& other, const VarSet& vars) const {
  for (const VarName& v : vars)
    if ((*this)(v) != other(v)) return false;
  return true;
}

bool Valuation::agrees_outside(const Valuation& other, const VarSet& vars) const {
  if (domain() != other.domain())
    throw DomainMismatchError(
        "agree_outside requires valuations on the same domain");
  for (const auto& [k, v] : bindings_)
    if (!vars.count(k) && v != other(k)) return false;
  return true;
}

void ValuationSet::insert(Valuation row) {
  if (row.domain() != schema_)
    throw DomainMismatchError("row domain does not match valuation-set schema");
  rows_.insert(std::move(row));
}

} // namespace flif
