#ifndef FLIF_ERRORS_HPP
#define FLIF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flif {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Concrete syntax errors; `pos` is a 0-based offset into the input text.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), pos(pos) {}
  std::size_t pos;
};

// A constant literal in a position where only a variable is allowed.
class ConstantPlacementError : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

class UnknownRelationError : public SchemaError {
public:
  explicit UnknownRelationError(const std::string& rel)
      : SchemaError("unknown relation: " + rel) {}
};

class ArityMismatchError : public SchemaError {
public:
  using SchemaError::SchemaError;
};

// Valuation operations on incompatible domains.
class DomainMismatchError : public Error {
public:
  using Error::Error;
};

// Valuation lookup outside its domain, or eval input not total on V.
class UnboundInputError : public Error {
public:
  using Error::Error;
};

// eval input valuation domain differs from I(alpha).
class InputDomainMismatchError : public Error {
public:
  using Error::Error;
};

// Formula not V-executable; `witness` is the printed failing subformula.
class NotExecutableError : public Error {
public:
  NotExecutableError(const std::string& witness)
      : Error("formula is not executable for the given variables; witness: " +
              witness),
        witness(witness) {}
  std::string witness;
};

// Expression not io-disjoint; `witness` is the printed failing subexpression.
class NotIoDisjointError : public Error {
public:
  NotIoDisjointError(const std::string& witness)
      : Error("expression is not io-disjoint; witness: " + witness),
        witness(witness) {}
  std::string witness;
};

// Renaming not injective, or its image overlaps the expression variables.
class BadRenamingError : public Error {
public:
  using Error::Error;
};

// Plan does not type-check; message names the offending node.
class PlanTypeError : public Error {
public:
  using Error::Error;
};

// Brute-force enumeration would exceed its budget.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

// File / JSON input problems.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace flif

#endif
