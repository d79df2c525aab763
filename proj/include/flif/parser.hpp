#ifndef FLIF_PARSER_HPP
#define FLIF_PARSER_HPP

#include <string>

#include "flif/ast.hpp"

namespace flif {

// FLIF concrete grammar (composition binds tighter than the set operations,
// everything is left-associative):
//
//   expr := comp (("|" | "-" | "&") comp)*
//   comp := atom (";" atom)*
//   atom := REL "(" vars ";" vars ")"
//         | "(" VAR "=" (VAR | CONST) ")"
//         | "(" VAR ":=" (VAR | CONST) ")"
//         | "(" expr ")"
//
// "&" is intersection sugar: a & b parses as a - (a - b).
FlifPtr parse_flif(const std::string& text);

// Executable-FO grammar (precedence ! > & > ||; "exists x." extends
// maximally to the right):
//
//   fo := "exists" VAR "." fo | or
//   or := and ("||" and)*
//   and := un ("&" un)*
//   un := "!" un | REL "(" vars ";" vars ")" | VAR "=" (VAR | CONST) | "(" fo ")"
//
// Bound variables are hygiene-renamed at parse time so that no bound
// variable shadows another bound or a free variable.
FoPtr parse_fo(const std::string& text);

// The hygiene normalization applied by parse_fo, usable on constructed
// formulas as well.
FoPtr hygiene_normalize(const FoPtr& f);

// Capture-respecting renaming of free occurrences of `from` to `to`.
FoPtr fo_substitute_var(const FoPtr& f, const VarName& from, const VarName& to);

} // namespace flif

#endif
