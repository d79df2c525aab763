#ifndef FLIF_PRINTER_HPP
#define FLIF_PRINTER_HPP

#include <string>

#include "flif/ast.hpp"

namespace flif {

// Pretty-printers with minimal parentheses.  parse(print(e)) is structurally
// equal to e for both languages.
std::string print_flif(const FlifPtr& e);
std::string print_fo(const FoPtr& f);

std::string quote_constant(const Constant& value);

} // namespace flif

#endif
