#include "flif/printer.hpp"

#include <sstream>

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string join_vars(const std::vector<VarName>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ",";
    out += vars[i];
  }
  return out;
}

// Precedence levels, loosest to tightest.
// FLIF: 0 = set operations, 1 = composition, 2 = atom.
void print_flif_rec(const FlifPtr& e, int level, std::string& out) {
  std::visit(
      overloaded{
          [&](const RelAtom& a) {
            out += a.rel + "(" + join_vars(a.in) + ";" + join_vars(a.out) + ")";
          },
          [&](const EqTest& a) { out += "(" + a.lhs + " = " + a.rhs + ")"; },
          [&](const ConstTest& a) {
            out += "(" + a.var + " = " + quote_constant(a.value) + ")";
          },
          [&](const Assign& a) {
            out += "(" + a.target + " := " + a.source + ")";
          },
          [&](const ConstAssign& a) {
            out += "(" + a.target + " := " + quote_constant(a.value) + ")";
          },
          [&](const Comp& a) {
            bool parens = level > 1;
            if (parens) out += "(";
            print_flif_rec(a.lhs, 1, out);
            out += " ; ";
            print_flif_rec(a.rhs, 2, out);
            if (parens) out += ")";
          },
          [&](const FlifUnion& a) {
            bool parens = level > 0;
            if (parens) out += "(";
            print_flif_rec(a.lhs, 0, out);
            out += " | ";
            print_flif_rec(a.rhs, 1, out);
            if (parens) out += ")";
          },
          [&](const Diff& a) {
            bool parens = level > 0;
            if (parens) out += "(";
            print_flif_rec(a.lhs, 0, out);
            out += " - ";
            print_flif_rec(a.rhs, 1, out);
            if (parens) out += ")";
          },
      },
      e->node);
}

// FO: 0 = exists, 1 = disjunction, 2 = conjunction, 3 = unary.
void print_fo_rec(const FoPtr& f, int level, std::string& out) {
  std::visit(
      overloaded{
          [&](const FoRel& a) {
            out += a.rel + "(" + join_vars(a.in) + ";" + join_vars(a.out) + ")";
          },
          [&](const FoEq& a) {
            bool parens = level > 3;
            if (parens) out += "(";
            out += a.lhs + " = " + a.rhs;
            if (parens) out += ")";
          },
          [&](const FoEqConst& a) {
            bool parens = level > 3;
            if (parens) out += "(";
            out += a.var + " = " + quote_constant(a.value);
            if (parens) out += ")";
          },
          [&](const FoAnd& a) {
            bool parens = level > 2;
            if (parens) out += "(";
            print_fo_rec(a.lhs, 2, out);
            out += " & ";
            print_fo_rec(a.rhs, 3, out);
            if (parens) out += ")";
          },
          [&](const FoOr& a) {
            bool parens = level > 1;
            if (parens) out += "(";
            print_fo_rec(a.lhs, 1, out);
            out += " || ";
            print_fo_rec(a.rhs, 2, out);
            if (parens) out += ")";
          },
          [&](const FoNot& a) {
            out += "!";
            print_fo_rec(a.body, 4, out);
          },
          [&](const FoExists& a) {
            bool parens = level > 0;
            if (parens) out += "(";
            out += "exists " + a.var + ". ";
            print_fo_rec(a.body, 0, out);
            if (parens) out += ")";
          },
      },
      f->node);
}
} // namespace

std::string quote_constant(const Constant& value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

std::string print_flif(const FlifPtr& e) {
  std::string out;
  print_flif_rec(e, 0, out);
  return out;
}

std::string print_fo(const FoPtr& f) {
  std::string out;
  print_fo_rec(f, 0, out);
  return out;
}

} // namespace flif
