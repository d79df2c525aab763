#include "flif/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace flif {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

enum class Tok {
  Ident, String, LParen, RParen, Comma, Semi, Pipe, PipePipe, Minus,
  Amp, Eq, Walrus, Bang, Dot, End,
};

struct Token {
  Tok kind;
  std::string text; // identifier name or decoded string value
  std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                       text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), start});
      i = j;
      continue;
    }
    if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      while (j < n && text[j] != '"') {
        if (text[j] == '\\') {
          ++j;
          if (j >= n) throw SyntaxError("unterminated string literal", start);
          if (text[j] != '"' && text[j] != '\\')
            throw SyntaxError("unsupported escape in string literal", j);
        }
        value += text[j];
        ++j;
      }
      if (j >= n) throw SyntaxError("unterminated string literal", start);
      out.push_back({Tok::String, value, start});
      i = j + 1;
      continue;
    }
    switch (c) {
    case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
    case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
    case ',': out.push_back({Tok::Comma, ",", start}); ++i; break;
    case ';': out.push_back({Tok::Semi, ";", start}); ++i; break;
    case '-': out.push_back({Tok::Minus, "-", start}); ++i; break;
    case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
    case '=': out.push_back({Tok::Eq, "=", start}); ++i; break;
    case '!': out.push_back({Tok::Bang, "!", start}); ++i; break;
    case '.': out.push_back({Tok::Dot, ".", start}); ++i; break;
    case '|':
      if (i + 1 < n && text[i + 1] == '|') {
        out.push_back({Tok::PipePipe, "||", start});
        i += 2;
      } else {
        out.push_back({Tok::Pipe, "|", start});
        ++i;
      }
      break;
    case ':':
      if (i + 1 < n && text[i + 1] == '=') {
        out.push_back({Tok::Walrus, ":=", start});
        i += 2;
      } else {
        throw SyntaxError("stray ':'", start);
      }
      break;
    default:
      throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", n});
  return out;
}

class Cursor {
public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++idx_;
    return t;
  }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind)
      throw SyntaxError("expected " + what + ", found '" + describe(peek()) +
                            "'",
                        peek().pos);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " (found '" + describe(peek()) + "')", peek().pos);
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : t.text;
  }

private:
  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
};

// Comma-separated, possibly empty variable list; stops at ';' or ')'.
std::vector<VarName> parse_var_list(Cursor& cur) {
  std::vector<VarName> vars;
  if (cur.peek().kind == Tok::Semi || cur.peek().kind == Tok::RParen)
    return vars;
  for (;;) {
    if (cur.peek().kind == Tok::String)
      throw ConstantPlacementError("constant in a variable position",
                                   cur.peek().pos);
    vars.push_back(cur.expect(Tok::Ident, "variable").text);
    if (!cur.accept(Tok::Comma)) break;
  }
  return vars;
}

// --- FLIF -------------------------------------------------------------

FlifPtr parse_flif_expr(Cursor& cur);

FlifPtr parse_flif_atom(Cursor& cur) {
  if (cur.peek().kind == Tok::Ident) {
    std::string rel = cur.next().text;
    cur.expect(Tok::LParen, "'('");
    auto in = parse_var_list(cur);
    cur.expect(Tok::Semi, "';'");
    auto out = parse_var_list(cur);
    cur.expect(Tok::RParen, "')'");
    return rel_atom(std::move(rel), std::move(in), std::move(out));
  }
  if (cur.peek().kind == Tok::LParen) {
    // Test/assignment atoms look like "(x = t)" or "(x := t)"; anything
    // else after '(' is a parenthesized expression.
    if (cur.peek(1).kind == Tok::Ident &&
        (cur.peek(2).kind == Tok::Eq || cur.peek(2).kind == Tok::Walrus)) {
      cur.next(); // '('
      VarName lhs = cur.next().text;
      bool isAssign = cur.next().kind == Tok::Walrus;
      FlifPtr atom;
      if (cur.peek().kind == Tok::String) {
        Constant value = cur.next().text;
        atom = isAssign ? const_assign(lhs, value) : const_test(lhs, value);
      } else {
        VarName rhs = cur.expect(Tok::Ident, "variable or constant").text;
        atom = isAssign ? assign(lhs, rhs) : eq_test(lhs, rhs);
      }
      cur.expect(Tok::RParen, "')'");
      return atom;
    }
    cur.next(); // '('
    FlifPtr inner = parse_flif_expr(cur);
    cur.expect(Tok::RParen, "')'");
    return inner;
  }
  if (cur.peek().kind == Tok::String)
    throw ConstantPlacementError("constant in a variable position",
                                 cur.peek().pos);
  cur.fail("expected an atomic expression");
}

FlifPtr parse_flif_comp(Cursor& cur) {
  FlifPtr acc = parse_flif_atom(cur);
  while (cur.accept(Tok::Semi)) acc = comp(acc, parse_flif_atom(cur));
  return acc;
}

FlifPtr parse_flif_expr(Cursor& cur) {
  FlifPtr acc = parse_flif_comp(cur);
  for (;;) {
    if (cur.accept(Tok::Pipe)) {
      acc = flif_union(acc, parse_flif_comp(cur));
    } else if (cur.accept(Tok::Minus)) {
      acc = diff(acc, parse_flif_comp(cur));
    } else if (cur.accept(Tok::Amp)) {
      // Intersection sugar: a & b == a - (a - b).
      FlifPtr rhs = parse_flif_comp(cur);
      acc = diff(acc, diff(acc, rhs));
    } else {
      return acc;
    }
  }
}

// --- FO ---------------------------------------------------------------

FoPtr parse_fo_formula(Cursor& cur);

FoPtr parse_fo_unary(Cursor& cur) {
  if (cur.accept(Tok::Bang)) return fo_not(parse_fo_unary(cur));
  if (cur.peek().kind == Tok::Ident) {
    if (cur.peek().text == "exists")
      cur.fail("'exists' must be parenthesized in this position");
    std::string name = cur.next().text;
    if (cur.accept(Tok::LParen)) {
      auto in = parse_var_list(cur);
      cur.expect(Tok::Semi, "';'");
      auto out = parse_var_list(cur);
      cur.expect(Tok::RParen, "')'");
      return fo_rel(std::move(name), std::move(in), std::move(out));
    }
    cur.expect(Tok::Eq, "'='");
    if (cur.peek().kind == Tok::String) return fo_eq_const(name, cur.next().text);
    return fo_eq(name, cur.expect(Tok::Ident, "variable or constant").text);
  }
  if (cur.peek().kind == Tok::LParen) {
    cur.next();
    FoPtr inner = parse_fo_formula(cur);
    cur.expect(Tok::RParen, "')'");
    return inner;
  }
  if (cur.peek().kind == Tok::String)
    throw ConstantPlacementError(
        "constant on the left-hand side of an equality", cur.peek().pos);
  cur.fail("expected a formula");
}

FoPtr parse_fo_and(Cursor& cur) {
  FoPtr acc = parse_fo_unary(cur);
  while (cur.accept(Tok::Amp)) acc = fo_and(acc, parse_fo_unary(cur));
  return acc;
}

FoPtr parse_fo_or(Cursor& cur) {
  FoPtr acc = parse_fo_and(cur);
  while (cur.accept(Tok::PipePipe)) acc = fo_or(acc, parse_fo_and(cur));
  return acc;
}

FoPtr parse_fo_formula(Cursor& cur) {
  if (cur.peek().kind == Tok::Ident && cur.peek().text == "exists") {
    cur.next();
    VarName var = cur.expect(Tok::Ident, "variable").text;
    cur.expect(Tok::Dot, "'.'");
    return fo_exists(std::move(var), parse_fo_formula(cur));
  }
  return parse_fo_or(cur);
}

// Hygiene: walk outside-in, renaming any bound variable that collides with
// a free variable or with a bound variable seen before.
FoPtr hygiene_rec(const FoPtr& f, VarSet& taken, int& counter) {
  return std::visit(
      overloaded{
          [&](const FoAnd& a) {
            auto l = hygiene_rec(a.lhs, taken, counter);
            return fo_and(l, hygiene_rec(a.rhs, taken, counter));
          },
          [&](const FoOr& a) {
            auto l = hygiene_rec(a.lhs, taken, counter);
            return fo_or(l, hygiene_rec(a.rhs, taken, counter));
          },
          [&](const FoNot& a) { return fo_not(hygiene_rec(a.body, taken, counter)); },
          [&](const FoExists& a) {
            VarName var = a.var;
            FoPtr body = a.body;
            if (taken.count(var)) {
              VarName fresh;
              do {
                fresh = a.var + "_" + std::to_string(++counter);
              } while (taken.count(fresh));
              body = fo_substitute_var(body, var, fresh);
              var = fresh;
            }
            taken.insert(var);
            return fo_exists(var, hygiene_rec(body, taken, counter));
          },
          [&](const auto&) { return f; },
      },
      f->node);
}
} // namespace

FoPtr fo_substitute_var(const FoPtr& f, const VarName& from, const VarName& to) {
  auto ren = [&](const std::vector<VarName>& vs) {
    std::vector<VarName> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(v == from ? to : v);
    return out;
  };
  auto one = [&](const VarName& v) { return v == from ? to : v; };
  return std::visit(
      overloaded{
          [&](const FoRel& a) { return fo_rel(a.rel, ren(a.in), ren(a.out)); },
          [&](const FoEq& a) { return fo_eq(one(a.lhs), one(a.rhs)); },
          [&](const FoEqConst& a) { return fo_eq_const(one(a.var), a.value); },
          [&](const FoAnd& a) {
            return fo_and(fo_substitute_var(a.lhs, from, to),
                          fo_substitute_var(a.rhs, from, to));
          },
          [&](const FoOr& a) {
            return fo_or(fo_substitute_var(a.lhs, from, to),
                         fo_substitute_var(a.rhs, from, to));
          },
          [&](const FoNot& a) {
            return fo_not(fo_substitute_var(a.body, from, to));
          },
          [&](const FoExists& a) {
            if (a.var == from) return fo_exists(a.var, a.body); // shadowed
            return fo_exists(a.var, fo_substitute_var(a.body, from, to));
          },
      },
      f->node);
}

FoPtr hygiene_normalize(const FoPtr& f) {
  VarSet taken = fo_free_vars(f);
  int counter = 0;
  return hygiene_rec(f, taken, counter);
}

FlifPtr parse_flif(const std::string& text) {
  Cursor cur(lex(text));
  FlifPtr e = parse_flif_expr(cur);
  if (cur.peek().kind != Tok::End) cur.fail("trailing input");
  return e;
}

FoPtr parse_fo(const std::string& text) {
  Cursor cur(lex(text));
  FoPtr f = parse_fo_formula(cur);
  if (cur.peek().kind != Tok::End) cur.fail("trailing input");
  return hygiene_normalize(f);
}

} // namespace flif
