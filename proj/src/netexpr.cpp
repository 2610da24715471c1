#include "gfcalc/netexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "gfcalc/error.hpp"

namespace gfcalc {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(pos, what);
  }
  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }
  double number() {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* stop = nullptr;
    const double v = std::strtod(begin, &stop);
    if (stop == begin) throw ParseError(pos, "expected a number");
    pos += static_cast<std::size_t>(stop - begin);
    return v;
  }
  bool at_ident() { return std::isalpha(static_cast<unsigned char>(peek())); }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
};

struct Parser {
  Lexer lex;

  NetRule expr() {
    NetRule acc = term();
    while (true) {
      if (lex.accept('+')) {
        NetRule rhs = term();
        acc = [acc, rhs](double e) { return acc(e) + rhs(e); };
      } else if (lex.accept('-')) {
        NetRule rhs = term();
        acc = [acc, rhs](double e) { return acc(e) - rhs(e); };
      } else {
        return acc;
      }
    }
  }

  NetRule term() {
    NetRule acc = factor();
    while (true) {
      if (lex.accept('*')) {
        NetRule rhs = factor();
        acc = [acc, rhs](double e) { return acc(e) * rhs(e); };
      } else if (lex.accept('/')) {
        NetRule rhs = factor();
        acc = [acc, rhs](double e) { return acc(e) / rhs(e); };
      } else {
        return acc;
      }
    }
  }

  NetRule factor() {
    NetRule base = unary();
    if (lex.accept('^')) {
      NetRule exponent = factor();  // right associative
      return [base, exponent](double e) { return std::pow(base(e), exponent(e)); };
    }
    return base;
  }

  NetRule unary() {
    if (lex.accept('-')) {
      NetRule inner = unary();
      return [inner](double e) { return -inner(e); };
    }
    return primary();
  }

  NetRule primary() {
    if (lex.accept('(')) {
      NetRule inner = expr();
      lex.expect(')', "expected ')'");
      return inner;
    }
    if (lex.at_number()) {
      const double v = lex.number();
      return [v](double) { return v; };
    }
    if (!lex.at_ident()) throw ParseError(lex.pos, "expected a value");
    const std::size_t at = lex.pos;
    const std::string name = lex.ident();
    if (name == "eps") return [](double e) { return e; };
    if (name == "min" || name == "max") {
      lex.expect('(', "expected '('");
      NetRule a = expr();
      lex.expect(',', "expected ','");
      NetRule b = expr();
      lex.expect(')', "expected ')'");
      if (name == "min") return [a, b](double e) { return std::min(a(e), b(e)); };
      return [a, b](double e) { return std::max(a(e), b(e)); };
    }
    if (name == "abs" || name == "sin" || name == "cos" || name == "exp" || name == "ln") {
      lex.expect('(', "expected '('");
      NetRule a = expr();
      lex.expect(')', "expected ')'");
      if (name == "abs") return [a](double e) { return std::abs(a(e)); };
      if (name == "sin") return [a](double e) { return std::sin(a(e)); };
      if (name == "cos") return [a](double e) { return std::cos(a(e)); };
      if (name == "exp") return [a](double e) { return std::exp(a(e)); };
      return [a](double e) { return std::log(a(e)); };
    }
    throw ParseError(at, "unknown name '" + name + "'");
  }
};

}  // namespace

NetRule parse_net(const std::string& text) {
  Parser p{Lexer{text}};
  NetRule rule = p.expr();
  p.lex.skip_ws();
  if (p.lex.pos != text.size())
    throw ParseError(p.lex.pos, "unexpected trailing input");
  return rule;
}

}  // namespace gfcalc
