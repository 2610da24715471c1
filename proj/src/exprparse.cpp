#include "gfcalc/exprparse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "gfcalc/smoothfn_node.hpp"

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

bool is_const(const SmoothFn& f, double* value) {
  if (f.node()->kind == NodeKind::Const) {
    *value = f.node()->a;
    return true;
  }
  return false;
}

struct Parser {
  Lexer lex;
  bool allow_u;

  SmoothFn expr() {
    SmoothFn acc = term();
    while (true) {
      if (lex.accept('+')) {
        acc = acc + term();
      } else if (lex.accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  SmoothFn term() {
    SmoothFn acc = factor();
    while (true) {
      if (lex.accept('*')) {
        acc = acc * factor();
      } else if (lex.accept('/')) {
        const std::size_t at = lex.pos;
        SmoothFn rhs = factor();
        double c = 0.0;
        if (!is_const(rhs, &c) || c == 0.0)
          throw ParseError(at, "division is only supported by nonzero constants");
        acc = (1.0 / c) * acc;
      } else {
        return acc;
      }
    }
  }

  SmoothFn factor() {
    SmoothFn base = unary();
    if (lex.accept('^')) {
      const std::size_t at = lex.pos;
      if (!lex.at_number()) throw ParseError(at, "exponent must be a literal integer");
      const double k = lex.number();
      if (k < 0.0 || k != std::floor(k))
        throw ParseError(at, "exponent must be a nonnegative integer");
      return int_pow(static_cast<int>(k), base);
    }
    return base;
  }

  SmoothFn unary() {
    if (lex.accept('-')) return -unary();
    return primary();
  }

  SmoothFn primary() {
    if (lex.accept('(')) {
      SmoothFn inner = expr();
      lex.expect(')', "expected ')'");
      return inner;
    }
    if (lex.at_number()) return constant(lex.number());
    if (!lex.at_ident()) throw ParseError(lex.pos, "expected a value");
    const std::size_t at = lex.pos;
    const std::string name = lex.ident();
    if (name == "x") return identity();
    if (name == "u") {
      if (!allow_u) throw ParseError(at, "variable u is not allowed here");
      return var_u();
    }
    if (name == "smoothstep" || name == "bump" || name == "sin" || name == "cos" ||
        name == "exp") {
      lex.expect('(', "expected '('");
      SmoothFn arg = expr();
      lex.expect(')', "expected ')'");
      if (name == "bump") return bump_deriv(0, arg);
      if (name == "sin") return sin_of(arg);
      if (name == "cos") return cos_of(arg);
      if (name == "exp") return exp_of(arg);
      // smoothstep(arg) = compose the bump antiderivative with the argument
      return compose(smoothstep(), arg);
    }
    throw ParseError(at, "unknown name '" + name + "'");
  }
};

}  // namespace

SmoothFn parse_smoothfn(const std::string& text, bool allow_u) {
  Parser p{Lexer{text}, allow_u};
  SmoothFn f = p.expr();
  p.lex.skip_ws();
  if (p.lex.pos != text.size()) throw ParseError(p.lex.pos, "unexpected trailing input");
  return f;
}

}  // namespace gfcalc
