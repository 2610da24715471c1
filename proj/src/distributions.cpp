#include "gfcalc/distributions.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gfcalc/exprparse.hpp"
#include "gfcalc/quadrature.hpp"

namespace gfcalc {

namespace {

void require_compact_test_fn(const SmoothFn& phi) {
  if (!phi.support().is_interval() && !phi.support().is_empty())
    throw Error(ErrorKind::Argument, "pairing requires a compactly supported test function");
}

double pair_atom(const DistAtom& atom, const SmoothFn& phi, double tol) {
  const Support s = phi.support();
  if (s.is_empty()) return 0.0;
  if (std::holds_alternative<DeltaDerivAtom>(atom)) {
    const auto& d = std::get<DeltaDerivAtom>(atom);
    const double sign = d.k % 2 == 0 ? 1.0 : -1.0;
    return sign * phi.deriv(d.k).eval(d.x0);
  }
  if (std::holds_alternative<HeavisideAtom>(atom)) {
    const auto& h = std::get<HeavisideAtom>(atom);
    if (h.x0 >= s.hi) return 0.0;
    return integrate(phi, std::max(h.x0, s.lo), s.hi, tol);
  }
  if (std::holds_alternative<RegularAtom>(atom)) {
    const auto& r = std::get<RegularAtom>(atom);
    return integrate(r.density * phi, s.lo, s.hi, tol);
  }
  // Principal value of 1/x via the symmetrized integrand: the odd part of phi
  // divided by x extends smoothly through the origin.
  const double b = std::max(std::abs(s.lo), std::abs(s.hi));
  if (b == 0.0) return 0.0;
  return integrate_fn([&](double x) { return (phi.eval(x) - phi.eval(-x)) / x; }, 0.0, b, tol);
}

}  // namespace

Distribution Distribution::delta(int k, double x0) {
  if (k < 0) throw Error(ErrorKind::Argument, "delta derivative order must be >= 0");
  return Distribution({{1.0, DeltaDerivAtom{k, x0}}});
}

Distribution Distribution::heaviside(double x0) {
  return Distribution({{1.0, HeavisideAtom{x0}}});
}

Distribution Distribution::regular(SmoothFn density) {
  return Distribution({{1.0, RegularAtom{std::move(density)}}});
}

Distribution Distribution::pv_1_over_x() {
  return Distribution({{1.0, PrincipalValueAtom{}}});
}

Distribution Distribution::operator+(const Distribution& other) const {
  std::vector<DistTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return Distribution(std::move(terms));
}

Distribution Distribution::operator*(double c) const {
  if (c == 0.0) return Distribution();
  std::vector<DistTerm> terms = terms_;
  for (auto& t : terms) t.coeff *= c;
  return Distribution(std::move(terms));
}

std::string Distribution::describe() const {
  if (terms_.empty()) return "zero";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    if (t.coeff != 1.0) out << t.coeff << "*";
    if (std::holds_alternative<DeltaDerivAtom>(t.atom)) {
      const auto& d = std::get<DeltaDerivAtom>(t.atom);
      out << "delta";
      if (d.k > 0 || d.x0 != 0.0) out << "'(k=" << d.k << ", x0=" << d.x0 << ")";
    } else if (std::holds_alternative<HeavisideAtom>(t.atom)) {
      out << "heaviside(" << std::get<HeavisideAtom>(t.atom).x0 << ")";
    } else if (std::holds_alternative<RegularAtom>(t.atom)) {
      out << "regular(...)";
    } else {
      out << "pv";
    }
  }
  return out.str();
}

double pair_with(const Distribution& u, const SmoothFn& phi, double tol) {
  require_compact_test_fn(phi);
  double acc = 0.0;
  for (const auto& t : u.terms()) acc += t.coeff * pair_atom(t.atom, phi, tol);
  return acc;
}

Distribution D(const Distribution& u) {
  std::vector<DistTerm> terms;
  terms.reserve(u.terms().size());
  for (const auto& t : u.terms()) {
    if (std::holds_alternative<HeavisideAtom>(t.atom)) {
      terms.push_back({t.coeff, DeltaDerivAtom{0, std::get<HeavisideAtom>(t.atom).x0}});
    } else if (std::holds_alternative<DeltaDerivAtom>(t.atom)) {
      auto d = std::get<DeltaDerivAtom>(t.atom);
      ++d.k;
      terms.push_back({t.coeff, d});
    } else if (std::holds_alternative<RegularAtom>(t.atom)) {
      terms.push_back({t.coeff, RegularAtom{std::get<RegularAtom>(t.atom).density.deriv(1)}});
    } else {
      throw Error(ErrorKind::Argument,
                  "not in catalog: the derivative of pv(1/x) is a finite-part distribution");
    }
  }
  return Distribution(std::move(terms));
}

SmoothFn convolve_smooth(const Distribution& u, const SmoothFn& rho) {
  if (!rho.support().is_interval() && !rho.support().is_empty())
    throw Error(ErrorKind::Argument, "convolve_smooth requires a compactly supported kernel");
  std::vector<SmoothFn> pieces;
  for (const auto& t : u.terms()) {
    SmoothFn piece;
    if (std::holds_alternative<DeltaDerivAtom>(t.atom)) {
      const auto& d = std::get<DeltaDerivAtom>(t.atom);
      piece = translate_T(d.x0, rho.deriv(d.k));
    } else if (std::holds_alternative<HeavisideAtom>(t.atom)) {
      const auto& h = std::get<HeavisideAtom>(t.atom);
      piece = translate_T(h.x0, antideriv(rho));
    } else {
      piece = conv(std::make_shared<DistConvSource>(Distribution({{1.0, t.atom}})), rho);
    }
    pieces.push_back(t.coeff == 1.0 ? piece : t.coeff * piece);
  }
  return sum(std::move(pieces));
}

double DistConvSource::pair_with(const SmoothFn& testfn) const {
  return gfcalc::pair_with(u_, testfn);
}

double DistConvSource::conv_value(const SmoothFn& kernel, int deriv_order, double x) const {
  // d^deriv_order/dx^... of <u(y), kernel(x - y)>, evaluated per atom with
  // the kernel kept in its own coordinates: the substitution t = x - y avoids
  // composing the kernel with a translation, and moving derivative orders
  // onto the smooth side keeps integrands bounded at tiny kernel scales.
  // The tight tolerance keeps quadrature noise below the classifier floor.
  constexpr double kTol = 1e-14;
  const Support ks = kernel.support();
  if (ks.is_empty()) return 0.0;
  double acc = 0.0;
  for (const auto& term : u_.terms()) {
    double v = 0.0;
    if (std::holds_alternative<DeltaDerivAtom>(term.atom)) {
      const auto& d = std::get<DeltaDerivAtom>(term.atom);
      v = kernel.deriv(d.k + deriv_order).eval(x - d.x0);
    } else if (std::holds_alternative<HeavisideAtom>(term.atom)) {
      const auto& h = std::get<HeavisideAtom>(term.atom);
      if (deriv_order > 0) {
        // (H * kernel^(d))(x) collapses to a kernel evaluation.
        v = kernel.deriv(deriv_order - 1).eval(x - h.x0);
      } else {
        const double upper = std::min(x - h.x0, ks.hi);
        v = upper <= ks.lo ? 0.0
                           : integrate_fn([&](double t) { return kernel.eval(t); }, ks.lo, upper,
                                          kTol);
      }
    } else if (std::holds_alternative<RegularAtom>(term.atom)) {
      // Integration by parts: the derivative lands on the smooth density.
      const SmoothFn density = deriv_order > 0
                                   ? std::get<RegularAtom>(term.atom).density.deriv(deriv_order)
                                   : std::get<RegularAtom>(term.atom).density;
      v = integrate_fn([&](double t) { return kernel.eval(t) * density.eval(x - t); }, ks.lo,
                       ks.hi, kTol);
    } else {
      // (pv * kernel^(d))(x) = integral over t > 0 of
      // (kernel^(d)(x-t) - kernel^(d)(x+t)) / t.
      const SmoothFn kd = deriv_order > 0 ? kernel.deriv(deriv_order) : kernel;
      const double b = std::max(std::abs(x - ks.lo), std::abs(x - ks.hi));
      v = b <= 0.0
              ? 0.0
              : integrate_fn([&](double t) { return (kd.eval(x - t) - kd.eval(x + t)) / t; },
                             0.0, b, kTol);
    }
    acc += term.coeff * v;
  }
  return acc;
}

Support DistConvSource::source_support() const {
  Support s = Support::empty();
  for (const auto& t : u_.terms()) {
    if (std::holds_alternative<DeltaDerivAtom>(t.atom)) {
      const double x0 = std::get<DeltaDerivAtom>(t.atom).x0;
      s = support_hull(s, Support::interval(x0, x0));
    } else if (std::holds_alternative<RegularAtom>(t.atom)) {
      s = support_hull(s, std::get<RegularAtom>(t.atom).density.support());
    } else {
      return Support::all();  // Heaviside / pv have unbounded support
    }
  }
  return s;
}

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
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
  void expect(char c) {
    if (!accept(c)) throw ParseError(pos, std::string("expected '") + c + "'");
  }
  double number() {
    skip_ws();
    std::size_t end = pos;
    const char* begin = text.c_str() + pos;
    char* stop = nullptr;
    const double v = std::strtod(begin, &stop);
    if (stop == begin) throw ParseError(pos, "expected a number");
    end = pos + static_cast<std::size_t>(stop - begin);
    pos = end;
    return v;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw ParseError(pos, "expected an identifier");
    return text.substr(start, pos - start);
  }
};

DistAtom parse_atom(Cursor& cur) {
  const std::size_t at = cur.pos;
  const std::string name = cur.ident();
  if (name == "delta") {
    int k = 0;
    double x0 = 0.0;
    while (cur.peek() == '\'') {
      cur.accept('\'');
      ++k;
    }
    if (cur.accept('(')) {
      // key=value pairs: k=, x0=
      while (cur.peek() != ')') {
        const std::size_t key_at = cur.pos;
        const std::string key = cur.ident();
        cur.expect('=');
        const double v = cur.number();
        if (key == "k") {
          k = static_cast<int>(v);
        } else if (key == "x0") {
          x0 = v;
        } else {
          throw ParseError(key_at, "unknown delta argument '" + key + "'");
        }
        if (!cur.accept(',')) break;
      }
      cur.expect(')');
    }
    if (k < 0) throw ParseError(at, "delta derivative order must be >= 0");
    return DeltaDerivAtom{k, x0};
  }
  if (name == "heaviside") {
    double x0 = 0.0;
    if (cur.accept('(')) {
      if (cur.peek() != ')') x0 = cur.number();
      cur.expect(')');
    }
    return HeavisideAtom{x0};
  }
  if (name == "regular") {
    cur.expect('(');
    // Balance parentheses to find the embedded expression.
    int depth = 1;
    const std::size_t start = cur.pos;
    while (cur.pos < cur.text.size() && depth > 0) {
      const char c = cur.text[cur.pos];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      ++cur.pos;
    }
    if (depth != 0) throw ParseError(cur.pos, "unbalanced parentheses in regular(...)");
    const std::string inner = cur.text.substr(start, cur.pos - 1 - start);
    return RegularAtom{parse_smoothfn(inner)};
  }
  if (name == "pv") return PrincipalValueAtom{};
  throw ParseError(at, "unknown distribution '" + name + "'");
}

}  // namespace

Distribution parse_distribution(const std::string& text) {
  Cursor cur{text};
  if (cur.done()) throw ParseError(0, "empty distribution expression");
  // "zero" / "0" denote the zero distribution.
  {
    Cursor probe = cur;
    probe.skip_ws();
    if (probe.text.compare(probe.pos, 4, "zero") == 0 || probe.text.compare(probe.pos, 1, "0") == 0) {
      std::size_t p = probe.pos + (probe.text.compare(probe.pos, 4, "zero") == 0 ? 4 : 1);
      Cursor rest{text, p};
      if (rest.done()) return Distribution();
    }
  }

  std::vector<DistTerm> terms;
  double sign = 1.0;
  if (cur.accept('-')) sign = -1.0;
  while (true) {
    double coeff = sign;
    cur.skip_ws();
    if (cur.pos < text.size() &&
        (std::isdigit(static_cast<unsigned char>(text[cur.pos])) || text[cur.pos] == '.')) {
      coeff *= cur.number();
      cur.expect('*');
    }
    terms.push_back({coeff, parse_atom(cur)});
    if (cur.done()) break;
    if (cur.accept('+')) {
      sign = 1.0;
    } else if (cur.accept('-')) {
      sign = -1.0;
    } else {
      throw ParseError(cur.pos, "expected '+', '-' or end of expression");
    }
  }
  return Distribution(std::move(terms));
}

}  // namespace gfcalc
