#include "gfcalc/smoothfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#include "gfcalc/quadrature.hpp"
#include "gfcalc/smoothfn_node.hpp"

namespace gfcalc {

namespace {

using NodePtr = std::shared_ptr<const SmoothFnNode>;
using Builder = std::shared_ptr<SmoothFnNode>;

constexpr double kAntiderivTol = 1e-14;

// exp(-1/t) underflows well before this; early out keeps evaluation exact
// zero at the support edge and avoids 0 * inf.
constexpr double kBumpEdge = 1.0 / 709.0;

Builder make(NodeKind k) { return std::make_shared<SmoothFnNode>(k); }

SmoothFn wrap(Builder n) { return SmoothFn(std::move(n)); }

double horner(const std::vector<double>& c, double y) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * y + c[i];
  return acc;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
  if (c.size() <= 1) return {};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

std::vector<double> poly_mul(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

std::vector<double> poly_add(std::vector<double> p, const std::vector<double>& q) {
  if (q.size() > p.size()) p.resize(q.size(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
  return p;
}

// P_m in bump^(m)(y) = bump(y) * P_m(y) / (1-y^2)^(2m).
const std::vector<double>& bump_poly(int m) {
  static std::mutex mu;
  static std::vector<std::vector<double>> cache = {{1.0}};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= m) {
    const auto& p = cache.back();
    const int mm = static_cast<int>(cache.size()) - 1;
    const std::vector<double> t2 = {1.0, 0.0, -2.0, 0.0, 1.0};  // (1-y^2)^2
    const std::vector<double> g = {0.0, 4.0 * mm - 2.0, 0.0, -4.0 * mm};
    cache.push_back(poly_add(poly_mul(t2, poly_deriv(p)), poly_mul(g, p)));
  }
  return cache[static_cast<std::size_t>(m)];
}

double bump_deriv_value(int m, double y) {
  const double t = 1.0 - y * y;
  if (t <= kBumpEdge) return 0.0;
  const double p = horner(bump_poly(m), y);
  if (p == 0.0) return 0.0;
  return bump_normalizer() * p * std::exp(-1.0 / t - 2.0 * m * std::log(t));
}

std::optional<std::pair<double, double>> as_affine(const SmoothFn& f);

Support preimage_support(const Support& s, double a, double b) {
  // {x : a*x + b in s}
  if (s.is_empty()) return Support::empty();
  if (s.is_all()) return Support::all();
  if (a == 0.0) return Support::all();  // folded earlier; defensive only
  double lo = (s.lo - b) / a;
  double hi = (s.hi - b) / a;
  if (lo > hi) std::swap(lo, hi);
  return Support::interval(lo, hi);
}

Support compute_support(const SmoothFnNode& n) {
  switch (n.kind) {
    case NodeKind::Const:
      return n.a == 0.0 ? Support::empty() : Support::all();
    case NodeKind::Id:
    case NodeKind::VarU:
    case NodeKind::Affine:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Antideriv:
      return Support::all();
    case NodeKind::Sum: {
      Support s = Support::empty();
      for (const auto& k : n.kids) s = support_hull(s, k.support());
      return s;
    }
    case NodeKind::Prod: {
      Support s = Support::all();
      for (const auto& k : n.kids) s = support_intersect(s, k.support());
      return s;
    }
    case NodeKind::IntPow:
    case NodeKind::Sin:
      return n.kids[0].support();
    case NodeKind::BumpDeriv: {
      if (auto ab = as_affine(n.kids[0]); ab && ab->first != 0.0)
        return preimage_support(Support::interval(-1.0, 1.0), ab->first, ab->second);
      return Support::all();
    }
    case NodeKind::Poly: {
      if (!n.coeffs.empty() && n.coeffs[0] == 0.0) return n.kids[0].support();
      return Support::all();
    }
    case NodeKind::Conv: {
      const Support src = n.source->source_support();
      const Support ker = n.kids[0].support();
      if (src.is_empty() || ker.is_empty()) return Support::empty();
      if (src.is_interval() && ker.is_interval())
        return Support::interval(src.lo + ker.lo, src.hi + ker.hi);
      return Support::all();
    }
    case NodeKind::Compose: {
      const Support outer = n.kids[0].support();
      if (outer.is_all()) return Support::all();
      if (auto ab = as_affine(n.kids[1]); ab && ab->first != 0.0)
        return preimage_support(outer, ab->first, ab->second);
      return Support::all();
    }
  }
  return Support::all();
}

bool any_var_u(const std::vector<SmoothFn>& kids) {
  for (const auto& k : kids) {
    if (k.has_var_u()) return true;
  }
  return false;
}

SmoothFn finish(Builder n) {
  n->var_u = n->kind == NodeKind::VarU || any_var_u(n->kids);
  n->supp = compute_support(*n);
  return wrap(std::move(n));
}

std::optional<std::pair<double, double>> as_affine(const SmoothFn& f) {
  const auto& n = *f.node();
  switch (n.kind) {
    case NodeKind::Const:
      return std::pair{0.0, n.a};
    case NodeKind::Id:
      return std::pair{1.0, 0.0};
    case NodeKind::Affine:
      return std::pair{n.a, n.b};
    case NodeKind::Sum: {
      double a = 0.0, b = 0.0;
      for (const auto& k : n.kids) {
        auto ab = as_affine(k);
        if (!ab) return std::nullopt;
        a += ab->first;
        b += ab->second;
      }
      return std::pair{a, b};
    }
    case NodeKind::Prod: {
      double scale = 1.0;
      std::optional<std::pair<double, double>> lin;
      for (const auto& k : n.kids) {
        auto ab = as_affine(k);
        if (!ab) return std::nullopt;
        if (ab->first == 0.0) {
          scale *= ab->second;
        } else if (!lin) {
          lin = ab;
        } else {
          return std::nullopt;  // genuinely quadratic
        }
      }
      if (!lin) return std::pair{0.0, scale};
      return std::pair{scale * lin->first, scale * lin->second};
    }
    case NodeKind::Poly: {
      if (n.coeffs.size() > 2) return std::nullopt;
      auto ab = as_affine(n.kids[0]);
      if (!ab) return std::nullopt;
      const double c0 = n.coeffs.empty() ? 0.0 : n.coeffs[0];
      const double c1 = n.coeffs.size() > 1 ? n.coeffs[1] : 0.0;
      return std::pair{c1 * ab->first, c0 + c1 * ab->second};
    }
    case NodeKind::Compose: {
      auto outer = as_affine(n.kids[0]);
      auto inner = as_affine(n.kids[1]);
      if (!outer || !inner) return std::nullopt;
      return std::pair{outer->first * inner->first, outer->first * inner->second + outer->second};
    }
    default:
      return std::nullopt;
  }
}

// Simultaneous substitution x -> fx, u -> fu (null = keep).
SmoothFn subst(const SmoothFn& f, const SmoothFn* fx, const SmoothFn* fu) {
  const auto& n = *f.node();
  switch (n.kind) {
    case NodeKind::Const:
      return f;
    case NodeKind::Id:
      return fx ? *fx : f;
    case NodeKind::VarU:
      return fu ? *fu : f;
    case NodeKind::Affine: {
      if (!fx) return f;
      if (auto ab = as_affine(*fx)) return affine(n.a * ab->first, n.a * ab->second + n.b);
      return sum({prod({constant(n.a), *fx}), constant(n.b)});
    }
    case NodeKind::Sum: {
      std::vector<SmoothFn> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) kids.push_back(subst(k, fx, fu));
      return sum(std::move(kids));
    }
    case NodeKind::Prod: {
      std::vector<SmoothFn> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) kids.push_back(subst(k, fx, fu));
      return prod(std::move(kids));
    }
    case NodeKind::IntPow:
      return int_pow(n.ipar, subst(n.kids[0], fx, fu));
    case NodeKind::Sin:
      return sin_of(subst(n.kids[0], fx, fu));
    case NodeKind::Cos:
      return cos_of(subst(n.kids[0], fx, fu));
    case NodeKind::Exp:
      return exp_of(subst(n.kids[0], fx, fu));
    case NodeKind::BumpDeriv:
      return bump_deriv(n.ipar, subst(n.kids[0], fx, fu));
    case NodeKind::Poly:
      return polynomial(n.coeffs, subst(n.kids[0], fx, fu));
    case NodeKind::Antideriv:
    case NodeKind::Conv: {
      // Argument is x itself; wrap in a composition node when x changes.
      if (!fx) return f;
      if (auto ab = as_affine(*fx); ab && ab->first == 1.0 && ab->second == 0.0) return f;
      auto c = make(NodeKind::Compose);
      c->kids = {f, *fx};
      return finish(std::move(c));
    }
    case NodeKind::Compose: {
      SmoothFn inner = subst(n.kids[1], fx, fu);
      if (inner.same_tree(n.kids[1])) return f;
      return compose(n.kids[0], inner);
    }
  }
  return f;
}

double antideriv_total(const SmoothFnNode& n) {
  std::call_once(n.mass_once, [&] {
    const Support s = n.kids[0].support();
    n.total_mass = s.is_interval()
                       ? integrate_fn([&](double t) { return n.kids[0].eval(t); }, s.lo, s.hi,
                                      kAntiderivTol)
                       : 0.0;
  });
  return n.total_mass;
}

}  // namespace

Support support_hull(const Support& a, const Support& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (a.is_all() || b.is_all()) return Support::all();
  return Support::interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Support support_intersect(const Support& a, const Support& b) {
  if (a.is_empty() || b.is_empty()) return Support::empty();
  if (a.is_all()) return b;
  if (b.is_all()) return a;
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return Support::empty();
  return Support::interval(lo, hi);
}

double bump_normalizer() {
  static std::once_flag once;
  static double c = 0.0;
  std::call_once(once, [] {
    const double mass = integrate_fn(
        [](double t) {
          const double w = 1.0 - t * t;
          return w <= kBumpEdge ? 0.0 : std::exp(-1.0 / w);
        },
        -1.0, 1.0, 1e-14);
    c = 1.0 / mass;
  });
  return c;
}

SmoothFn::SmoothFn() : node_(constant(0.0).node()) {}

double SmoothFn::eval(double x) const {
  const auto& n = *node_;
  switch (n.kind) {
    case NodeKind::Const:
      return n.a;
    case NodeKind::Id:
      return x;
    case NodeKind::VarU:
      throw Error(ErrorKind::Domain, "expression has a free u variable; substitute it first");
    case NodeKind::Affine:
      return n.a * x + n.b;
    case NodeKind::Sum: {
      double acc = 0.0;
      for (const auto& k : n.kids) acc += k.eval(x);
      return acc;
    }
    case NodeKind::Prod: {
      double acc = 1.0;
      for (const auto& k : n.kids) {
        const double v = k.eval(x);
        if (v == 0.0) return 0.0;  // keeps products exactly zero off-support
        acc *= v;
      }
      return acc;
    }
    case NodeKind::IntPow: {
      const double v = n.kids[0].eval(x);
      double acc = 1.0;
      for (int i = 0; i < n.ipar; ++i) acc *= v;
      return acc;
    }
    case NodeKind::Sin:
      return std::sin(n.kids[0].eval(x));
    case NodeKind::Cos:
      return std::cos(n.kids[0].eval(x));
    case NodeKind::Exp:
      return std::exp(n.kids[0].eval(x));
    case NodeKind::BumpDeriv:
      return bump_deriv_value(n.ipar, n.kids[0].eval(x));
    case NodeKind::Antideriv: {
      const Support s = n.kids[0].support();
      if (!s.is_interval()) return 0.0;
      if (x <= s.lo) return 0.0;
      if (x >= s.hi) return antideriv_total(n);
      return integrate_fn([&](double t) { return n.kids[0].eval(t); }, s.lo, x, kAntiderivTol);
    }
    case NodeKind::Poly:
      return horner(n.coeffs, n.kids[0].eval(x));
    case NodeKind::Conv:
      return n.source->conv_value(n.kids[0], n.ipar, x);
    case NodeKind::Compose:
      return n.kids[0].eval(n.kids[1].eval(x));
  }
  return 0.0;
}

SmoothFn SmoothFn::deriv(int k) const {
  if (k < 0) throw Error(ErrorKind::Argument, "deriv requires k >= 0");
  SmoothFn f = *this;
  for (int i = 0; i < k; ++i) {
    const auto& n = *f.node();
    switch (n.kind) {
      case NodeKind::Const:
      case NodeKind::VarU:
        f = constant(0.0);
        break;
      case NodeKind::Id:
        f = constant(1.0);
        break;
      case NodeKind::Affine:
        f = constant(n.a);
        break;
      case NodeKind::Sum: {
        std::vector<SmoothFn> kids;
        kids.reserve(n.kids.size());
        for (const auto& c : n.kids) kids.push_back(c.deriv(1));
        f = sum(std::move(kids));
        break;
      }
      case NodeKind::Prod: {
        std::vector<SmoothFn> terms;
        for (std::size_t j = 0; j < n.kids.size(); ++j) {
          std::vector<SmoothFn> factors = n.kids;
          factors[j] = n.kids[j].deriv(1);
          terms.push_back(prod(std::move(factors)));
        }
        f = sum(std::move(terms));
        break;
      }
      case NodeKind::IntPow:
        f = prod({constant(static_cast<double>(n.ipar)), int_pow(n.ipar - 1, n.kids[0]),
                  n.kids[0].deriv(1)});
        break;
      case NodeKind::Sin:
        f = prod({cos_of(n.kids[0]), n.kids[0].deriv(1)});
        break;
      case NodeKind::Cos:
        f = prod({constant(-1.0), sin_of(n.kids[0]), n.kids[0].deriv(1)});
        break;
      case NodeKind::Exp:
        f = prod({exp_of(n.kids[0]), n.kids[0].deriv(1)});
        break;
      case NodeKind::BumpDeriv:
        f = prod({bump_deriv(n.ipar + 1, n.kids[0]), n.kids[0].deriv(1)});
        break;
      case NodeKind::Antideriv:
        f = n.kids[0];
        break;
      case NodeKind::Poly:
        f = prod({polynomial(poly_deriv(n.coeffs), n.kids[0]), n.kids[0].deriv(1)});
        break;
      case NodeKind::Conv:
        f = conv(n.source, n.kids[0], n.ipar + 1);
        break;
      case NodeKind::Compose: {
        auto outer = make(NodeKind::Compose);
        outer->kids = {n.kids[0].deriv(1), n.kids[1]};
        f = prod({finish(std::move(outer)), n.kids[1].deriv(1)});
        break;
      }
    }
  }
  return f;
}

Support SmoothFn::support() const { return node_->supp; }

bool SmoothFn::has_var_u() const { return node_->var_u; }

SmoothFn constant(double c) {
  auto n = make(NodeKind::Const);
  n->a = c;
  return finish(std::move(n));
}

SmoothFn identity() { return finish(make(NodeKind::Id)); }

SmoothFn var_u() { return finish(make(NodeKind::VarU)); }

SmoothFn affine(double a, double b) {
  if (a == 0.0) return constant(b);
  if (a == 1.0 && b == 0.0) return identity();
  auto n = make(NodeKind::Affine);
  n->a = a;
  n->b = b;
  return finish(std::move(n));
}

SmoothFn sum(std::vector<SmoothFn> terms) {
  std::vector<SmoothFn> kids;
  double c = 0.0;
  bool have_const = false;
  for (auto& t : terms) {
    const auto& n = *t.node();
    if (n.kind == NodeKind::Const) {
      c += n.a;
      have_const = true;
    } else if (n.kind == NodeKind::Sum) {
      for (const auto& k : n.kids) {
        if (k.node()->kind == NodeKind::Const) {
          c += k.node()->a;
          have_const = true;
        } else {
          kids.push_back(k);
        }
      }
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (have_const && c != 0.0) kids.push_back(constant(c));
  if (kids.empty()) return constant(0.0);
  if (kids.size() == 1) return kids[0];
  auto n = make(NodeKind::Sum);
  n->kids = std::move(kids);
  return finish(std::move(n));
}

SmoothFn prod(std::vector<SmoothFn> factors) {
  std::vector<SmoothFn> kids;
  double c = 1.0;
  for (auto& t : factors) {
    const auto& n = *t.node();
    if (n.kind == NodeKind::Const) {
      c *= n.a;
    } else if (n.kind == NodeKind::Prod) {
      for (const auto& k : n.kids) {
        if (k.node()->kind == NodeKind::Const) {
          c *= k.node()->a;
        } else {
          kids.push_back(k);
        }
      }
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (c == 0.0) return constant(0.0);
  if (kids.empty()) return constant(c);
  if (c != 1.0) kids.insert(kids.begin(), constant(c));
  if (kids.size() == 1) return kids[0];
  auto n = make(NodeKind::Prod);
  n->kids = std::move(kids);
  return finish(std::move(n));
}

SmoothFn int_pow(int k, SmoothFn base) {
  if (k < 0) throw Error(ErrorKind::Argument, "int_pow requires k >= 0");
  if (k == 0) return constant(1.0);
  if (k == 1) return base;
  if (base.node()->kind == NodeKind::Const) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= base.node()->a;
    return constant(acc);
  }
  auto n = make(NodeKind::IntPow);
  n->ipar = k;
  n->kids = {std::move(base)};
  return finish(std::move(n));
}

SmoothFn sin_of(SmoothFn arg) {
  if (arg.node()->kind == NodeKind::Const) return constant(std::sin(arg.node()->a));
  auto n = make(NodeKind::Sin);
  n->kids = {std::move(arg)};
  return finish(std::move(n));
}

SmoothFn cos_of(SmoothFn arg) {
  if (arg.node()->kind == NodeKind::Const) return constant(std::cos(arg.node()->a));
  auto n = make(NodeKind::Cos);
  n->kids = {std::move(arg)};
  return finish(std::move(n));
}

SmoothFn exp_of(SmoothFn arg) {
  if (arg.node()->kind == NodeKind::Const) return constant(std::exp(arg.node()->a));
  auto n = make(NodeKind::Exp);
  n->kids = {std::move(arg)};
  return finish(std::move(n));
}

SmoothFn polynomial(std::vector<double> coeffs, SmoothFn arg) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) return constant(0.0);
  if (coeffs.size() == 1) return constant(coeffs[0]);
  if (arg.node()->kind == NodeKind::Const) return constant(horner(coeffs, arg.node()->a));
  auto n = make(NodeKind::Poly);
  n->coeffs = std::move(coeffs);
  n->kids = {std::move(arg)};
  return finish(std::move(n));
}

SmoothFn bump_deriv(int m, SmoothFn arg) {
  if (m < 0) throw Error(ErrorKind::Argument, "bump_deriv requires m >= 0");
  if (arg.node()->kind == NodeKind::Const) return constant(bump_deriv_value(m, arg.node()->a));
  auto n = make(NodeKind::BumpDeriv);
  n->ipar = m;
  n->kids = {std::move(arg)};
  return finish(std::move(n));
}

SmoothFn bump() { return bump_deriv(0, identity()); }

SmoothFn antideriv(SmoothFn child) {
  if (child.has_var_u())
    throw Error(ErrorKind::Argument, "antideriv requires a single-variable integrand");
  const Support s = child.support();
  if (s.is_all())
    throw Error(ErrorKind::Argument, "antideriv requires a compactly supported integrand");
  if (s.is_empty()) return constant(0.0);
  auto n = make(NodeKind::Antideriv);
  n->kids = {std::move(child)};
  return finish(std::move(n));
}

SmoothFn smoothstep() { return antideriv(bump()); }

SmoothFn affine_arg(double a, double b, SmoothFn child) {
  if (a == 1.0 && b == 0.0) return child;
  const SmoothFn arg = affine(a, b);
  return subst(child, &arg, nullptr);
}

SmoothFn operator+(const SmoothFn& f, const SmoothFn& g) { return sum({f, g}); }
SmoothFn operator-(const SmoothFn& f, const SmoothFn& g) {
  return sum({f, prod({constant(-1.0), g})});
}
SmoothFn operator*(const SmoothFn& f, const SmoothFn& g) { return prod({f, g}); }
SmoothFn operator*(double c, const SmoothFn& f) { return prod({constant(c), f}); }
SmoothFn operator-(const SmoothFn& f) { return prod({constant(-1.0), f}); }

SmoothFn conv(std::shared_ptr<const ConvSource> source, SmoothFn kernel, int deriv_order) {
  if (!source) throw Error(ErrorKind::Argument, "conv requires a source");
  if (deriv_order < 0) throw Error(ErrorKind::Argument, "conv requires deriv_order >= 0");
  if (kernel.has_var_u()) throw Error(ErrorKind::Argument, "conv kernel must be single-variable");
  if (!kernel.support().is_interval() && !kernel.support().is_empty())
    throw Error(ErrorKind::Argument, "conv kernel must be compactly supported");
  if (kernel.support().is_empty()) return constant(0.0);
  auto n = make(NodeKind::Conv);
  n->source = std::move(source);
  n->ipar = deriv_order;
  n->kids = {std::move(kernel)};
  return finish(std::move(n));
}

SmoothFn compose(const SmoothFn& g, const SmoothFn& f) { return subst(g, &f, nullptr); }

SmoothFn compose2(const SmoothFn& g, const SmoothFn& f1, const SmoothFn& f2) {
  return subst(g, &f1, &f2);
}

SmoothFn substitute_u(const SmoothFn& kernel, double u0) {
  const SmoothFn c = constant(u0);
  return subst(kernel, nullptr, &c);
}

SmoothFn scale_S(double eps, const SmoothFn& phi) {
  if (!(eps > 0.0)) throw Error(ErrorKind::Argument, "scale_S requires eps > 0");
  return prod({constant(1.0 / eps), affine_arg(1.0 / eps, 0.0, phi)});
}

SmoothFn translate_T(double x0, const SmoothFn& phi) { return affine_arg(1.0, -x0, phi); }

SmoothFn translate_Ttilde(double x0, const SmoothFn& phi) { return affine_arg(-1.0, x0, phi); }

namespace {

// Support edges of all subtrees: a narrow scaled kernel inside a wide tree
// creates features the panelling and sup scans must be seeded with.
void collect_breakpoints_impl(const SmoothFn& f, std::vector<double>& out) {
  if (out.size() > 96) return;
  const Support s = f.support();
  if (s.is_interval()) {
    out.push_back(s.lo);
    out.push_back(s.hi);
  }
  for (const auto& k : f.node()->kids) collect_breakpoints_impl(k, out);
}

std::vector<double> breakpoints_within(const SmoothFn& f, double a, double b) {
  std::vector<double> bps;
  collect_breakpoints_impl(f, bps);
  std::vector<double> out;
  for (double x : bps) {
    if (x > a && x < b) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > 32) {
    std::vector<double> trimmed;
    const std::size_t stride = out.size() / 32 + 1;
    for (std::size_t i = 0; i < out.size(); i += stride) trimmed.push_back(out[i]);
    out.swap(trimmed);
  }
  return out;
}

}  // namespace

double integrate(const SmoothFn& f, double a, double b, double tol) {
  if (!(a <= b)) throw Error(ErrorKind::Argument, "integrate requires a <= b");
  const Support s = f.support();
  if (s.is_empty()) return 0.0;
  if (s.is_interval()) {
    a = std::max(a, s.lo);
    b = std::min(b, s.hi);
    if (a >= b) return 0.0;
  }
  const std::vector<double> bps = breakpoints_within(f, a, b);
  auto integrand = [&](double x) { return f.eval(x); };
  if (bps.empty()) return integrate_fn(integrand, a, b, tol);
  const double seg_tol = tol / static_cast<double>(bps.size() + 1);
  double acc = 0.0;
  double lo = a;
  for (double bp : bps) {
    acc += integrate_fn(integrand, lo, bp, seg_tol);
    lo = bp;
  }
  acc += integrate_fn(integrand, lo, b, seg_tol);
  return acc;
}

namespace {

// Golden-section maximization of fn on [lo, hi]; assumes local unimodality
// around a scanned best point.
double golden_max(const std::function<double(double)>& fn, double lo, double hi) {
  constexpr double kPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kPhi * (b - a);
  double x2 = a + kPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kPhi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kPhi * (b - a);
      f1 = fn(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

namespace {

struct ScanBest {
  double val = -std::numeric_limits<double>::infinity();
  double x = 0.0;
  double h = 0.0;
};

ScanBest scan_segment(const std::function<double(double)>& fn, double lo, double hi, int n) {
  ScanBest best;
  best.h = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = fn(x);
    if (v > best.val) {
      best.val = v;
      best.x = x;
    }
  }
  return best;
}

// Base scan plus dedicated scans of segments between breakpoints that are
// finer than the base resolution; a width-eps spike inside a unit box is
// invisible to the uniform grid alone.
double scan_and_refine_max(const std::function<double(double)>& fn, const CompactSet& box, int n,
                           const std::vector<double>& bps) {
  ScanBest best = scan_segment(fn, box.lo, box.hi, n);
  const double base_h = best.h;
  double lo = box.lo;
  std::vector<double> edges = bps;
  edges.push_back(box.hi);
  for (double edge : edges) {
    const double width = edge - lo;
    if (width > 0.0 && width < 2.0 * base_h) {
      const ScanBest narrow = scan_segment(fn, lo, edge, 65);
      if (narrow.val > best.val) best = narrow;
    }
    lo = edge;
  }
  const double glo = std::max(box.lo, best.x - best.h);
  const double ghi = std::min(box.hi, best.x + best.h);
  if (ghi <= glo) return best.val;
  return std::max(best.val, golden_max(fn, glo, ghi));
}

}  // namespace

double sup_abs_on(const SmoothFn& f, const CompactSet& k, int n) {
  if (n < 64) throw Error(ErrorKind::Argument, "sup_abs_on requires n >= 64");
  const Support s = f.support();
  if (s.is_empty()) return 0.0;
  CompactSet box = k;
  if (s.is_interval()) {
    // Outside the support |f| is exactly zero.
    const double lo = std::max(k.lo, s.lo);
    const double hi = std::min(k.hi, s.hi);
    if (lo > hi) return 0.0;
    box = CompactSet(lo, hi);
  }
  if (box.width() == 0.0) return std::abs(f.eval(box.lo));
  auto absf = [&](double x) { return std::abs(f.eval(x)); };
  return scan_and_refine_max(absf, box, n, breakpoints_within(f, box.lo, box.hi));
}

std::pair<double, double> range_on(const SmoothFn& f, const CompactSet& k, int n) {
  if (n < 64) throw Error(ErrorKind::Argument, "range_on requires n >= 64");
  if (k.width() == 0.0) {
    const double v = f.eval(k.lo);
    return {v, v};
  }
  const std::vector<double> bps = breakpoints_within(f, k.lo, k.hi);
  const double hi = scan_and_refine_max([&](double x) { return f.eval(x); }, k, n, bps);
  const double lo = -scan_and_refine_max([&](double x) { return -f.eval(x); }, k, n, bps);
  return {lo, hi};
}

std::vector<double> moments(const SmoothFn& phi, int q, double tol) {
  if (q < 0) throw Error(ErrorKind::Argument, "moments requires q >= 0");
  const Support s = phi.support();
  if (s.is_all()) throw Error(ErrorKind::Argument, "moments requires a compactly supported function");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(q) + 1);
  for (int k = 0; k <= q; ++k) {
    if (s.is_empty()) {
      out.push_back(0.0);
      continue;
    }
    out.push_back(integrate_fn(
        [&](double x) {
          double p = 1.0;
          for (int i = 0; i < k; ++i) p *= x;
          return p * phi.eval(x);
        },
        s.lo, s.hi, tol));
  }
  return out;
}

}  // namespace gfcalc
