#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gfcalc/error.hpp"
#include "gfcalc/interval.hpp"

namespace gfcalc {

// Support of an expression tree: the closure of where it may be nonzero.
// Tracking is conservative: All is always sound, Empty/Interval are exact
// (eval returns 0.0 outside a declared interval, bit-exactly).
struct Support {
  enum class Kind { Empty, Interval, All } kind = Kind::All;
  double lo = 0.0;
  double hi = 0.0;

  static Support empty() { return {Kind::Empty, 0.0, 0.0}; }
  static Support all() { return {Kind::All, 0.0, 0.0}; }
  static Support interval(double a, double b) { return {Kind::Interval, a, b}; }

  bool is_empty() const { return kind == Kind::Empty; }
  bool is_interval() const { return kind == Kind::Interval; }
  bool is_all() const { return kind == Kind::All; }
  double width() const { return is_interval() ? hi - lo : 0.0; }
};

Support support_hull(const Support& a, const Support& b);
Support support_intersect(const Support& a, const Support& b);

class SmoothFnNode;

// Smooth real function of one real variable as an immutable expression tree
// with exact symbolic derivatives and tracked support. Trees built from the
// two-variable constructors (var_u) represent kernels (u, x) -> R; slice them
// with substitute_u before doing calculus in x.
class SmoothFn {
public:
  SmoothFn();  // the zero function

  double eval(double x) const;
  SmoothFn deriv(int k = 1) const;
  Support support() const;
  bool has_var_u() const;

  // Structural identity (same tree object), used for identity-law checks.
  bool same_tree(const SmoothFn& other) const { return node_ == other.node_; }

  const std::shared_ptr<const SmoothFnNode>& node() const { return node_; }
  explicit SmoothFn(std::shared_ptr<const SmoothFnNode> n) : node_(std::move(n)) {}

private:
  std::shared_ptr<const SmoothFnNode> node_;
};

// Leaf and structural constructors. All fold constants.
SmoothFn constant(double c);
SmoothFn identity();
SmoothFn var_u();
SmoothFn affine(double a, double b);  // x -> a*x + b
SmoothFn sum(std::vector<SmoothFn> terms);
SmoothFn prod(std::vector<SmoothFn> factors);
SmoothFn int_pow(int k, SmoothFn base);
SmoothFn sin_of(SmoothFn arg);
SmoothFn cos_of(SmoothFn arg);
SmoothFn exp_of(SmoothFn arg);
SmoothFn polynomial(std::vector<double> coeffs, SmoothFn arg);  // sum c_k arg^k

// m-th derivative of the normalized bump, composed with arg. bump(x) =
// C*exp(-1/(1-x^2)) on (-1,1), zero outside, with C fixed so that its
// integral is 1. Exactly zero for |arg| >= 1.
SmoothFn bump_deriv(int m, SmoothFn arg);
SmoothFn bump();

// x -> integral of child from the left edge of its support up to x.
// Requires a compactly supported child; derivative is the child again.
SmoothFn antideriv(SmoothFn child);

// Antiderivative of bump: rises 0 -> 1 across [-1, 1].
SmoothFn smoothstep();

// child(a*x + b); distributes through structural nodes so that affine
// argument chains collapse (scale-of-scale, translate-of-translate).
SmoothFn affine_arg(double a, double b, SmoothFn child);

SmoothFn operator+(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator-(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator*(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator*(double c, const SmoothFn& f);
SmoothFn operator-(const SmoothFn& f);

// Something a convolution can pair against. Implemented by the distributions
// module; referenced here so Conv nodes can live in the tree. conv_value
// computes the deriv_order-th derivative of <u(y), kernel(x - y)> with the
// kernel evaluated in its own frame; sources move derivative orders onto
// their smooth side (integration by parts), which stays accurate when the
// kernel is scaled by tiny eps.
class ConvSource {
public:
  virtual ~ConvSource() = default;
  virtual double pair_with(const SmoothFn& testfn) const = 0;
  virtual double conv_value(const SmoothFn& kernel, int deriv_order, double x) const = 0;
  virtual Support source_support() const = 0;
};

// (u * rho)(x) = <u(y), rho(x - y)>, evaluated by pairing on demand.
// Derivatives accumulate in the node's order field.
SmoothFn conv(std::shared_ptr<const ConvSource> source, SmoothFn kernel, int deriv_order = 0);

// g composed with f (single variable); g(f1, f2) for two-variable g.
SmoothFn compose(const SmoothFn& g, const SmoothFn& f);
SmoothFn compose2(const SmoothFn& g, const SmoothFn& f1, const SmoothFn& f2);

// Replace the u-variable by a constant: kernel slice d(u0) = kernel(u0, -).
SmoothFn substitute_u(const SmoothFn& kernel, double u0);

// --- operators from the paper: S (mass-preserving scaling), T, T-tilde ---

// S(eps, phi): x -> (1/eps) * phi(x / eps); support scales to eps*supp(phi).
SmoothFn scale_S(double eps, const SmoothFn& phi);
// T(x0, phi): y -> phi(y - x0).
SmoothFn translate_T(double x0, const SmoothFn& phi);
// T~(x0, phi): y -> phi(x0 - y).
SmoothFn translate_Ttilde(double x0, const SmoothFn& phi);

// --- numerics over trees ---

// Integral over [a, b] clipped to the support when compact.
double integrate(const SmoothFn& f, double a, double b, double tol);

// Estimated sup of |f| over K: uniform n-point scan plus golden-section
// refinement around the best point. A lower bound of the true sup.
double sup_abs_on(const SmoothFn& f, const CompactSet& k, int n = 2049);

// Estimated range [min f, max f] over K, same scan-and-refine scheme.
std::pair<double, double> range_on(const SmoothFn& f, const CompactSet& k, int n = 2049);

// (integral of x^k * phi dx) for k = 0..q; requires compact support.
std::vector<double> moments(const SmoothFn& phi, int q, double tol = 1e-11);

// Normalization constant of bump (1 / integral of exp(-1/(1-x^2))).
double bump_normalizer();

}  // namespace gfcalc
