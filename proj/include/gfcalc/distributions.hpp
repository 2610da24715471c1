#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Atom catalog: delta derivatives, Heaviside steps, regular (smooth-density)
// distributions, and the principal value of 1/x.
struct DeltaDerivAtom {
  int k = 0;  // pairing: (-1)^k * phi^(k)(x0)
  double x0 = 0.0;
};
struct HeavisideAtom {
  double x0 = 0.0;
};
struct RegularAtom {
  SmoothFn density;
};
struct PrincipalValueAtom {};

using DistAtom = std::variant<DeltaDerivAtom, HeavisideAtom, RegularAtom, PrincipalValueAtom>;

struct DistTerm {
  double coeff = 1.0;
  DistAtom atom;
};

// Finite linear combination of catalog atoms. Pairing is linear in both the
// coefficients and the test function.
class Distribution {
public:
  Distribution() = default;  // the zero distribution
  explicit Distribution(std::vector<DistTerm> terms) : terms_(std::move(terms)) {}

  static Distribution delta(int k = 0, double x0 = 0.0);
  static Distribution heaviside(double x0 = 0.0);
  static Distribution regular(SmoothFn density);
  static Distribution pv_1_over_x();

  const std::vector<DistTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Distribution operator+(const Distribution& other) const;
  Distribution operator*(double c) const;

  std::string describe() const;

private:
  std::vector<DistTerm> terms_;
};

// <u, phi>; phi must be compactly supported.
double pair_with(const Distribution& u, const SmoothFn& phi, double tol = 1e-10);

// Distributional derivative: D(H) = delta, D(delta^(k)) = delta^(k+1),
// D(regular f) = regular f'. The derivative of pv(1/x) is outside the catalog.
Distribution D(const Distribution& u);

// (u * rho)(x) = <u(y), rho(x - y)>. Symbolic for delta derivatives
// (rho^(k) translated) and Heaviside (translated antiderivative); other atoms
// become quadrature-backed convolution nodes.
SmoothFn convolve_smooth(const Distribution& u, const SmoothFn& rho);

// Adapter allowing a distribution to act as a convolution source; also the
// hook the serializer uses to round-trip Conv nodes.
class DistConvSource : public ConvSource {
public:
  explicit DistConvSource(Distribution u) : u_(std::move(u)) {}
  double pair_with(const SmoothFn& testfn) const override;
  double conv_value(const SmoothFn& kernel, int deriv_order, double x) const override;
  Support source_support() const override;
  const Distribution& distribution() const { return u_; }

private:
  Distribution u_;
};

// Textual constructor syntax: "delta", "delta'(k=2, x0=0)", "heaviside(0.5)",
// "regular(sin(x))", "pv", "zero", and linear combinations like
// "2*delta + heaviside(0)". Throws ParseError with a position.
Distribution parse_distribution(const std::string& text);

}  // namespace gfcalc
