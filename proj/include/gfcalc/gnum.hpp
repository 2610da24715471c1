#pragma once

#include <functional>
#include <string>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/interval.hpp"

namespace gfcalc {

// A Colombeau generalized number: an eps-indexed net of reals, considered up
// to negligible differences. There is no canonical form; equality, order and
// membership are classifier verdicts, never structural.
class GenNumber {
public:
  GenNumber() : net_([](double) { return 0.0; }) {}
  explicit GenNumber(NetRule net) : net_(std::move(net)) {}
  static GenNumber constant(double c) {
    return GenNumber([c](double) { return c; });
  }

  double at(double eps) const { return net_(eps); }
  const NetRule& net() const { return net_; }

  std::vector<LogSample> samples(const EpsGrid& grid) const;

private:
  NetRule net_;
};

GenNumber operator+(const GenNumber& x, const GenNumber& y);
GenNumber operator-(const GenNumber& x, const GenNumber& y);
GenNumber operator*(const GenNumber& x, const GenNumber& y);
GenNumber operator-(const GenNumber& x);
GenNumber abs(const GenNumber& x);
GenNumber inf(const GenNumber& x, const GenNumber& y);  // pointwise min
GenNumber sup(const GenNumber& x, const GenNumber& y);  // pointwise max

// x ~ y: |x - y| negligible (O(eps^m) for every m up to the proxy bound).
Verdict eq_tilde(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
                 const ClassifySettings& s = {});

// x <= y in the generalized order: the deficit max(x - y, 0) is negligible.
Verdict leq(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
            const ClassifySettings& s = {});

// x invertible: |x_eps| bounded below by some eps^m on the tail.
Verdict is_invertible(const GenNumber& x, const EpsGrid& grid, const ClassifySettings& s = {});

// Strict order: leq(x, y) and is_invertible(y - x), with conjunction
// semantics (any No dominates, Yes needs both Yes).
Verdict strict_lt(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
                  const ClassifySettings& s = {});

// x infinitesimal: |x| below every positive real in the limit.
Verdict is_infinitesimal(const GenNumber& x, const EpsGrid& grid,
                         const ClassifySettings& s = {});

// x approximately y: x - y infinitesimal.
Verdict approx(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
               const ClassifySettings& s = {});

// Sharp-ball membership: |y - center| < rho with rho positive invertible.
// Throws when the radius is definitely not positive invertible.
Verdict sharp_ball_contains(const GenNumber& center, const GenNumber& rho, const GenNumber& y,
                            const EpsGrid& grid, const ClassifySettings& s = {});

// Compactly supported generalized point: a net eventually confined to a
// compact K strictly inside omega. Construction validates the witness on the
// grid tail and records the detected threshold.
class GenPoint {
public:
  GenPoint(NetRule net, const CompactSet& witness, const OpenInterval& omega,
           const EpsGrid& grid);
  static GenPoint constant(double x0, const CompactSet& witness, const OpenInterval& omega,
                           const EpsGrid& grid);

  double at(double eps) const { return net_(eps); }
  const NetRule& net() const { return net_; }
  const CompactSet& witness() const { return witness_; }
  const OpenInterval& omega() const { return omega_; }
  double threshold() const { return threshold_; }

private:
  NetRule net_;
  CompactSet witness_;
  OpenInterval omega_;
  double threshold_ = 1.0;  // all grid eps at or below this lie in the witness
};

}  // namespace gfcalc
