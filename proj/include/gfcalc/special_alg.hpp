#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/distributions.hpp"
#include "gfcalc/gnum.hpp"
#include "gfcalc/interval.hpp"
#include "gfcalc/mollifier.hpp"
#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Representative of an element of the special Colombeau algebra on omega:
// a deferred eps-net of smooth functions, memoized per grid eps. Algebra
// operations act representative-wise; nets carry no eps-continuity.
class GenFunction {
public:
  GenFunction() = default;
  GenFunction(OpenInterval omega, std::function<SmoothFn(double)> rep);

  const OpenInterval& omega() const { return omega_; }
  SmoothFn rep(double eps) const;

private:
  OpenInterval omega_;
  std::function<SmoothFn(double)> rep_;
  struct Memo {
    std::mutex mu;
    std::map<double, SmoothFn> by_eps;
  };
  std::shared_ptr<Memo> memo_;
};

// Constant-net embedding of a smooth function: sigma(f) = [f].
GenFunction sigma(const SmoothFn& f, const OpenInterval& omega = OpenInterval::real_line());

// Embedding of a distribution through the scheduled mollifier net:
// iota(u) = [u * (eps @ psi_eps)] restricted to omega.
GenFunction iota(const Distribution& u, const MollifierNet& psi,
                 const OpenInterval& omega = OpenInterval::real_line());

GenFunction operator+(const GenFunction& u, const GenFunction& v);
GenFunction operator-(const GenFunction& u, const GenFunction& v);
GenFunction operator*(const GenFunction& u, const GenFunction& v);
GenFunction operator-(const GenFunction& u);
GenFunction operator*(double c, const GenFunction& u);

// [g(u1_eps(-))] and [g(u1_eps(-), u2_eps(-))] for smooth g.
GenFunction smooth_compose(const SmoothFn& g, const GenFunction& u1);
GenFunction smooth_compose(const SmoothFn& g, const GenFunction& u1, const GenFunction& u2);

// k-th derivative, representative-wise.
GenFunction partial(const GenFunction& u, int k);

// One derivative order of a moderateness/negligibility scan.
struct AlphaVerdict {
  int alpha = 0;
  OrderReport order;
  Verdict verdict = Verdict::Inconclusive;
};

// Truncated-quantifier verdict: the (forall K, forall alpha, ...) of the
// definitions evaluated on one K and alpha = 0..alpha_max.
struct VerdictReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<AlphaVerdict> per_alpha;
};

// Net of sup_{x in K} |d^alpha u_eps| over the grid.
std::vector<LogSample> sup_net(const GenFunction& u, int alpha, const CompactSet& k,
                               const EpsGrid& grid, int sup_points = 513);

VerdictReport moderate_on(const GenFunction& u, const CompactSet& k, int alpha_max,
                          const EpsGrid& grid, const ClassifySettings& s = {});
VerdictReport negligible_on(const GenFunction& u, const CompactSet& k, int alpha_max,
                            const EpsGrid& grid, const ClassifySettings& s = {});

// Equality in the algebra: the difference is negligible on (K, alpha_max).
VerdictReport eq_in_Gs(const GenFunction& u, const GenFunction& v, const CompactSet& k,
                       int alpha_max, const EpsGrid& grid, const ClassifySettings& s = {});

// Point evaluation at a compactly supported generalized point.
GenNumber eval_at(const GenFunction& u, const GenPoint& x);

// c-boundedness of u from omega into omega2, scanned on the grid tail.
struct CBoundedReport {
  Verdict verdict = Verdict::Inconclusive;
  CompactSet witness;  // hull of tail ranges when verdict is Yes
};

CBoundedReport is_cbounded(const GenFunction& u, const CompactSet& k, const OpenInterval& omega2,
                           const EpsGrid& grid, const ClassifySettings& s = {});

// [v_eps o u_eps]; requires a Yes c-boundedness witness of u into v's omega.
GenFunction compose_cbounded(const GenFunction& v, const GenFunction& u, const CompactSet& k,
                             const EpsGrid& grid, const ClassifySettings& s = {});

// Net of pairings eps -> integral(u_eps * phi).
GenNumber shadow_pairing(const GenFunction& u, const SmoothFn& phi, double tol = 1e-10);

// Association: pairings with every panel member converge to <w, phi>.
struct AssociationReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<OrderReport> per_test_fn;  // decay of the pairing difference
};

AssociationReport associates_to(const GenFunction& u, const Distribution& w,
                                const std::vector<SmoothFn>& panel, const EpsGrid& grid,
                                const ClassifySettings& s = {});

// Standard panel for association checks: translated bumps covering [-1, 1].
std::vector<SmoothFn> default_association_panel(int size = 5);

}  // namespace gfcalc
