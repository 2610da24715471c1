#include "gfcalc/special_alg.hpp"

#include <algorithm>
#include <cmath>

#include "gfcalc/parallel.hpp"

namespace gfcalc {

GenFunction::GenFunction(OpenInterval omega, std::function<SmoothFn(double)> rep)
    : omega_(omega), rep_(std::move(rep)), memo_(std::make_shared<Memo>()) {}

SmoothFn GenFunction::rep(double eps) const {
  if (!rep_) throw Error(ErrorKind::Argument, "empty GenFunction");
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->by_eps.find(eps);
    if (it != memo_->by_eps.end()) return it->second;
  }
  SmoothFn built = rep_(eps);
  std::lock_guard<std::mutex> lock(memo_->mu);
  return memo_->by_eps.emplace(eps, std::move(built)).first->second;
}

GenFunction sigma(const SmoothFn& f, const OpenInterval& omega) {
  return GenFunction(omega, [f](double) { return f; });
}

GenFunction iota(const Distribution& u, const MollifierNet& psi, const OpenInterval& omega) {
  return GenFunction(omega, [u, psi](double eps) {
    return convolve_smooth(u, scale_S(eps, psi.at(eps).fn));
  });
}

namespace {

void require_same_omega(const GenFunction& u, const GenFunction& v) {
  if (!(u.omega() == v.omega()))
    throw Error(ErrorKind::Domain, "operands live on different omegas");
}

void require_k_in_omega(const CompactSet& k, const OpenInterval& omega) {
  if (!omega.strictly_contains(k))
    throw Error(ErrorKind::Domain, "K must be compactly contained in omega");
}

}  // namespace

GenFunction operator+(const GenFunction& u, const GenFunction& v) {
  require_same_omega(u, v);
  return GenFunction(u.omega(), [u, v](double e) { return u.rep(e) + v.rep(e); });
}

GenFunction operator-(const GenFunction& u, const GenFunction& v) {
  require_same_omega(u, v);
  return GenFunction(u.omega(), [u, v](double e) { return u.rep(e) - v.rep(e); });
}

GenFunction operator*(const GenFunction& u, const GenFunction& v) {
  require_same_omega(u, v);
  return GenFunction(u.omega(), [u, v](double e) { return u.rep(e) * v.rep(e); });
}

GenFunction operator-(const GenFunction& u) {
  return GenFunction(u.omega(), [u](double e) { return -u.rep(e); });
}

GenFunction operator*(double c, const GenFunction& u) {
  return GenFunction(u.omega(), [c, u](double e) { return c * u.rep(e); });
}

GenFunction smooth_compose(const SmoothFn& g, const GenFunction& u1) {
  if (g.has_var_u()) throw Error(ErrorKind::Argument, "unary compose needs a single-variable g");
  return GenFunction(u1.omega(), [g, u1](double e) { return compose(g, u1.rep(e)); });
}

GenFunction smooth_compose(const SmoothFn& g, const GenFunction& u1, const GenFunction& u2) {
  require_same_omega(u1, u2);
  return GenFunction(u1.omega(),
                     [g, u1, u2](double e) { return compose2(g, u1.rep(e), u2.rep(e)); });
}

GenFunction partial(const GenFunction& u, int k) {
  if (k < 0) throw Error(ErrorKind::Argument, "partial requires k >= 0");
  if (k == 0) return u;
  return GenFunction(u.omega(), [u, k](double e) { return u.rep(e).deriv(k); });
}

std::vector<LogSample> sup_net(const GenFunction& u, int alpha, const CompactSet& k,
                               const EpsGrid& grid, int sup_points) {
  std::vector<LogSample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double eps = grid[i];
    samples[i] = make_log_sample(eps, sup_abs_on(u.rep(eps).deriv(alpha), k, sup_points));
  });
  return samples;
}

namespace {

VerdictReport classify_on(const GenFunction& u, const CompactSet& k, int alpha_max,
                          const EpsGrid& grid, const ClassifySettings& s, bool negligible) {
  require_k_in_omega(k, u.omega());
  if (alpha_max < 0) throw Error(ErrorKind::Argument, "alpha_max must be >= 0");
  VerdictReport out;
  out.verdict = Verdict::Yes;
  for (int alpha = 0; alpha <= alpha_max; ++alpha) {
    const auto samples = sup_net(u, alpha, k, grid, s.sup_points);
    AlphaVerdict av;
    av.alpha = alpha;
    // Reported slope fits the measurable signal (above the zero floor); the
    // verdict itself also sees the sub-floor tail.
    av.order = estimate_order_signal(
        samples, std::min<int>(s.window, static_cast<int>(grid.size()) / 2), s.zero_floor);
    av.verdict = negligible ? is_negligible(samples, s) : is_moderate(samples, s);
    out.verdict = verdict_and(out.verdict, av.verdict);
    out.per_alpha.push_back(std::move(av));
  }
  return out;
}

}  // namespace

VerdictReport moderate_on(const GenFunction& u, const CompactSet& k, int alpha_max,
                          const EpsGrid& grid, const ClassifySettings& s) {
  return classify_on(u, k, alpha_max, grid, s, false);
}

VerdictReport negligible_on(const GenFunction& u, const CompactSet& k, int alpha_max,
                            const EpsGrid& grid, const ClassifySettings& s) {
  return classify_on(u, k, alpha_max, grid, s, true);
}

VerdictReport eq_in_Gs(const GenFunction& u, const GenFunction& v, const CompactSet& k,
                       int alpha_max, const EpsGrid& grid, const ClassifySettings& s) {
  return negligible_on(u - v, k, alpha_max, grid, s);
}

GenNumber eval_at(const GenFunction& u, const GenPoint& x) {
  if (!(u.omega() == x.omega()))
    throw Error(ErrorKind::Domain, "point and function live on different omegas");
  return GenNumber([u, x](double e) { return u.rep(e).eval(x.at(e)); });
}

CBoundedReport is_cbounded(const GenFunction& u, const CompactSet& k, const OpenInterval& omega2,
                           const EpsGrid& grid, const ClassifySettings& s) {
  require_k_in_omega(k, u.omega());
  CBoundedReport out;

  // Ranges of u_eps(K) over the grid tail half.
  const std::size_t tail = std::max<std::size_t>(grid.size() / 2, 2);
  std::vector<std::pair<double, double>> ranges(tail);
  parallel_for(tail, [&](std::size_t j) {
    const double eps = grid[grid.size() - tail + j];
    ranges[j] = range_on(u.rep(eps), k, s.sup_points);
  });

  double lo = ranges[0].first, hi = ranges[0].second;
  for (const auto& r : ranges) {
    lo = std::min(lo, r.first);
    hi = std::max(hi, r.second);
  }

  if (omega2.lo < lo && hi < omega2.hi) {
    out.verdict = Verdict::Yes;
    out.witness = CompactSet(lo, hi);
    return out;
  }

  // Escaping evidence: the finest quarter's ranges already exceed omega2 and
  // widths keep growing.
  const std::size_t q = std::max<std::size_t>(tail / 2, 2);
  bool all_escape = true;
  bool growing = true;
  for (std::size_t j = tail - q; j < tail; ++j) {
    if (omega2.lo < ranges[j].first && ranges[j].second < omega2.hi) all_escape = false;
    if (j > tail - q) {
      const double prev = ranges[j - 1].second - ranges[j - 1].first;
      const double curr = ranges[j].second - ranges[j].first;
      if (curr < prev) growing = false;
    }
  }
  out.verdict = (all_escape && growing) ? Verdict::No : Verdict::Inconclusive;
  return out;
}

GenFunction compose_cbounded(const GenFunction& v, const GenFunction& u, const CompactSet& k,
                             const EpsGrid& grid, const ClassifySettings& s) {
  const CBoundedReport rep = is_cbounded(u, k, v.omega(), grid, s);
  if (rep.verdict != Verdict::Yes)
    throw Error(ErrorKind::Domain, "composition requires a c-bounded witness into v's omega");
  return GenFunction(u.omega(), [v, u](double e) { return compose(v.rep(e), u.rep(e)); });
}

GenNumber shadow_pairing(const GenFunction& u, const SmoothFn& phi, double tol) {
  if (!phi.support().is_interval() && !phi.support().is_empty())
    throw Error(ErrorKind::Argument, "shadow pairing requires a compactly supported test function");
  const Support s = phi.support();
  return GenNumber([u, phi, s, tol](double e) {
    if (s.is_empty()) return 0.0;
    return integrate(u.rep(e) * phi, s.lo, s.hi, tol);
  });
}

AssociationReport associates_to(const GenFunction& u, const Distribution& w,
                                const std::vector<SmoothFn>& panel, const EpsGrid& grid,
                                const ClassifySettings& s) {
  if (panel.empty()) throw Error(ErrorKind::Argument, "association panel must be non-empty");
  AssociationReport out;
  out.verdict = Verdict::Yes;
  for (const auto& phi : panel) {
    const double target = pair_with(w, phi);
    const GenNumber diff = shadow_pairing(u, phi, s.quad_tol) - GenNumber::constant(target);
    const auto samples = abs(diff).samples(grid);
    out.per_test_fn.push_back(estimate_order_signal(
        samples, std::min<int>(s.window, static_cast<int>(grid.size()) / 2), s.zero_floor));
    out.verdict = verdict_and(out.verdict, tends_to_zero(samples, s));
  }
  return out;
}

std::vector<SmoothFn> default_association_panel(int size) {
  if (size < 1) throw Error(ErrorKind::Argument, "panel size must be >= 1");
  std::vector<SmoothFn> panel;
  panel.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    // Centers spread across (-1, 1), widths below 1.
    const double center = size == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / (size - 1);
    const double width = 0.5 + 0.1 * static_cast<double>(i % 3);
    panel.push_back(affine_arg(1.0 / width, -center / width, bump()));
  }
  return panel;
}

}  // namespace gfcalc
