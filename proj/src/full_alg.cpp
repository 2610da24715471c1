#include "gfcalc/full_alg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfcalc/mollifier.hpp"
#include "gfcalc/parallel.hpp"

namespace gfcalc {

namespace {

// Platform-independent uniform doubles in [-1, 1] from a splitmix64 stream,
// so panels replay bit-exactly from (q, size, seed).
struct SeededUniform {
  std::uint64_t state;

  explicit SeededUniform(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double next_signed() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * u - 1.0;
  }
};

constexpr double kCertifyMass = 1e-10;
constexpr double kCertifyMoments = 1e-8;

}  // namespace

MaybeInterval omega_phi(const SmoothFn& phi, const OpenInterval& omega) {
  const Support s = phi.support();
  if (!s.is_interval())
    throw Error(ErrorKind::Argument, "omega_phi requires a compactly supported test function");
  if (!omega.bounded()) {
    // supp(phi) + x fits inside an unbounded side automatically.
    const double lo = std::isfinite(omega.lo) ? omega.lo - s.lo : omega.lo;
    const double hi = std::isfinite(omega.hi) ? omega.hi - s.hi : omega.hi;
    if (!(lo < hi)) return {};
    return {true, lo, hi};
  }
  const double lo = std::max(omega.lo - s.lo, omega.lo);
  const double hi = std::min(omega.hi - s.hi, omega.hi);
  if (!(lo < hi)) return {};
  return {true, lo, hi};
}

bool in_UOmega(const SmoothFn& phi, double x, const OpenInterval& omega) {
  if (!omega.contains(x)) return false;
  const MaybeInterval dom = omega_phi(phi, omega);
  return dom.present && dom.lo < x && x < dom.hi;
}

std::vector<TestFnA> make_panel(int q, int size, std::uint64_t seed) {
  if (q < 0 || q > 10) throw Error(ErrorKind::Argument, "make_panel requires 0 <= q <= 10");
  if (size < 3) throw Error(ErrorKind::Argument, "make_panel requires size >= 3");

  SeededUniform rng(seed);
  std::vector<TestFnA> panel;
  panel.reserve(static_cast<std::size_t>(size));

  const int deg = q + 2;
  const std::size_t rows = static_cast<std::size_t>(q) + 1;  // constraints k = 0..q
  const std::size_t cols = static_cast<std::size_t>(deg) + 1;

  // Constraint matrix G_{kj} = integral of x^(k+j) * bump.
  std::vector<std::vector<double>> g(rows, std::vector<double>(cols, 0.0));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t j = 0; j < cols; ++j) g[k][j] = bump_moment(static_cast<int>(k + j));

  while (static_cast<int>(panel.size()) < size) {
    bool made = false;
    for (int attempt = 0; attempt < 10 && !made; ++attempt) {
      std::vector<double> c0(cols);
      for (auto& c : c0) c = rng.next_signed();

      // Least-change projection onto {G c = e0}: c = c0 + G^T lambda with
      // (G G^T) lambda = e0 - G c0.
      std::vector<double> resid(rows, 0.0);
      for (std::size_t k = 0; k < rows; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols; ++j) acc += g[k][j] * c0[j];
        resid[k] = (k == 0 ? 1.0 : 0.0) - acc;
      }
      std::vector<std::vector<double>> ggt(rows, std::vector<double>(rows, 0.0));
      for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t l = 0; l < rows; ++l) {
          double acc = 0.0;
          for (std::size_t j = 0; j < cols; ++j) acc += g[k][j] * g[l][j];
          ggt[k][l] = acc;
        }
      const std::vector<double> lambda = solve_dense(ggt, resid);
      std::vector<double> coeffs = c0;
      for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < rows; ++k) acc += g[k][j] * lambda[k];
        coeffs[j] += acc;
      }

      // Oversized coefficients amplify quadrature noise in later scans;
      // draw again rather than accept an extreme member.
      double max_coeff = 0.0;
      for (double c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));
      if (max_coeff > 25.0) continue;

      TestFnA member;
      member.phi = prod({bump(), polynomial(coeffs, identity())});
      member.q = q;
      member.poly_coeffs = coeffs;

      // Certify by quadrature before accepting.
      const auto ms = moments(member.phi, q, 1e-11);
      bool ok = std::abs(ms[0] - 1.0) <= kCertifyMass;
      for (int k = 1; k <= q && ok; ++k)
        ok = std::abs(ms[static_cast<std::size_t>(k)]) <= kCertifyMoments;
      if (ok) {
        panel.push_back(std::move(member));
        made = true;
      }
    }
    if (!made)
      throw Error(ErrorKind::Numeric, "panel generation failed to certify a member in 10 attempts");
  }
  return panel;
}

FullRep iota_full(const Distribution& u, const OpenInterval& omega) {
  // R(phi, x) = <u, phi(? - x)> = (u * phi-reflected)(x).
  return FullRep{omega, [u](const SmoothFn& phi) {
                   return convolve_smooth(u, affine_arg(-1.0, 0.0, phi));
                 }};
}

FullRep sigma_full(const SmoothFn& f, const OpenInterval& omega) {
  return FullRep{omega, [f](const SmoothFn&) { return f; }};
}

FullRep operator-(const FullRep& a, const FullRep& b) {
  if (!(a.omega == b.omega))
    throw Error(ErrorKind::Domain, "representatives live on different omegas");
  auto ma = a.materialize;
  auto mb = b.materialize;
  return FullRep{a.omega, [ma, mb](const SmoothFn& phi) { return ma(phi) - mb(phi); }};
}

FullRep partial_x(const FullRep& r, int k) {
  if (k < 0) throw Error(ErrorKind::Argument, "partial_x requires k >= 0");
  auto m = r.materialize;
  return FullRep{r.omega, [m, k](const SmoothFn& phi) { return m(phi).deriv(k); }};
}

double full_eval(const FullRep& r, const SmoothFn& phi, double x) {
  if (!in_UOmega(phi, x, r.omega))
    throw Error(ErrorKind::Domain, "outside U(Omega): supp(phi) does not fit inside omega - x");
  return r.materialize(phi).eval(x);
}

namespace {

struct ScanResult {
  std::vector<PanelMemberTrace> traces;
  std::vector<std::vector<LogSample>> nets;  // [member * (alpha_max+1) + alpha]
  int head_dropped = 0;
  EpsGrid effective_grid;
};

// Builds eps -> sup_{x in K} |d^alpha R(eps @ phi, x)| for every panel member
// and derivative order, dropping grid heads whose scaled supports leave
// Omega_phi over K.
ScanResult scan_panel(const FullRep& r, const std::vector<TestFnA>& panel, const CompactSet& k,
                      int alpha_max, const EpsGrid& grid, const ClassifySettings& s) {
  ScanResult out;

  std::vector<double> usable;
  for (double eps : grid.values) {
    bool ok = true;
    for (const auto& member : panel) {
      const MaybeInterval dom = omega_phi(scale_S(eps, member.phi), r.omega);
      if (!dom.present || !(dom.lo < k.lo && k.hi < dom.hi)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      usable.push_back(eps);
    } else {
      ++out.head_dropped;
    }
  }
  if (usable.size() < 8)
    throw Error(ErrorKind::Argument, "K too large for the scaled test supports on this grid");
  out.effective_grid = EpsGrid(usable);

  const std::size_t orders = static_cast<std::size_t>(alpha_max) + 1;
  out.nets.assign(panel.size() * orders, {});
  for (auto& net : out.nets) net.resize(usable.size());

  parallel_for(panel.size() * usable.size(), [&](std::size_t idx) {
    const std::size_t p = idx / usable.size();
    const std::size_t gi = idx % usable.size();
    const double eps = usable[gi];
    const SmoothFn scaled = scale_S(eps, panel[p].phi);
    const SmoothFn rep = r.materialize(scaled);
    for (std::size_t alpha = 0; alpha < orders; ++alpha) {
      const double v = sup_abs_on(rep.deriv(static_cast<int>(alpha)), k, s.sup_points);
      out.nets[p * orders + alpha][gi] = make_log_sample(eps, v);
    }
  });

  for (std::size_t p = 0; p < panel.size(); ++p) {
    for (std::size_t alpha = 0; alpha < orders; ++alpha) {
      PanelMemberTrace t;
      t.member = static_cast<int>(p);
      t.alpha = static_cast<int>(alpha);
      t.order = estimate_order_signal(out.nets[p * orders + alpha],
                                      std::min<int>(s.window, static_cast<int>(usable.size()) / 2),
                                      s.zero_floor);
      out.traces.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

FullVerdictReport full_moderate(const FullRep& r, const CompactSet& k, int alpha_max, int n_probe,
                                int panel_size, std::uint64_t seed, const EpsGrid& grid,
                                const ClassifySettings& s) {
  if (n_probe < 1) throw Error(ErrorKind::Argument, "full_moderate requires n_probe >= 1");
  FullVerdictReport out;
  for (int n = n_probe; n <= std::max(n_probe, 3); ++n) {  // the exists-N quantifier
    const auto panel = make_panel(n, panel_size, seed);
    const ScanResult scan = scan_panel(r, panel, k, alpha_max, grid, s);
    ClassifySettings local = s;
    local.n_cap = n;
    Verdict verdict = Verdict::Yes;
    for (const auto& net : scan.nets) verdict = verdict_and(verdict, is_moderate(net, local));
    out.traces = scan.traces;
    out.level = n;
    out.grid_head_dropped = scan.head_dropped;
    out.verdict = verdict;
    if (verdict != Verdict::No) return out;
  }
  return out;
}

FullVerdictReport full_negligible(const FullRep& r, const CompactSet& k, int alpha_max, int m,
                                  const std::vector<int>& q_schedule, int panel_size,
                                  std::uint64_t seed, const EpsGrid& grid,
                                  const ClassifySettings& s) {
  if (m < 1) throw Error(ErrorKind::Argument, "full_negligible requires m >= 1");
  if (q_schedule.empty()) throw Error(ErrorKind::Argument, "empty q schedule");
  FullVerdictReport out;
  std::vector<double> min_slopes;
  std::vector<bool> fits_ok;

  for (int q : q_schedule) {
    const auto panel = make_panel(q, panel_size, seed);
    const ScanResult scan = scan_panel(r, panel, k, alpha_max, grid, s);
    double min_slope = std::numeric_limits<double>::infinity();
    bool all_fit = true;
    Verdict verdict = Verdict::Yes;
    for (std::size_t i = 0; i < scan.nets.size(); ++i) {
      const auto& order = scan.traces[i].order;  // fit of the above-floor signal
      if (!order.all_zero) {
        min_slope = std::min(min_slope, order.slope);
        if (order.r2 < s.r2_min) all_fit = false;
      }
      Verdict v;
      if (order.all_zero) {
        v = Verdict::Yes;  // vanished below the measurement floor everywhere
      } else if (order.r2 >= s.r2_min) {
        v = order.slope >= static_cast<double>(m) ? Verdict::Yes : Verdict::No;
      } else {
        v = Verdict::Inconclusive;
      }
      verdict = verdict_and(verdict, v);
    }
    if (verdict == Verdict::Yes) {
      out.verdict = Verdict::Yes;
      out.level = q;
      out.traces = scan.traces;
      out.grid_head_dropped = scan.head_dropped;
      return out;
    }
    min_slopes.push_back(min_slope);
    fits_ok.push_back(all_fit);
    out.traces = scan.traces;
    out.level = q;
    out.grid_head_dropped = scan.head_dropped;
  }

  // No q worked: No when the slopes plateau below m with good fits, i.e. the
  // last two schedule steps brought no improvement toward m.
  if (min_slopes.size() >= 2) {
    const double last = min_slopes[min_slopes.size() - 1];
    const double prev = min_slopes[min_slopes.size() - 2];
    if (fits_ok.back() && fits_ok[fits_ok.size() - 2] && last < static_cast<double>(m) - 0.5 &&
        last <= prev + 0.25) {
      out.verdict = Verdict::No;
      return out;
    }
  }
  out.verdict = Verdict::Inconclusive;
  return out;
}

std::vector<int> default_q_schedule() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

}  // namespace gfcalc
