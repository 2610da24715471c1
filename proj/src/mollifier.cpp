#include "gfcalc/mollifier.hpp"

#include <cmath>
#include <mutex>

#include "gfcalc/quadrature.hpp"

namespace gfcalc {

namespace {

constexpr int kMaxQ = 12;
constexpr double kMomentTol = 1e-13;

double integrate_abs(const SmoothFn& f, double tol) {
  const Support s = f.support();
  if (s.is_empty()) return 0.0;
  if (!s.is_interval()) throw Error(ErrorKind::Argument, "l1 mass requires compact support");
  return integrate_fn([&](double x) { return std::abs(f.eval(x)); }, s.lo, s.hi, tol);
}

}  // namespace

double bump_moment(int k) {
  static std::mutex mu;
  static std::vector<double> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= k) {
    const int n = static_cast<int>(cache.size());
    if (n % 2 == 1) {
      cache.push_back(0.0);  // odd moments vanish: bump is even
      continue;
    }
    cache.push_back(integrate_fn(
        [&](double x) {
          double p = 1.0;
          for (int i = 0; i < n; ++i) p *= x;
          return p * bump().eval(x);
        },
        -1.0, 1.0, kMomentTol));
  }
  return cache[static_cast<std::size_t>(k)];
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  // Gaussian elimination with partial pivoting; systems here are tiny.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300)
      throw Error(ErrorKind::Numeric, "singular linear system");
    std::swap(a[col], a[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

Mollifier base_bump() {
  Mollifier m;
  m.fn = bump();
  m.q = 1;  // first moment vanishes by symmetry
  m.l1_mass = 1.0;
  m.poly_coeffs = {1.0};
  return m;
}

Mollifier make_moment_mollifier(int q) {
  if (q < 0 || q > kMaxQ)
    throw Error(ErrorKind::Argument, "make_moment_mollifier requires 0 <= q <= 12");
  if (q == 0) {
    Mollifier m = base_bump();
    m.q = 0;
    return m;
  }

  const std::size_t n = static_cast<std::size_t>(q) + 1;
  std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) gram[j][k] = bump_moment(static_cast<int>(j + k));
  std::vector<double> rhs(n, 0.0);
  rhs[0] = 1.0;

  const std::vector<double> coeffs = solve_dense(gram, rhs);

  // Residual check guards against ill conditioning at high q.
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double acc = -rhs[j];
    for (std::size_t k = 0; k < n; ++k) acc += gram[j][k] * coeffs[k];
    residual = std::max(residual, std::abs(acc));
  }
  if (residual > 1e-8) throw Error(ErrorKind::Numeric, "ill-conditioned moment system");

  Mollifier m;
  m.fn = prod({bump(), polynomial(coeffs, identity())});
  m.q = q;
  m.poly_coeffs = coeffs;
  m.l1_mass = integrate_abs(m.fn, 1e-9);
  return m;
}

const Mollifier& MollifierNet::at(double eps) const {
  // Stage j for eps in (thresholds[j], thresholds[j-1]]; the last stage takes
  // everything at or below its threshold.
  std::size_t j = 0;
  while (j < thresholds.size() && eps <= thresholds[j]) ++j;
  return stages[j];
}

MollifierNet make_schedule(int q_max) {
  std::vector<double> thresholds;
  for (int j = 1; j <= q_max; ++j) thresholds.push_back(std::ldexp(1.0, -4 * j));
  return make_schedule(q_max, std::move(thresholds));
}

MollifierNet make_schedule(int q_max, std::vector<double> thresholds) {
  if (q_max < 0 || q_max > kMaxQ)
    throw Error(ErrorKind::Argument, "make_schedule requires 0 <= q_max <= 12");
  if (static_cast<int>(thresholds.size()) != q_max)
    throw Error(ErrorKind::Argument, "make_schedule requires one threshold per stage 1..q_max");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0 && thresholds[i] <= 1.0))
      throw Error(ErrorKind::Argument, "thresholds must lie in (0,1]");
    if (i > 0 && !(thresholds[i] < thresholds[i - 1]))
      throw Error(ErrorKind::Argument, "thresholds must be strictly decreasing");
  }
  MollifierNet net;
  net.thresholds = std::move(thresholds);
  net.stages.reserve(static_cast<std::size_t>(q_max) + 1);
  for (int j = 0; j <= q_max; ++j) net.stages.push_back(make_moment_mollifier(j));
  return net;
}

MollifierCheck verify_properties(const MollifierNet& net, const EpsGrid& grid) {
  MollifierCheck out;

  out.support_ok = true;
  out.mass_ok = true;
  out.moments_ok = true;
  for (const auto& stage : net.stages) {
    const Support s = stage.fn.support();
    if (!s.is_interval() || s.lo < -1.0 || s.hi > 1.0) out.support_ok = false;
    const auto ms = moments(stage.fn, stage.q, 1e-11);
    if (std::abs(ms[0] - 1.0) > 1e-10) out.mass_ok = false;
    double worst = 0.0;
    for (int k = 1; k <= stage.q; ++k) worst = std::max(worst, std::abs(ms[static_cast<std::size_t>(k)]));
    out.stage_moment_worst.push_back(worst);
    if (worst > 1e-8) out.moments_ok = false;
  }

  // A finite-stage schedule is eventually constant in psi, so each sup-net is
  // a step function: moderate with slope about zero on the tail.
  const CompactSet unit(-1.0, 1.0);
  for (int alpha = 0; alpha <= 3; ++alpha) {
    std::vector<LogSample> samples;
    samples.reserve(grid.size());
    for (double eps : grid.values) {
      const Mollifier& m = net.at(eps);
      samples.push_back(make_log_sample(eps, sup_abs_on(m.fn.deriv(alpha), unit, 513)));
    }
    MollifierCheck::AlphaTrace trace;
    trace.alpha = alpha;
    if (grid.size() >= 4) trace.order = estimate_order(samples, 12);
    out.sup_traces.push_back(std::move(trace));
  }

  out.l1_trajectory.reserve(grid.size());
  for (double eps : grid.values) out.l1_trajectory.push_back(net.at(eps).l1_mass);
  out.l1_final = net.stages.back().l1_mass;
  return out;
}

}  // namespace gfcalc
