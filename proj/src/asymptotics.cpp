#include "gfcalc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gfcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares on (x, y); constant y fits exactly with r2 = 1.
Fit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  Fit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  if (syy > 0.0) {
    f.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  } else {
    f.r2 = ss_res <= 1e-24 ? 1.0 : 0.0;
  }
  return f;
}

bool effectively_zero(const LogSample& s, double floor) {
  return s.sign == 0 || std::exp(s.log_abs) <= floor;
}

// Tail window (smallest eps) is entirely at or below the zero floor.
bool tail_window_zero(const std::vector<LogSample>& samples, int window, double floor) {
  if (samples.empty()) return false;
  const std::size_t w = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(std::max(window, 1)));
  for (std::size_t i = samples.size() - w; i < samples.size(); ++i) {
    if (!effectively_zero(samples[i], floor)) return false;
  }
  return true;
}

int effective_window(const std::vector<LogSample>& samples, int requested) {
  const int half = static_cast<int>(samples.size()) / 2;
  return std::min(requested, std::max(half, 4));
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "inconclusive";
  }
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Yes;
}

EpsGrid::EpsGrid(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) throw Error(ErrorKind::Argument, "EpsGrid must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0 && values[i] <= 1.0))
      throw Error(ErrorKind::Argument, "EpsGrid values must lie in (0,1]");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw Error(ErrorKind::Argument, "EpsGrid values must be strictly decreasing");
  }
}

EpsGrid default_grid(int k_min, int k_max) {
  if (!(1 <= k_min && k_min < k_max && k_max <= 60))
    throw Error(ErrorKind::Argument, "default_grid requires 1 <= k_min < k_max <= 60");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) v.push_back(std::ldexp(1.0, -k));
  return EpsGrid(std::move(v));
}

LogSample make_log_sample(double eps, double value) {
  LogSample s;
  s.eps = eps;
  s.log_eps = std::log(eps);
  if (value == 0.0) {
    s.sign = 0;
    s.log_abs = -kInf;
  } else {
    s.sign = value > 0.0 ? 1 : -1;
    s.log_abs = std::log(std::abs(value));
  }
  return s;
}

std::vector<double> sample_net(const NetRule& net, const EpsGrid& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double e : grid.values) out.push_back(net(e));
  return out;
}

std::vector<LogSample> sample_net_log(const NetRule& net, const EpsGrid& grid) {
  std::vector<LogSample> out;
  out.reserve(grid.size());
  for (double e : grid.values) out.push_back(make_log_sample(e, net(e)));
  return out;
}

OrderReport estimate_order(const std::vector<LogSample>& samples, int window) {
  OrderReport rep;
  std::vector<const LogSample*> usable;
  usable.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.sign == 0) {
      ++rep.zeros_dropped;
    } else if (!std::isfinite(s.log_abs)) {
      ++rep.nonfinite_dropped;  // overflowed magnitudes cannot enter the fit
    } else {
      usable.push_back(&s);
    }
  }
  if (usable.empty() && rep.nonfinite_dropped == 0) {
    rep.all_zero = true;
    rep.slope = kInf;
    rep.intercept = -kInf;
    rep.r2 = 1.0;
    return rep;
  }
  const int w = std::min<int>(window, static_cast<int>(usable.size()));
  if (w < 4) throw Error(ErrorKind::Argument, "insufficient samples: need at least 4 usable tail points");
  std::vector<double> x, y;
  x.reserve(static_cast<std::size_t>(w));
  y.reserve(static_cast<std::size_t>(w));
  for (std::size_t i = usable.size() - static_cast<std::size_t>(w); i < usable.size(); ++i) {
    x.push_back(usable[i]->log_eps);
    y.push_back(usable[i]->log_abs);
  }
  const Fit f = ols(x, y);
  rep.slope = f.slope;
  rep.intercept = f.intercept;
  rep.r2 = f.r2;
  rep.window = w;
  return rep;
}

OrderReport estimate_order_signal(const std::vector<LogSample>& samples, int window,
                                  double floor) {
  const double log_floor = std::log(floor);
  std::vector<LogSample> signal;
  signal.reserve(samples.size());
  OrderReport rep;
  for (const auto& s : samples) {
    if (s.sign == 0) {
      ++rep.zeros_dropped;
    } else if (!std::isfinite(s.log_abs)) {
      ++rep.nonfinite_dropped;
    } else if (s.log_abs <= log_floor) {
      ++rep.zeros_dropped;
    } else {
      signal.push_back(s);
    }
  }
  if (signal.size() < 4) {
    rep.all_zero = true;
    rep.slope = kInf;
    rep.intercept = -kInf;
    rep.r2 = 1.0;
    return rep;
  }
  OrderReport fit = estimate_order(signal, window);
  fit.zeros_dropped += rep.zeros_dropped;
  fit.nonfinite_dropped += rep.nonfinite_dropped;
  return fit;
}

Verdict is_moderate(const std::vector<LogSample>& samples, const ClassifySettings& s) {
  if (s.n_cap < 1) throw Error(ErrorKind::Argument, "is_moderate requires n_cap >= 1");
  const int w = effective_window(samples, s.window);
  if (tail_window_zero(samples, w, s.zero_floor)) return Verdict::Yes;

  // Pointwise-dominance No: |value| above eps^-n_cap across the tail window.
  // Catches super-power growth whose log-log fit is poor or overflowed.
  {
    const std::size_t wt = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(w));
    int violations = 0;
    for (std::size_t i = samples.size() - wt; i < samples.size(); ++i) {
      const auto& smp = samples[i];
      if (smp.sign != 0 && smp.log_abs > -static_cast<double>(s.n_cap) * smp.log_eps) ++violations;
    }
    if (violations >= static_cast<int>(wt) - wt / 5) return Verdict::No;
  }

  const OrderReport rep = estimate_order(samples, w);
  if (rep.all_zero) return Verdict::Yes;
  const double n_cap = static_cast<double>(s.n_cap);
  if (rep.r2 >= s.r2_min && rep.nonfinite_dropped == 0) {
    return rep.slope >= -n_cap ? Verdict::Yes : Verdict::No;
  }
  return Verdict::Inconclusive;
}

Verdict is_negligible(const std::vector<LogSample>& samples, const ClassifySettings& s) {
  if (s.m_max < 2) throw Error(ErrorKind::Argument, "is_negligible requires m_max >= 2");
  const int w = effective_window(samples, s.window);
  if (tail_window_zero(samples, w, s.zero_floor)) return Verdict::Yes;
  {
    const std::size_t wt = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(w));
    for (std::size_t i = samples.size() - wt; i < samples.size(); ++i) {
      if (samples[i].sign != 0 && !std::isfinite(samples[i].log_abs)) return Verdict::No;
    }
  }
  const OrderReport rep = estimate_order(samples, w);
  if (rep.all_zero) return Verdict::Yes;
  const double m = static_cast<double>(s.m_max);
  if (rep.r2 >= s.r2_min) {
    if (rep.slope >= m) return Verdict::Yes;
    if (rep.slope <= m - 1.0) return Verdict::No;
  }
  return Verdict::Inconclusive;
}

Verdict is_negligible(const std::vector<LogSample>& samples, int m_max) {
  ClassifySettings s;
  s.m_max = m_max;
  return is_negligible(samples, s);
}

Verdict tends_to_zero(const std::vector<LogSample>& samples, const ClassifySettings& s) {
  if (samples.empty()) throw Error(ErrorKind::Argument, "tends_to_zero requires samples");
  const int w = effective_window(samples, s.window);
  if (tail_window_zero(samples, w, s.zero_floor)) return Verdict::Yes;

  // Overflowed magnitudes on the tail: the net explodes.
  {
    const std::size_t wt = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(w));
    for (std::size_t i = samples.size() - wt; i < samples.size(); ++i) {
      if (samples[i].sign != 0 && !std::isfinite(samples[i].log_abs)) return Verdict::No;
    }
  }

  // Power-law branch on the measurable signal: a net whose signal decays
  // with positive order and then sinks below the floor tends to zero.
  const OrderReport rep = estimate_order_signal(samples, w, s.zero_floor);
  if (rep.all_zero) return Verdict::Yes;
  if (rep.r2 >= s.r2_min) {
    if (rep.slope >= 0.1) return Verdict::Yes;
    if (rep.slope <= -0.1) return Verdict::No;
  }

  // Tail pinned at the scale of the data: bounded away from zero.
  double global_max = 0.0;
  for (const auto& smp : samples) {
    if (smp.sign != 0) global_max = std::max(global_max, std::exp(smp.log_abs));
  }
  const std::size_t q = std::max<std::size_t>(samples.size() / 4, 2);
  double tail_min = kInf;
  for (std::size_t i = samples.size() - q; i < samples.size(); ++i) {
    tail_min = std::min(tail_min, samples[i].sign == 0 ? 0.0 : std::exp(samples[i].log_abs));
  }
  if (global_max > 0.0 && tail_min >= 0.1 * global_max) return Verdict::No;

  // Slow-decay branch: regress log|value| against ln ln(1/eps) over all
  // nonzero samples. Catches nets like 1/ln(1/eps) that vanish without being
  // O(eps^m) for any m > 0.
  std::vector<double> x2, y2;
  for (const auto& smp : samples) {
    if (smp.sign == 0 || smp.eps >= 1.0) continue;
    x2.push_back(std::log(-smp.log_eps));
    y2.push_back(smp.log_abs);
  }
  if (x2.size() >= 4) {
    const Fit f2 = ols(x2, y2);
    // Require the quarter-envelopes to still be shrinking at the finest scale.
    const std::size_t qq = std::max<std::size_t>(samples.size() / 4, 2);
    auto quarter_max = [&](std::size_t begin, std::size_t end) {
      double m = 0.0;
      for (std::size_t i = begin; i < end && i < samples.size(); ++i) {
        if (samples[i].sign != 0) m = std::max(m, std::exp(samples[i].log_abs));
      }
      return m;
    };
    const double q3 = quarter_max(samples.size() - 2 * qq, samples.size() - qq);
    const double q4 = quarter_max(samples.size() - qq, samples.size());
    if (f2.slope <= -0.25 && f2.r2 >= 0.95 && q4 < q3) return Verdict::Yes;
  }
  return Verdict::Inconclusive;
}

}  // namespace gfcalc
