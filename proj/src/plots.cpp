#include "gfcalc/plots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfcalc/exprparse.hpp"

namespace gfcalc {

namespace {

constexpr double kSupportThreshold = 1e-13;
constexpr int kScanPoints = 4097;
constexpr double kMaxScanBox = 1e6;

// Interior samples of an open interval: m points strictly inside (lo, hi).
std::vector<double> interior_samples(double lo, double hi, int m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    out.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m + 1));
  return out;
}

// Bisection for the edge where |f| crosses the threshold between a live
// sample and a dead one.
double refine_edge(const SmoothFn& f, double dead, double live) {
  for (int i = 0; i < 60 && std::abs(live - dead) > 1e-12 * (1.0 + std::abs(live)); ++i) {
    const double mid = 0.5 * (dead + live);
    if (std::abs(f.eval(mid)) >= kSupportThreshold) {
      live = mid;
    } else {
      dead = mid;
    }
  }
  return dead;
}

SliceSupport scan_box(const SmoothFn& f, double lo, double hi) {
  int first = -1, last = -1;
  std::vector<double> xs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScanPoints - 1);
    if (std::abs(f.eval(xs[static_cast<std::size_t>(i)])) >= kSupportThreshold) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return {SliceSupport::Kind::Empty, 0.0, 0.0};
  SliceSupport out;
  out.kind = SliceSupport::Kind::Compact;
  out.lo = first == 0 ? xs[0] : refine_edge(f, xs[static_cast<std::size_t>(first - 1)],
                                            xs[static_cast<std::size_t>(first)]);
  out.hi = last == kScanPoints - 1
               ? xs.back()
               : refine_edge(f, xs[static_cast<std::size_t>(last + 1)],
                             xs[static_cast<std::size_t>(last)]);
  // Live values at the box edges mean the support was not actually captured.
  if (first == 0 || last == kScanPoints - 1) out.kind = SliceSupport::Kind::Overflow;
  return out;
}

}  // namespace

SmoothFn PlotFamily::slice(double u0) const { return substitute_u(kernel, u0); }

PlotFamily make_family(const std::string& kernel_expr, const OpenInterval& U,
                       const OpenInterval& omega) {
  PlotFamily d;
  d.kernel = parse_smoothfn(kernel_expr, /*allow_u=*/true);
  d.U = U;
  d.omega = omega;
  return d;
}

SliceSupport scan_slice_support(const PlotFamily& d, double u0) {
  if (!d.U.contains(u0)) throw Error(ErrorKind::Argument, "u0 outside the parameter interval U");
  const SmoothFn f = d.slice(u0);
  const Support tracked = f.support();
  if (tracked.is_empty()) return {SliceSupport::Kind::Empty, 0.0, 0.0};
  if (tracked.is_interval()) {
    // Exact structural support; clip to omega.
    const double lo = std::max(tracked.lo, d.omega.lo);
    const double hi = std::min(tracked.hi, d.omega.hi);
    if (lo > hi) return {SliceSupport::Kind::Empty, 0.0, 0.0};
    return {SliceSupport::Kind::Compact, lo, hi};
  }
  // Untracked support: numeric scan, growing the box dyadically on an
  // unbounded omega until the slice vanishes at the edges.
  if (d.omega.bounded()) return scan_box(f, d.omega.lo, d.omega.hi);
  for (double box = 8.0; box <= kMaxScanBox; box *= 2.0) {
    const double lo = std::isfinite(d.omega.lo) ? d.omega.lo : -box;
    const double hi = std::isfinite(d.omega.hi) ? d.omega.hi : box;
    const SliceSupport s = scan_box(f, lo, hi);
    if (s.kind != SliceSupport::Kind::Overflow) return s;
  }
  return {SliceSupport::Kind::Overflow, 0.0, 0.0};
}

CompactSet support_slice(const PlotFamily& d, double u0) {
  const SliceSupport s = scan_slice_support(d, u0);
  if (s.kind == SliceSupport::Kind::Overflow)
    throw Error(ErrorKind::Numeric, "support overflows scan window");
  if (s.kind == SliceSupport::Kind::Empty) return CompactSet(0.0, 0.0);
  return CompactSet(s.lo, s.hi);
}

Verdict pointwise_bounded(const PlotFamily& d, int samples) {
  if (samples < 3) throw Error(ErrorKind::Argument, "pointwise_bounded requires samples >= 3");
  for (double u0 : interior_samples(d.U.lo, d.U.hi, samples)) {
    const SliceSupport s = scan_slice_support(d, u0);
    if (s.kind == SliceSupport::Kind::Overflow) return Verdict::No;
    if (s.kind == SliceSupport::Kind::Compact &&
        !d.omega.strictly_contains(CompactSet(s.lo, s.hi)))
      return Verdict::No;
  }
  return Verdict::Yes;
}

namespace {

struct HullScan {
  bool compact = true;
  bool any = false;
  double lo = 0.0;
  double hi = 0.0;
};

HullScan hull_over(const PlotFamily& d, double lo, double hi, int samples) {
  HullScan out;
  for (double u0 : interior_samples(lo, hi, samples)) {
    const SliceSupport s = scan_slice_support(d, u0);
    if (s.kind == SliceSupport::Kind::Overflow) {
      out.compact = false;
      return out;
    }
    if (s.kind == SliceSupport::Kind::Empty) continue;
    if (!out.any) {
      out.lo = s.lo;
      out.hi = s.hi;
      out.any = true;
    } else {
      out.lo = std::min(out.lo, s.lo);
      out.hi = std::max(out.hi, s.hi);
    }
  }
  return out;
}

bool hull_inside_omega(const HullScan& h, const OpenInterval& omega) {
  if (!h.any) return true;  // all slices vanish
  return omega.strictly_contains(CompactSet(h.lo, h.hi));
}

}  // namespace

Verdict locally_uniform_bounded(const PlotFamily& d, double u0, int shrink_steps, int samples) {
  if (!d.U.contains(u0)) throw Error(ErrorKind::Argument, "u0 outside the parameter interval U");
  if (shrink_steps < 2) throw Error(ErrorKind::Argument, "need at least 2 shrink steps");

  const double r0 = 0.5 * (d.U.hi - d.U.lo);
  std::vector<double> widths;
  std::vector<bool> admissible;
  for (int i = 0; i < shrink_steps; ++i) {
    const double r = r0 / std::ldexp(1.0, i);
    const double lo = std::max(d.U.lo, u0 - r);
    const double hi = std::min(d.U.hi, u0 + r);
    const HullScan h = hull_over(d, lo, hi, samples);
    if (!h.compact) {
      widths.push_back(std::numeric_limits<double>::infinity());
      admissible.push_back(false);
      continue;
    }
    widths.push_back(h.any ? h.hi - h.lo : 0.0);
    admissible.push_back(hull_inside_omega(h, d.omega));
  }

  // Stabilized: successive hull widths stop growing (ratio below 1.25) at
  // some scale whose hull stays compact inside omega.
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    if (!admissible[i] || !admissible[i + 1]) continue;
    if (widths[i] == 0.0 && widths[i + 1] == 0.0) return Verdict::Yes;
    if (widths[i] > 0.0 && std::isfinite(widths[i]) && widths[i + 1] <= 1.25 * widths[i])
      return Verdict::Yes;
  }
  // Diverging: growth persists at the finest two scales.
  const std::size_t n = widths.size();
  const bool tail_finite = std::isfinite(widths[n - 1]) && std::isfinite(widths[n - 2]);
  if (n >= 3 && tail_finite && std::isfinite(widths[n - 3])) {
    if (widths[n - 1] >= 1.5 * widths[n - 2] && widths[n - 2] >= 1.5 * widths[n - 3])
      return Verdict::No;
  }
  if (!tail_finite) return Verdict::No;
  return Verdict::Inconclusive;
}

Verdict uniform_bounded(const PlotFamily& d) {
  double prev_width = -1.0;
  HullScan last;
  for (int samples : {17, 33, 65, 129}) {
    last = hull_over(d, d.U.lo, d.U.hi, samples);
    if (!last.compact) return Verdict::No;
    const double width = last.any ? last.hi - last.lo : 0.0;
    if (prev_width >= 0.0 && width > 1.3 * std::max(prev_width, 1e-300)) {
      // Hull keeps growing under refinement: supports escape along U.
      prev_width = width;
      continue;
    }
    if (prev_width >= 0.0 && width <= 1.05 * std::max(prev_width, 0.0)) {
      return hull_inside_omega(last, d.omega) ? Verdict::Yes : Verdict::No;
    }
    prev_width = width;
  }
  // Still growing at the finest refinement.
  return Verdict::No;
}

const char* to_string(PlotClass c) {
  switch (c) {
    case PlotClass::PlotOfD: return "PlotOfD";
    case PlotClass::PointwiseOnly: return "PointwiseOnly";
    default: return "NotPointwise";
  }
}

PlotReport plot_verdict(const PlotFamily& d) {
  PlotReport rep;
  rep.pointwise = pointwise_bounded(d);
  if (rep.pointwise != Verdict::Yes) {
    rep.cls = PlotClass::NotPointwise;
    return rep;
  }
  // Probe near both ends of U and in the interior; escape-to-infinity
  // families fail near a boundary.
  const double w = d.U.hi - d.U.lo;
  const std::vector<double> quantiles = {0.001, 0.25, 0.5, 0.75, 0.999};
  bool all_yes = true;
  for (double t : quantiles) {
    const double u0 = d.U.lo + t * w;
    const Verdict v = locally_uniform_bounded(d, u0);
    rep.local_checks.emplace_back(u0, v);
    if (v != Verdict::Yes) all_yes = false;
  }
  rep.cls = all_yes ? PlotClass::PlotOfD : PlotClass::PointwiseOnly;
  return rep;
}

Verdict plot_verdict_K(const PlotFamily& d, const CompactSet& k) {
  for (int samples : {33, 129}) {
    for (double u0 : interior_samples(d.U.lo, d.U.hi, samples)) {
      const SliceSupport s = scan_slice_support(d, u0);
      if (s.kind == SliceSupport::Kind::Overflow) return Verdict::No;
      if (s.kind == SliceSupport::Kind::Empty) continue;
      if (!(k.lo <= s.lo && s.hi <= k.hi)) return Verdict::No;
    }
  }
  return Verdict::Yes;
}

}  // namespace gfcalc
