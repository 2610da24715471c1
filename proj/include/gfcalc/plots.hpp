#pragma once

#include <string>
#include <vector>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/interval.hpp"
#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Parametrized family d : U -> D(omega) given by a kernel expression in the
// variables (u, x). Smoothness of the kernel is structural (expression
// trees); the decidable content of the plot criteria is the support logic.
struct PlotFamily {
  SmoothFn kernel;  // two-variable tree
  OpenInterval U;
  OpenInterval omega = OpenInterval::real_line();

  SmoothFn slice(double u0) const;
};

PlotFamily make_family(const std::string& kernel_expr, const OpenInterval& U,
                       const OpenInterval& omega = OpenInterval::real_line());

// Detected support of one slice. Tracked (exact) structural support is
// preferred; slices without tracked support are scanned numerically on a
// dyadically grown box with threshold 1e-13 and bisection refinement.
struct SliceSupport {
  enum class Kind { Empty, Compact, Overflow } kind = Kind::Empty;
  double lo = 0.0;
  double hi = 0.0;
};

SliceSupport scan_slice_support(const PlotFamily& d, double u0);

// Spec'd entry point: throws "support overflows scan window" on overflow.
CompactSet support_slice(const PlotFamily& d, double u0);

// Every sampled slice compactly supported inside omega.
Verdict pointwise_bounded(const PlotFamily& d, int samples = 33);

// Shrinking-neighborhood check at u0: the hull of sampled slice supports over
// V = (u0 - r, u0 + r) cap U must stop growing as r halves and stay compact.
Verdict locally_uniform_bounded(const PlotFamily& d, double u0, int shrink_steps = 8,
                                int samples = 33);

// One K for all of U: hull of sampled slice supports, refined by doubling the
// sample count until it stabilizes or keeps growing.
Verdict uniform_bounded(const PlotFamily& d);

enum class PlotClass { PlotOfD, PointwiseOnly, NotPointwise };

const char* to_string(PlotClass c);

struct PlotReport {
  PlotClass cls = PlotClass::NotPointwise;
  Verdict pointwise = Verdict::Inconclusive;
  std::vector<std::pair<double, Verdict>> local_checks;  // (u0, verdict)
};

// Composite classification: smooth kernel + locally uniformly bounded support
// characterizes plots of D(omega); failure at some sampled u0 leaves a family
// that is only pointwise bounded.
PlotReport plot_verdict(const PlotFamily& d);

// Membership criterion for D_K(omega): every sampled slice's support lies in K.
Verdict plot_verdict_K(const PlotFamily& d, const CompactSet& k);

}  // namespace gfcalc
