#include <doctest.h>

#include <cmath>

#include "gfcalc/plots.hpp"

using namespace gfcalc;

TEST_CASE("support_slice on translated and dilated bumps") {
  const PlotFamily translated = make_family("bump(x-u)", OpenInterval(-1.0, 1.0));
  const CompactSet s = support_slice(translated, 0.3);
  CHECK(s.lo == doctest::Approx(-0.7).epsilon(1e-6));
  CHECK(s.hi == doctest::Approx(1.3).epsilon(1e-6));

  const PlotFamily dilated = make_family("bump(u*x)", OpenInterval(0.0, 1.0));
  const CompactSet sd = support_slice(dilated, 0.5);
  CHECK(sd.lo == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(sd.hi == doctest::Approx(2.0).epsilon(1e-6));

  const PlotFamily zero = make_family("0", OpenInterval(-1.0, 1.0));
  const auto sz = scan_slice_support(zero, 0.0);
  CHECK(sz.kind == SliceSupport::Kind::Empty);

  const PlotFamily unbounded = make_family("sin(x)*(1+u)", OpenInterval(0.0, 1.0));
  CHECK_THROWS_WITH_AS(support_slice(unbounded, 0.5), "support overflows scan window", Error);
}

TEST_CASE("pointwise boundedness") {
  CHECK(pointwise_bounded(make_family("bump(x-u)", OpenInterval(-1.0, 1.0))) == Verdict::Yes);
  CHECK(pointwise_bounded(make_family("bump(u*x)", OpenInterval(0.0, 1.0))) == Verdict::Yes);
  CHECK(pointwise_bounded(make_family("sin(x)*(1+u)", OpenInterval(0.0, 1.0))) == Verdict::No);
}

TEST_CASE("locally uniform boundedness") {
  const PlotFamily translated = make_family("bump(x-u)", OpenInterval(-1.0, 1.0));
  for (double u0 : {-0.9, 0.0, 0.42}) {
    CHECK(locally_uniform_bounded(translated, u0) == Verdict::Yes);
  }

  // Escape to infinity as u -> 0+: hulls double on every shrink.
  const PlotFamily dilated = make_family("bump(u*x)", OpenInterval(0.0, 1.0));
  CHECK(locally_uniform_bounded(dilated, 0.001) == Verdict::No);

  const PlotFamily constant_family = make_family("bump(x)*(1+0*u)", OpenInterval(-1.0, 1.0));
  CHECK(locally_uniform_bounded(constant_family, 0.2) == Verdict::Yes);
  CHECK(uniform_bounded(constant_family) == Verdict::Yes);
}

TEST_CASE("uniform boundedness") {
  CHECK(uniform_bounded(make_family("bump(x-u)", OpenInterval(-1.0, 1.0))) == Verdict::Yes);
  CHECK(uniform_bounded(make_family("bump(u*x)", OpenInterval(0.0, 1.0))) == Verdict::No);
}

TEST_CASE("plot classification") {
  CHECK(plot_verdict(make_family("bump(x-u)", OpenInterval(-1.0, 1.0))).cls ==
        PlotClass::PlotOfD);
  CHECK(plot_verdict(make_family("bump(u*x)", OpenInterval(0.0, 1.0))).cls ==
        PlotClass::PointwiseOnly);
  CHECK(plot_verdict(make_family("sin(x)*(1+u)", OpenInterval(0.0, 1.0))).cls ==
        PlotClass::NotPointwise);
}

TEST_CASE("plot membership in D_K") {
  const PlotFamily narrow = make_family("bump(x-u)", OpenInterval(-0.1, 0.1));
  CHECK(plot_verdict_K(narrow, CompactSet(-1.2, 1.2)) == Verdict::Yes);

  const PlotFamily wide = make_family("bump(x-u)", OpenInterval(-1.0, 1.0));
  CHECK(plot_verdict_K(wide, CompactSet(-1.2, 1.2)) == Verdict::No);
}

TEST_CASE("implication chain across the test families") {
  const std::vector<PlotFamily> families = {
      make_family("bump(x-u)", OpenInterval(-1.0, 1.0)),
      make_family("bump(u*x)", OpenInterval(0.0, 1.0)),
      make_family("bump(x)*(1+0*u)", OpenInterval(-1.0, 1.0)),
      make_family("bump(x-u)*u", OpenInterval(-0.5, 0.5)),
  };
  for (const auto& d : families) {
    if (uniform_bounded(d) == Verdict::Yes) {
      for (double t : {0.1, 0.5, 0.9}) {
        const double u0 = d.U.lo + t * (d.U.hi - d.U.lo);
        CHECK(locally_uniform_bounded(d, u0) == Verdict::Yes);
      }
      CHECK(pointwise_bounded(d) == Verdict::Yes);
    }
    if (plot_verdict_K(d, CompactSet(-3.0, 3.0)) == Verdict::Yes) {
      CHECK(plot_verdict(d).cls != PlotClass::NotPointwise);
    }
  }
}

TEST_CASE("translation invariance of verdicts") {
  for (const char* base : {"bump(x-u)", "bump(u*x)"}) {
    for (double c : {-1.0, 0.5, 1.0}) {
      const OpenInterval U = std::string(base) == "bump(x-u)" ? OpenInterval(-1.0, 1.0)
                                                              : OpenInterval(0.0, 1.0);
      const PlotFamily plain = make_family(base, U);
      std::string shifted_expr = std::string(base);
      // kernel(u, x - c)
      const std::string replaced = std::string(base) == "bump(x-u)"
                                       ? "bump((x-" + std::to_string(c) + ")-u)"
                                       : "bump(u*(x-" + std::to_string(c) + "))";
      const PlotFamily shifted = make_family(replaced, U);
      CHECK(plot_verdict(plain).cls == plot_verdict(shifted).cls);
    }
  }
}
