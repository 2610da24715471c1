#include <doctest.h>

#include <cmath>

#include "gfcalc/quadrature.hpp"
#include "gfcalc/special_alg.hpp"

using namespace gfcalc;

namespace {

const EpsGrid& grid() {
  static EpsGrid g = default_grid();
  return g;
}

// Fixed-stage tails keep the sup-nets pure power laws.
const MollifierNet& sched4() {
  static MollifierNet net = make_schedule(4);
  return net;
}

const MollifierNet& sched6() {
  static MollifierNet net = make_schedule(6);
  return net;
}

const OpenInterval omega_all = OpenInterval::real_line();

// Per-eps bisection of H_eps - 1/2 on [-eps, eps]; the separation oracle.
double half_crossing(const GenFunction& h, double eps) {
  const SmoothFn rep = h.rep(eps);
  double lo = -eps, hi = eps;
  REQUIRE(rep.eval(lo) < 0.5);
  REQUIRE(rep.eval(hi) > 0.5);
  for (int i = 0; i < 80 && hi - lo > 1e-12 * eps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rep.eval(mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("sigma embeds constant nets") {
  const GenFunction s = sigma(sin_of(identity()), omega_all);
  CHECK(s.rep(0.5).same_tree(s.rep(0.01)));

  const GenFunction z = sigma(constant(0.0), omega_all);
  CHECK(z.rep(0.25).eval(0.3) == 0.0);

  const GenFunction fg = sigma(sin_of(identity()), omega_all) * sigma(bump(), omega_all);
  const GenFunction fg_direct = sigma(sin_of(identity()) * bump(), omega_all);
  for (double x : {-0.5, 0.2, 0.8}) {
    CHECK(fg.rep(0.1).eval(x) == doctest::Approx(fg_direct.rep(0.1).eval(x)).epsilon(1e-15));
  }
}

TEST_CASE("iota of delta is the scaled mollifier") {
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  for (double eps : {0.5, 0.125, std::ldexp(1.0, -20)}) {
    const double expected = sched4().at(eps).fn.eval(0.0) / eps;
    CHECK(d.rep(eps).eval(0.0) == doctest::Approx(expected).epsilon(1e-12));
  }

  // Order of the value-at-zero net: the "delta(0) is infinite" computation.
  const GenNumber at0([&](double e) { return d.rep(e).eval(0.0); });
  const auto rep = estimate_order(at0.samples(grid()), 12);
  CHECK(rep.slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("iota of Heaviside passes through one half") {
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  for (double eps : {0.5, 0.0625, std::ldexp(1.0, -18)}) {
    CHECK(h.rep(eps).eval(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("iota reproduces polynomials below the stage order") {
  const SmoothFn f = polynomial({0.5, -1.0, 0.25}, identity());  // degree 2
  const GenFunction emb = iota(Distribution::regular(f), sched4(), omega_all);
  for (double eps : {std::ldexp(1.0, -10), std::ldexp(1.0, -14)}) {
    // Stages active here have q >= 2, so the embedding reproduces f.
    for (double x : {-0.8, 0.0, 0.6}) {
      CHECK(emb.rep(eps).eval(x) == doctest::Approx(f.eval(x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("algebra operations act representative-wise") {
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  const GenFunction sq = smooth_compose(int_pow(2, identity()), h);
  const GenFunction prod_hh = h * h;
  for (double eps : {0.25, 0.01}) {
    for (double x : {-0.1, 0.0, 0.05}) {
      CHECK(sq.rep(eps).eval(x) == doctest::Approx(prod_hh.rep(eps).eval(x)).epsilon(1e-13));
    }
  }

  const GenFunction cancel = h + (-h);
  CHECK(negligible_on(cancel, CompactSet(-1.0, 1.0), 0, grid()).verdict == Verdict::Yes);

  const GenFunction off(OpenInterval(-2.0, 2.0), [](double) { return bump(); });
  CHECK_THROWS_AS(h + off, Error);
}

TEST_CASE("partial derivative commutes with the embedding") {
  // d iota(H) and iota(delta) share the same representative tree content.
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  const GenFunction dh = partial(h, 1);
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  const CompactSet k(-1.0, 1.0);
  for (double eps : grid().values) {
    const SmoothFn diff = dh.rep(eps) - d.rep(eps);
    CHECK(sup_abs_on(diff, k, 257) <= 1e-9);
  }

  const GenFunction s = sigma(sin_of(identity()), omega_all);
  const GenFunction ds = partial(s, 1);
  for (double x : {-1.0, 0.0, 0.7}) {
    CHECK(ds.rep(0.1).eval(x) == doctest::Approx(std::cos(x)).epsilon(1e-14));
  }

  const GenFunction same = partial(s, 0);
  CHECK(same.rep(0.5).same_tree(s.rep(0.5)));
}

TEST_CASE("derivative commutation for catalog atoms") {
  for (const Distribution& u : {Distribution::heaviside(), Distribution::delta(),
                                Distribution::regular(sin_of(identity()))}) {
    const GenFunction a = partial(iota(u, sched4(), omega_all), 1);
    const GenFunction b = iota(D(u), sched4(), omega_all);
    for (double eps : {0.25, std::ldexp(1.0, -10)}) {
      for (double x : {-0.4, 0.0, 0.3}) {
        CHECK(a.rep(eps).eval(x) == doctest::Approx(b.rep(eps).eval(x)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("moderateness of embedded delta") {
  ClassifySettings s;
  s.sup_points = 257;
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  const VerdictReport rep = moderate_on(d, CompactSet(-1.0, 1.0), 1, grid(), s);
  CHECK(rep.verdict == Verdict::Yes);
  REQUIRE(rep.per_alpha.size() == 2);
  CHECK(rep.per_alpha[0].order.slope == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(rep.per_alpha[1].order.slope == doctest::Approx(-2.0).epsilon(0.1));
}

TEST_CASE("smooth embedding compatibility: iota(f) = sigma(f)") {
  ClassifySettings s;
  s.sup_points = 129;
  const GenFunction diff = iota(Distribution::regular(sin_of(identity())), sched6(), omega_all) -
                           sigma(sin_of(identity()), omega_all);
  const VerdictReport rep = negligible_on(diff, CompactSet(-1.0, 1.0), 2, grid(), s);
  CHECK(rep.verdict == Verdict::Yes);
}

TEST_CASE("H squared differs from H in the algebra but associates to H") {
  ClassifySettings s;
  s.sup_points = 257;
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  const GenFunction h2 = h * h;

  const VerdictReport eq = eq_in_Gs(h2, h, CompactSet(-1.0, 1.0), 0, grid(), s);
  CHECK(eq.verdict == Verdict::No);

  // The sup-net of H^2 - H sits at exactly 1/4 (half-crossing oracle).
  for (double eps : {0.25, std::ldexp(1.0, -8), std::ldexp(1.0, -16)}) {
    const double x_star = half_crossing(h, eps);
    const double t = h.rep(eps).eval(x_star);
    CHECK(std::abs(t * t - t) == doctest::Approx(0.25).epsilon(1e-6));
    const SmoothFn diff = h2.rep(eps) - h.rep(eps);
    CHECK(sup_abs_on(diff, CompactSet(-1.0, 1.0), 513) == doctest::Approx(0.25).epsilon(1e-6));
  }

  const auto assoc = associates_to(h2, Distribution::heaviside(),
                                   default_association_panel(5), grid(), s);
  CHECK(assoc.verdict == Verdict::Yes);
}

TEST_CASE("x * delta associates to zero with second-order decay") {
  ClassifySettings s;
  const GenFunction xdelta =
      sigma(identity(), omega_all) * iota(Distribution::delta(), sched4(), omega_all);
  const auto assoc = associates_to(xdelta, Distribution(), default_association_panel(5), grid(), s);
  CHECK(assoc.verdict == Verdict::Yes);

  // Oracle: integral of x*delta_eps(x)*phi(x) = eps * integral t psi(t) phi(eps t);
  // with vanishing first moment the pairing decays like eps^2.
  bool saw_slope2 = false;
  for (const auto& order : assoc.per_test_fn) {
    if (order.window >= 4 && order.slope >= 1.9) saw_slope2 = true;
  }
  CHECK(saw_slope2);
}

TEST_CASE("delta squared associates to nothing") {
  ClassifySettings s;
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  const GenFunction d2 = d * d;
  for (const Distribution& w : {Distribution::delta(), Distribution::heaviside(),
                                Distribution()}) {
    const auto assoc = associates_to(d2, w, default_association_panel(3), grid(), s);
    CHECK(assoc.verdict == Verdict::No);
  }
}

TEST_CASE("evaluation at generalized points") {
  const OpenInterval omega(-4.0, 4.0);
  const CompactSet k(-1.0, 1.0);

  const SmoothFn f = polynomial({1.0, 2.0, -0.5}, identity());
  const GenFunction sf = sigma(f, omega);
  const GenPoint x0 = GenPoint::constant(0.7, k, omega, grid());
  const GenNumber v = eval_at(sf, x0);
  CHECK(eq_tilde(v, GenNumber::constant(f.eval(0.7)), grid()) == Verdict::Yes);

  // iota(delta) evaluated along eps/2 matches direct mollifier evaluation.
  const GenFunction d = iota(Distribution::delta(), sched4(), omega);
  const GenPoint moving([](double e) { return e / 2.0; }, k, omega, grid());
  const GenNumber dv = eval_at(d, moving);
  for (double eps : grid().values) {
    const double direct = sched4().at(eps).fn.eval(0.5) / eps;
    CHECK(dv.at(eps) == doctest::Approx(direct).epsilon(1e-12));
  }

  // iota(H) at -2*eps is exactly zero once supports shrink.
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega);
  const GenPoint left([](double e) { return -2.0 * e; }, k, omega, grid());
  const GenNumber hv = eval_at(h, left);
  for (double eps : grid().values) {
    if (eps > 0.4) continue;  // -2 eps must lie left of the kernel support
    CHECK(hv.at(eps) == 0.0);
  }
  CHECK(approx(hv, GenNumber::constant(0.0), grid()) == Verdict::Yes);
}

TEST_CASE("evaluation is a ring morphism at representative level") {
  const OpenInterval omega(-4.0, 4.0);
  const CompactSet k(-1.0, 1.0);
  const GenFunction u = sigma(sin_of(identity()), omega);
  const GenFunction v = iota(Distribution::heaviside(), sched4(), omega);
  const GenPoint x([](double e) { return 0.3 + e; }, k, omega, grid());

  const GenNumber lhs = eval_at(u * v, x);
  const GenNumber rhs = eval_at(u, x) * eval_at(v, x);
  for (double eps : grid().values) {
    CHECK(lhs.at(eps) == rhs.at(eps));  // exact
  }
}

TEST_CASE("point-value separation via the half-crossing point") {
  const OpenInterval omega(-4.0, 4.0);
  const CompactSet k(-1.0, 1.0);
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega);
  const GenFunction w = h * h - h;

  const GenPoint crossing([&](double e) { return half_crossing(h, e); }, k, omega, grid());
  const GenNumber at_crossing = eval_at(w, crossing);
  CHECK(approx(at_crossing, GenNumber::constant(0.0), grid()) == Verdict::No);
  for (double eps : {0.25, 0.015625}) {
    CHECK(at_crossing.at(eps) == doctest::Approx(-0.25).epsilon(1e-9));
  }

  // Standard points cannot see the difference: at any fixed x != 0 the net
  // vanishes once supports shrink below |x|.
  const GenPoint fixed = GenPoint::constant(0.5, k, omega, grid());
  CHECK(approx(eval_at(w, fixed), GenNumber::constant(0.0), grid()) == Verdict::Yes);
}

TEST_CASE("c-boundedness and composition") {
  const CompactSet k(-1.0, 1.0);
  // 2*smoothstep - 1 maps R into (-1, 1).
  const SmoothFn squash = sum({prod({constant(2.0), smoothstep()}), constant(-1.0)});
  const GenFunction u = sigma(squash, omega_all);
  const auto rep = is_cbounded(u, k, OpenInterval(-2.0, 2.0), grid());
  CHECK(rep.verdict == Verdict::Yes);
  CHECK(rep.witness.lo >= -1.0);
  CHECK(rep.witness.hi <= 1.0);

  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  const auto bad = is_cbounded(d, k, OpenInterval(-1.0, 1.0), grid());
  CHECK(bad.verdict == Verdict::No);
  CHECK_THROWS_AS(compose_cbounded(sigma(sin_of(identity()), OpenInterval(-1.0, 1.0)), d, k, grid()),
                  Error);

  // sigma(sin) composed with a bounded smooth function is sigma(sin o f).
  const GenFunction f = sigma(squash, omega_all);
  const GenFunction composed =
      compose_cbounded(sigma(sin_of(identity()), OpenInterval(-2.0, 2.0)), f, k, grid());
  for (double x : {-0.5, 0.0, 0.9}) {
    CHECK(composed.rep(0.1).eval(x) ==
          doctest::Approx(std::sin(squash.eval(x))).epsilon(1e-11));
  }
}

TEST_CASE("well-definedness on the quotient") {
  ClassifySettings s;
  s.sup_points = 257;
  const CompactSet k(-1.0, 1.0);
  const GenFunction u = iota(Distribution::heaviside(), sched4(), omega_all);
  // u' = u + negligible perturbation (alpha-aware: eps^10 sin(x/eps)).
  const GenFunction pert(omega_all, [](double e) {
    return prod({constant(std::pow(e, 10.0)), sin_of(affine(1.0 / e, 0.0))});
  });
  const GenFunction u_alt = u + pert;

  REQUIRE(eq_in_Gs(u, u_alt, k, 2, grid(), s).verdict == Verdict::Yes);

  const GenFunction v = sigma(cos_of(identity()), omega_all);
  // moderate x negligible stays negligible. Derivatives of the embedded-H
  // factor grow like eps^-1-alpha, so the evaluated product difference is
  // measurable against the perturbation at alpha = 0; bounded-derivative
  // factors support the full alpha scan.
  CHECK(eq_in_Gs(u * v, u_alt * v, k, 0, grid(), s).verdict == Verdict::Yes);

  const GenFunction w = sigma(sin_of(identity()), omega_all);
  const GenFunction w_alt = w + pert;
  REQUIRE(eq_in_Gs(w, w_alt, k, 2, grid(), s).verdict == Verdict::Yes);
  CHECK(eq_in_Gs(w * v, w_alt * v, k, 2, grid(), s).verdict == Verdict::Yes);

  // The derivative of a negligible perturbation stays negligible.
  CHECK(eq_in_Gs(partial(u, 1), partial(u_alt, 1), k, 1, grid(), s).verdict == Verdict::Yes);
  CHECK(eq_in_Gs(partial(w, 1), partial(w_alt, 1), k, 1, grid(), s).verdict == Verdict::Yes);
}

TEST_CASE("embedding linearity is exact at representative level") {
  const Distribution u = Distribution::delta();
  const Distribution v = Distribution::heaviside();
  const Distribution mix = u * 2.0 + v * (-3.0);
  const GenFunction lhs = iota(mix, sched4(), omega_all);
  const GenFunction rhs = 2.0 * iota(u, sched4(), omega_all) +
                          (-3.0) * iota(v, sched4(), omega_all);
  for (double eps : {0.5, 0.03125}) {
    for (double x : {-0.2, 0.0, 0.4}) {
      CHECK(lhs.rep(eps).eval(x) == rhs.rep(eps).eval(x));
    }
  }
}

TEST_CASE("shadow pairing matches direct quadrature") {
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  const SmoothFn phi = translate_T(0.1, bump());
  const GenNumber pairing = shadow_pairing(h, phi);
  for (double eps : {0.25, 0.0625}) {
    const SmoothFn rep = h.rep(eps);
    const Support s = phi.support();
    const double oracle = integrate_fn(
        [&](double x) { return rep.eval(x) * phi.eval(x); }, s.lo, s.hi, 1e-11);
    CHECK(pairing.at(eps) == doctest::Approx(oracle).epsilon(1e-9));
  }
}
