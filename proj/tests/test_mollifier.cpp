#include <doctest.h>

#include <cmath>

#include "gfcalc/mollifier.hpp"
#include "gfcalc/quadrature.hpp"

using namespace gfcalc;

TEST_CASE("base bump stage") {
  const Mollifier m = base_bump();
  const auto ms = moments(m.fn, 1);
  CHECK(ms[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ms[1] == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(m.l1_mass == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(m.fn.support().is_interval());
  CHECK(m.fn.support().lo >= -1.0);
  CHECK(m.fn.support().hi <= 1.0);
}

TEST_CASE("moment mollifiers satisfy the Gram constraints") {
  // q = 0 degenerates to the bump itself.
  const Mollifier q0 = make_moment_mollifier(0);
  CHECK(q0.poly_coeffs.size() == 1);
  CHECK(q0.poly_coeffs[0] == 1.0);

  const Mollifier q2 = make_moment_mollifier(2);
  const auto ms2 = moments(q2.fn, 2);
  CHECK(ms2[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(ms2[1]) <= 1e-8);
  CHECK(std::abs(ms2[2]) <= 1e-8);

  // Sign changes forced by vanishing even moments push the L1 mass above 1.
  const Mollifier q4 = make_moment_mollifier(4);
  CHECK(q4.l1_mass > 1.0);

  CHECK_THROWS_AS(make_moment_mollifier(13), Error);
  CHECK_THROWS_AS(make_moment_mollifier(-1), Error);
}

TEST_CASE("moment exactness for q = 0..8") {
  for (int q = 0; q <= 8; ++q) {
    const Mollifier m = make_moment_mollifier(q);
    const auto ms = moments(m.fn, q);
    CHECK(std::abs(ms[0] - 1.0) <= 1e-10);
    for (int k = 1; k <= q; ++k) {
      CHECK(std::abs(ms[static_cast<std::size_t>(k)]) <= 1e-8);
    }
  }
}

TEST_CASE("constructed stages are even") {
  for (int q : {2, 4, 6, 8}) {
    const Mollifier m = make_moment_mollifier(q);
    for (std::size_t j = 1; j < m.poly_coeffs.size(); j += 2) {
      CHECK(std::abs(m.poly_coeffs[j]) <= 1e-10);
    }
    for (double x : {0.2, 0.55, 0.83}) {
      CHECK(m.fn.eval(x) == doctest::Approx(m.fn.eval(-x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("polynomial reproduction up to the moment order") {
  // Taylor consequence of unit mass + vanishing moments: convolving a
  // polynomial of degree <= q with the scaled stage reproduces it.
  const Mollifier m3 = make_moment_mollifier(3);
  const SmoothFn f = polynomial({0.3, -1.2, 0.0, 2.0}, identity());  // degree 3
  for (double eps : {0.5, 0.1, 0.03}) {
    const SmoothFn rho = scale_S(eps, m3.fn);
    for (double x : {-0.9, -0.2, 0.0, 0.6, 1.0}) {
      // (f * rho)(x) by direct quadrature.
      const double conv = integrate_fn(
          [&](double y) { return f.eval(x - y) * rho.eval(y); }, -eps, eps, 1e-11);
      CHECK(conv == doctest::Approx(f.eval(x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("schedules select stages by threshold") {
  const MollifierNet net = make_schedule(3);
  REQUIRE(net.stages.size() == 4);
  REQUIRE(net.thresholds.size() == 3);
  CHECK(net.thresholds[0] == std::ldexp(1.0, -4));

  CHECK(net.at(0.9).q == 0);                      // above the first threshold
  CHECK(net.at(std::ldexp(1.0, -5)).q >= 1);      // 2^-5 <= 2^-4
  CHECK(net.at(std::ldexp(1.0, -4)).q == 1);      // boundary belongs to stage 1
  CHECK(net.at(std::ldexp(1.0, -13)).q == 3);     // below the last threshold
  CHECK(net.at(1e-9).q == 3);

  // Monotone moment order as eps decreases.
  int prev_q = -1;
  for (double eps = 1.0; eps > 1e-12; eps *= 0.5) {
    const int q = net.at(eps).q;
    CHECK(q >= prev_q);
    prev_q = q;
  }

  CHECK_THROWS_AS(make_schedule(3, {0.5, 0.6, 0.1}), Error);
  CHECK_THROWS_AS(make_schedule(3, {0.5, 0.25}), Error);
}

TEST_CASE("verify_properties reports a step-function trajectory") {
  const EpsGrid grid = default_grid(1, 24);
  const MollifierNet net = make_schedule(4);
  const MollifierCheck check = verify_properties(net, grid);

  CHECK(check.support_ok);
  CHECK(check.mass_ok);
  CHECK(check.moments_ok);

  // Finite schedule: sup-nets are eventually constant, slope near zero.
  REQUIRE(!check.sup_traces.empty());
  CHECK(std::abs(check.sup_traces[0].order.slope) < 0.5);

  // L1 trajectory is a nondecreasing step function ending at the last stage.
  for (std::size_t i = 1; i < check.l1_trajectory.size(); ++i) {
    CHECK(check.l1_trajectory[i] >= check.l1_trajectory[i - 1] - 1e-12);
  }
  CHECK(check.l1_final == doctest::Approx(net.stages.back().l1_mass));

  // Restricted above the first threshold everything is stage 0.
  const MollifierCheck head_check = verify_properties(net, default_grid(1, 3));
  for (double v : head_check.l1_trajectory) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}
