#include <doctest.h>

#include <cmath>

#include "gfcalc/asymptotics.hpp"

using namespace gfcalc;

namespace {

std::vector<LogSample> sample(const NetRule& net, const EpsGrid& g = default_grid()) {
  return sample_net_log(net, g);
}

NetRule power_net(double m) {
  return [m](double e) { return std::pow(e, m); };
}

}  // namespace

TEST_CASE("default_grid produces the geometric grid") {
  const EpsGrid g = default_grid(1, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 0.5);
  CHECK(g[1] == 0.25);
  CHECK(g[2] == 0.125);
  CHECK(g[3] == 0.0625);

  const EpsGrid full = default_grid(1, 40);
  CHECK(full.size() == 40);
  CHECK(full[39] == doctest::Approx(9.094947e-13).epsilon(1e-6));

  CHECK_THROWS_AS(default_grid(4, 2), Error);
  CHECK_THROWS_AS(default_grid(0, 10), Error);
  CHECK_THROWS_AS(default_grid(1, 61), Error);
}

TEST_CASE("estimate_order recovers exact power laws") {
  const auto quadratic = estimate_order(sample(power_net(2.0)), 12);
  CHECK(quadratic.slope == doctest::Approx(2.0).epsilon(0.025));
  CHECK(quadratic.r2 >= 0.999);

  const auto inverse = estimate_order(sample([](double e) { return 3.0 / e; }), 12);
  CHECK(inverse.slope == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(inverse.intercept == doctest::Approx(std::log(3.0)).epsilon(0.01));
}

TEST_CASE("estimate_order: exp(-1/eps) beats every power (oracle first)") {
  // Oracle: exp(-1/eps) <= eps^m on the grid tail for m = 1..20. The bound
  // 1/eps >= m ln(1/eps) holds for eps <= 2^-7 across this m range.
  const EpsGrid g = default_grid();
  for (int m = 1; m <= 20; ++m) {
    for (double e : g.values) {
      if (e > std::ldexp(1.0, -7)) continue;
      CHECK(std::exp(-1.0 / e) <= std::pow(e, m));
    }
  }
  const auto rep = estimate_order(sample([](double e) { return std::exp(-1.0 / e); }), 12);
  CHECK(rep.slope > 20.0);
}

TEST_CASE("estimate_order error and zero handling") {
  std::vector<LogSample> three = {make_log_sample(0.5, 0.1), make_log_sample(0.25, 0.1),
                                  make_log_sample(0.125, 0.1)};
  CHECK_THROWS_WITH_AS(estimate_order(three, 12).slope,
                       "insufficient samples: need at least 4 usable tail points", Error);

  const auto zero = estimate_order(sample([](double) { return 0.0; }), 12);
  CHECK(zero.all_zero);
  CHECK(std::isinf(zero.slope));
  CHECK(zero.r2 == 1.0);
}

TEST_CASE("is_moderate") {
  CHECK(is_moderate(sample(power_net(-3.0))) == Verdict::Yes);
  CHECK(is_moderate(sample([](double) { return 0.0; })) == Verdict::Yes);

  // Oracle: exp(1/eps) > eps^-50 for all grid eps at or below 2^-9.
  const EpsGrid g = default_grid();
  for (double e : g.values) {
    if (e > std::ldexp(1.0, -9)) continue;
    CHECK(std::log(1.0) + 1.0 / e > -50.0 * std::log(e));
  }
  CHECK(is_moderate(sample([](double e) { return std::exp(1.0 / e); })) == Verdict::No);
}

TEST_CASE("is_negligible") {
  CHECK(is_negligible(sample([](double) { return 0.0; })) == Verdict::Yes);
  CHECK(is_negligible(sample(power_net(10.0))) == Verdict::Yes);  // slope 10 >= 8
  CHECK(is_negligible(sample(power_net(1.0))) == Verdict::No);
  CHECK_THROWS_AS(is_negligible(sample(power_net(1.0)), 1), Error);
}

TEST_CASE("tends_to_zero") {
  CHECK(tends_to_zero(sample(power_net(0.5))) == Verdict::Yes);
  CHECK(tends_to_zero(sample([](double e) { return 1.0 + e; })) == Verdict::No);

  // Oracle for the slow-decay path: 1/ln(1/eps) is decreasing on the grid and
  // dominated by no positive power from below near the tail.
  const EpsGrid g = default_grid();
  double prev = 10.0;
  for (double e : g.values) {
    const double v = 1.0 / std::log(1.0 / e);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(tends_to_zero(sample([](double e) { return 1.0 / std::log(1.0 / e); })) == Verdict::Yes);

  // ... yet it is not negligible: the log-log slope is nearly zero.
  CHECK(is_negligible(sample([](double e) { return 1.0 / std::log(1.0 / e); })) == Verdict::No);
}

TEST_CASE("scaling equivariance of the order estimate") {
  for (double c : {2.0, -7.5, 1e-6, 3e8}) {
    const auto base = estimate_order(sample(power_net(3.0)), 12);
    const auto scaled =
        estimate_order(sample([c](double e) { return c * std::pow(e, 3.0); }), 12);
    CHECK(scaled.slope == doctest::Approx(base.slope).epsilon(1e-9));
    CHECK(scaled.intercept ==
          doctest::Approx(base.intercept + std::log(std::abs(c))).epsilon(1e-9));
  }
}

TEST_CASE("power-law exactness across integer exponents") {
  for (int m = -5; m <= 10; ++m) {
    const auto rep = estimate_order(sample(power_net(m)), 12);
    CHECK(rep.slope == doctest::Approx(static_cast<double>(m)).epsilon(1e-9));
    CHECK(rep.r2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("monotone consistency: negligible implies moderate") {
  for (int m : {8, 9, 12}) {
    const auto s = sample(power_net(m));
    REQUIRE(is_negligible(s) == Verdict::Yes);
    for (int n_cap : {1, 5, 50}) {
      ClassifySettings cs;
      cs.n_cap = n_cap;
      CHECK(is_moderate(s, cs) == Verdict::Yes);
    }
  }
}

TEST_CASE("product rule for slopes of power nets") {
  const auto rep = estimate_order(
      sample([](double e) { return std::pow(e, 2.0) * std::pow(e, -5.0); }), 12);
  CHECK(rep.slope == doctest::Approx(-3.0).epsilon(0.01));
}

TEST_CASE("no verdict flip under grid refinement for pure powers") {
  const EpsGrid coarse = default_grid(1, 40);
  const EpsGrid fine = default_grid(1, 52);
  for (int m = -5; m <= 10; ++m) {
    const auto vc_n = is_negligible(sample_net_log(power_net(m), coarse));
    const auto vf_n = is_negligible(sample_net_log(power_net(m), fine));
    CHECK(vc_n == vf_n);
    const auto vc_m = is_moderate(sample_net_log(power_net(m), coarse));
    const auto vf_m = is_moderate(sample_net_log(power_net(m), fine));
    CHECK(vc_m == vf_m);
  }
}
