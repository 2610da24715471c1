#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gfcalc/exprparse.hpp"
#include "gfcalc/serialize.hpp"

using namespace gfcalc;

TEST_CASE("expression trees round-trip through JSON") {
  const std::vector<SmoothFn> trees = {
      bump(),
      scale_S(0.25, make_moment_mollifier(2).fn),
      translate_T(0.7, polynomial({1.0, -2.0, 0.5}, identity()) * bump()),
      sin_of(affine(2.0, -0.5)) + exp_of(prod({constant(0.1), identity()})),
      convolve_smooth(Distribution::regular(sin_of(identity())), scale_S(0.5, bump())),
      compose(smoothstep(), affine(3.0, 0.0)),
  };
  for (const auto& f : trees) {
    const Json j = smoothfn_to_json(f);
    const SmoothFn back = smoothfn_from_json(j);
    for (double x : {-0.9, -0.3, 0.0, 0.41, 0.88}) {
      const double a = f.eval(x);
      const double b = back.eval(x);
      CHECK(b == doctest::Approx(a).epsilon(1e-12));
    }
    // Dumping again is stable.
    CHECK(smoothfn_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("tampered support metadata is rejected") {
  Json j = smoothfn_to_json(bump());
  j["support"]["hi"] = 2.0;
  CHECK_THROWS_AS(smoothfn_from_json(j), Error);
}

TEST_CASE("distributions round-trip") {
  const Distribution d =
      parse_distribution("2*delta'(k=1, x0=0.5) + heaviside(0) - 0.25*pv");
  const Distribution back = distribution_from_json(distribution_to_json(d));
  const SmoothFn phi = translate_T(0.2, bump());
  CHECK(pair_with(back, phi) == doctest::Approx(pair_with(d, phi)).epsilon(1e-12));
}

TEST_CASE("mollifier schedules round-trip") {
  const MollifierNet net = make_schedule(3);
  const Json j = schedule_to_json(net);
  const MollifierNet back = schedule_from_json(j);
  REQUIRE(back.stages.size() == net.stages.size());
  for (double eps : {0.9, 0.05, 1e-4}) {
    CHECK(back.at(eps).q == net.at(eps).q);
    CHECK(back.at(eps).fn.eval(0.3) == doctest::Approx(net.at(eps).fn.eval(0.3)).epsilon(1e-12));
  }
}

TEST_CASE("panels replay bit-exactly from JSON") {
  const auto panel = make_panel(2, 4, 99);
  const Json j = panel_to_json(panel, 99);
  const auto back = panel_from_json(j);
  REQUIRE(back.size() == panel.size());
  for (std::size_t i = 0; i < panel.size(); ++i) {
    for (double x : {-0.5, 0.0, 0.33}) {
      CHECK(back[i].phi.eval(x) == panel[i].phi.eval(x));
    }
  }
}

TEST_CASE("CSV emitters") {
  const EpsGrid g = default_grid(1, 8);
  const auto samples = sample_net_log([](double e) { return e * e; }, g);
  const std::string csv = order_samples_csv(samples);
  CHECK(csv.rfind("eps,value_sign,log_abs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);

  const std::string sup_csv = sup_table_csv({{0, samples}, {1, samples}});
  CHECK(sup_csv.rfind("eps,log_eps,alpha,sup,log_sup\n", 0) == 0);
  CHECK(std::count(sup_csv.begin(), sup_csv.end(), '\n') == 17);
}
