// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria pin their tolerances here; nothing is deferred.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gfcalc/full_alg.hpp"
#include "gfcalc/plots.hpp"
#include "gfcalc/quadrature.hpp"
#include "gfcalc/special_alg.hpp"

using namespace gfcalc;

namespace {

struct Criterion {
  std::string id;
  std::string description;
  std::function<void(std::ostream&)> run;  // throws on failure
};

struct FailedCriterion {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw FailedCriterion{detail};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const EpsGrid& grid() {
  static EpsGrid g = default_grid();
  return g;
}

const MollifierNet& sched4() {
  static MollifierNet n = make_schedule(4);
  return n;
}

const MollifierNet& sched10() {
  static MollifierNet n = make_schedule(10);
  return n;
}

const OpenInterval omega_all = OpenInterval::real_line();
const CompactSet unit_k(-1.0, 1.0);

/* C1: mollifier moments, under 5 seconds. */
void c1(std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  for (int q = 0; q <= 8; ++q) {
    const Mollifier m = make_moment_mollifier(q);
    const auto ms = moments(m.fn, q);
    require(std::abs(ms[0] - 1.0) <= 1e-10,
            "q=" + std::to_string(q) + ": mass off by " + fmt(std::abs(ms[0] - 1.0)));
    for (int k = 1; k <= q; ++k) {
      require(std::abs(ms[static_cast<std::size_t>(k)]) <= 1e-8,
              "q=" + std::to_string(q) + ": moment " + std::to_string(k) + " = " +
                  fmt(ms[static_cast<std::size_t>(k)]));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 5.0, "took " + fmt(secs) + " s");
  log << "q=0..8 within 1e-10 / 1e-8 in " << fmt(secs) << " s";
}

/* C2: polynomial reproduction through the q=3 stage. */
void c2(std::ostream& log) {
  const SmoothFn cube = int_pow(3, identity());
  const Mollifier m3 = make_moment_mollifier(3);
  const GenFunction emb(omega_all, [&](double eps) {
    return convolve_smooth(Distribution::regular(cube), scale_S(eps, m3.fn));
  });
  double worst = 0.0;
  for (double eps : grid().values) {
    const SmoothFn diff = emb.rep(eps) - cube;
    worst = std::max(worst, sup_abs_on(diff, unit_k, 257));
  }
  require(worst <= 1e-7, "sup error " + fmt(worst));
  log << "sup |x^3 * (eps (.) psi_3) - x^3| = " << fmt(worst) << " <= 1e-7";
}

/* C3: smooth-embedding negligibility with the q_max = 10 schedule. */
void c3(std::ostream& log) {
  ClassifySettings s;
  s.sup_points = 257;
  const GenFunction diff = iota(Distribution::regular(sin_of(identity())), sched10(), omega_all) -
                           sigma(sin_of(identity()), omega_all);
  const VerdictReport rep = negligible_on(diff, unit_k, 2, grid(), s);
  require(rep.verdict == Verdict::Yes,
          std::string("verdict ") + to_string(rep.verdict));

  // Slope restricted to the finest stage holding at least 4 grid points.
  const auto samples = sup_net(diff, 0, unit_k, grid(), s.sup_points);
  std::vector<LogSample> finest;
  int finest_q = -1;
  for (int q = 10; q >= 0 && finest.size() < 4; --q) {
    finest.clear();
    for (std::size_t i = 0; i < grid().size(); ++i) {
      if (sched10().at(grid()[i]).q == q) finest.push_back(samples[i]);
    }
    finest_q = q;
  }
  require(finest.size() >= 4, "no stage with 4 grid points");
  const OrderReport stage = estimate_order(finest, 4);
  require(stage.slope >= 9.0, "finest-stage (q=" + std::to_string(finest_q) + ") slope " +
                                  fmt(stage.slope));
  log << "eq_in_Gs yes; finest-stage slope " << fmt(stage.slope) << " >= 9";
}

/* C4: derivative commutation at representative level. */
void c4(std::ostream& log) {
  const GenFunction dh = partial(iota(Distribution::heaviside(), sched4(), omega_all), 1);
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  double worst = 0.0;
  for (double eps : grid().values) {
    worst = std::max(worst, sup_abs_on(dh.rep(eps) - d.rep(eps), unit_k, 257));
  }
  require(worst <= 1e-9, "sup difference " + fmt(worst));
  log << "sup |d iota(H) - iota(delta)| = " << fmt(worst) << " <= 1e-9";
}

/* C5: delta is infinite at 0; moderateness slopes -1-alpha. */
void c5(std::ostream& log) {
  const GenFunction d = iota(Distribution::delta(), sched4(), omega_all);
  const GenNumber at0([&](double e) { return d.rep(e).eval(0.0); });
  const OrderReport rep = estimate_order(at0.samples(grid()), 12);
  require(std::abs(rep.slope + 1.0) <= 0.05, "value-at-0 slope " + fmt(rep.slope));

  ClassifySettings s;
  s.sup_points = 257;
  const VerdictReport mod = moderate_on(d, unit_k, 2, grid(), s);
  require(mod.verdict == Verdict::Yes, std::string("moderate verdict ") + to_string(mod.verdict));
  for (const auto& av : mod.per_alpha) {
    const double target = -1.0 - static_cast<double>(av.alpha);
    require(std::abs(av.order.slope - target) <= 0.1,
            "alpha=" + std::to_string(av.alpha) + " slope " + fmt(av.order.slope));
  }
  log << "order(iota(delta)(0)) = " << fmt(rep.slope) << "; per-alpha slopes -1,-2,-3";
}

/* C6: H.delta phenomena: quotient inequality vs association. */
void c6(std::ostream& log) {
  ClassifySettings s;
  s.sup_points = 513;
  const GenFunction h = iota(Distribution::heaviside(), sched4(), omega_all);
  const GenFunction h2 = h * h;

  const VerdictReport eq = eq_in_Gs(h2, h, unit_k, 0, grid(), s);
  require(eq.verdict == Verdict::No, std::string("eq verdict ") + to_string(eq.verdict));
  for (double eps : grid().values) {
    const double sup = sup_abs_on(h2.rep(eps) - h.rep(eps), unit_k, 513);
    require(std::abs(sup - 0.25) <= 1e-6,
            "eps=" + fmt(eps) + ": sup " + fmt(sup) + " not 1/4");
  }

  const auto panel = default_association_panel(5);
  const auto assoc_h = associates_to(h2, Distribution::heaviside(), panel, grid(), s);
  require(assoc_h.verdict == Verdict::Yes,
          std::string("assoc(H^2,H) ") + to_string(assoc_h.verdict));
  double min_slope = 1e9;
  for (const auto& o : assoc_h.per_test_fn) {
    if (o.window >= 4) min_slope = std::min(min_slope, o.slope);
  }
  require(min_slope >= 0.9, "pairing slope " + fmt(min_slope));

  const GenFunction xdelta =
      sigma(identity(), omega_all) * iota(Distribution::delta(), sched4(), omega_all);
  const auto assoc_x = associates_to(xdelta, Distribution(), panel, grid(), s);
  require(assoc_x.verdict == Verdict::Yes,
          std::string("assoc(x delta, 0) ") + to_string(assoc_x.verdict));
  double x_slope = 1e9;
  for (const auto& o : assoc_x.per_test_fn) {
    if (o.window >= 4) x_slope = std::min(x_slope, o.slope);
  }
  require(x_slope >= 1.9, "x delta pairing slope " + fmt(x_slope));

  const GenFunction d2 = iota(Distribution::delta(), sched4(), omega_all) *
                         iota(Distribution::delta(), sched4(), omega_all);
  for (const Distribution& w :
       {Distribution::delta(), Distribution::heaviside(), Distribution()}) {
    const auto assoc_d2 = associates_to(d2, w, panel, grid(), s);
    require(assoc_d2.verdict == Verdict::No, "delta^2 assoc not rejected");
    bool divergent = false;
    for (const auto& o : assoc_d2.per_test_fn) {
      if (o.window >= 4 && std::abs(o.slope + 1.0) <= 0.2) divergent = true;
    }
    require(divergent, "no pairing diverging like eps^-1");
  }
  log << "eq no (sup 1/4); assoc H yes (slope >= " << fmt(min_slope)
      << "); x delta yes (slope >= " << fmt(x_slope) << "); delta^2 no (slope ~ -1)";
}

/* C7: generalized-number suite on random pure powers + the slow witness. */
void c7(std::ostream& log) {
  std::mt19937 rng(20250809);
  std::uniform_int_distribution<int> expo(-5, 10);
  std::uniform_real_distribution<double> coeff(0.25, 4.0);

  for (int trial = 0; trial < 100; ++trial) {
    const int ma = expo(rng), mb = expo(rng);
    const double ca = coeff(rng), cb = coeff(rng);
    const GenNumber x([=](double e) { return ca * std::pow(e, ma); });
    const GenNumber y([=](double e) { return cb * std::pow(e, mb); });

    for (double e : grid().values) {
      require(inf(x, y).at(e) + sup(x, y).at(e) == x.at(e) + y.at(e),
              "lattice identity broke at eps=" + fmt(e));
    }
    if (leq(x, y, grid()) == Verdict::Yes && leq(y, x, grid()) == Verdict::Yes) {
      require(eq_tilde(x, y, grid()) == Verdict::Yes, "antisymmetry-up-to-~ failed");
    }
    if (is_negligible(x.samples(grid())) == Verdict::Yes) {
      require(is_infinitesimal(x, grid()) == Verdict::Yes, "negligible but not infinitesimal");
    }
  }

  // Transitivity on ordered exponents.
  for (int trial = 0; trial < 50; ++trial) {
    int e1 = expo(rng), e2 = expo(rng), e3 = expo(rng);
    const int lo = std::max({e1, e2, e3});
    const int hi = std::min({e1, e2, e3});
    const int mid = e1 + e2 + e3 - lo - hi;
    const GenNumber a([=](double e) { return std::pow(e, lo); });
    const GenNumber b([=](double e) { return std::pow(e, mid); });
    const GenNumber c([=](double e) { return std::pow(e, hi); });
    if (leq(a, b, grid()) == Verdict::Yes && leq(b, c, grid()) == Verdict::Yes) {
      require(leq(a, c, grid()) == Verdict::Yes, "transitivity failed");
    }
  }

  const GenNumber slow([](double e) { return 1.0 / std::log(1.0 / e); });
  require(tends_to_zero(slow.samples(grid())) == Verdict::Yes, "1/ln(1/eps) not infinitesimal");
  require(is_negligible(slow.samples(grid())) == Verdict::No, "1/ln(1/eps) wrongly negligible");
  log << "100 power pairs: lattice/order/antisymmetry/monotone; slow witness splits";
}

/* C8: the evaluation map. */
void c8(std::ostream& log) {
  const OpenInterval omega(-4.0, 4.0);
  const CompactSet k(-1.5, 1.5);
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> xs(-1.2, 1.2);
  std::uniform_real_distribution<double> cs(-2.0, 2.0);

  for (int trial = 0; trial < 20; ++trial) {
    const SmoothFn f = sum({polynomial({cs(rng), cs(rng), cs(rng)}, identity()),
                            prod({constant(cs(rng)), sin_of(affine(cs(rng), cs(rng)))})});
    const double x0 = xs(rng);
    const GenPoint p = GenPoint::constant(x0, k, omega, grid());
    const GenNumber v = eval_at(sigma(f, omega), p);
    require(eq_tilde(v, GenNumber::constant(f.eval(x0)), grid()) == Verdict::Yes,
            "eval_at(sigma f, x0) != [f(x0)]");
  }

  // Ring morphism, exact at representative level.
  const GenFunction u = sigma(sin_of(identity()), omega);
  const GenFunction v = iota(Distribution::heaviside(), sched4(), omega);
  const GenPoint p([](double e) { return 0.25 + e; }, k, omega, grid());
  const GenNumber lhs = eval_at(u * v, p);
  const GenNumber rhs = eval_at(u, p) * eval_at(v, p);
  for (double e : grid().values) {
    require(lhs.at(e) == rhs.at(e), "morphism not exact at eps=" + fmt(e));
  }

  // iota(delta) along eps/2 against direct mollifier evaluation.
  const GenFunction d = iota(Distribution::delta(), sched4(), omega);
  const GenPoint moving([](double e) { return e / 2.0; }, k, omega, grid());
  const GenNumber dv = eval_at(d, moving);
  for (double e : grid().values) {
    const double direct = sched4().at(e).fn.eval(0.5) / e;
    const double got = dv.at(e);
    require(std::abs(got - direct) <= 1e-12 * std::max(1.0, std::abs(direct)),
            "delta eval mismatch at eps=" + fmt(e));
  }
  log << "20 random sigma evals ~; ring morphism exact; delta eval to 1e-12";
}

/* C9: full algebra panel checks, stable across seeds. */
void c9(std::ostream& log) {
  ClassifySettings s;
  s.sup_points = 129;
  const FullRep rd = iota_full(Distribution::delta(), omega_all);
  const FullRep diff = iota_full(Distribution::regular(sin_of(identity())), omega_all) -
                       sigma_full(sin_of(identity()), omega_all);

  int negligible_level = -1;
  for (uint64_t seed : {42ull, 7ull, 1000ull}) {
    const auto mod = full_moderate(rd, CompactSet(-0.5, 0.5), 0, 1, 5, seed, grid(), s);
    require(mod.verdict == Verdict::Yes,
            "moderate verdict " + std::string(to_string(mod.verdict)) + " at seed " +
                std::to_string(seed));
    if (seed == 42) {
      require(mod.level == 1, "level " + std::to_string(mod.level));
      for (const auto& t : mod.traces) {
        require(std::abs(t.order.slope + 1.0) <= 0.1,
                "member slope " + fmt(t.order.slope));
      }
    }

    const auto neg =
        full_negligible(diff, unit_k, 0, 3, {1, 2, 3, 4}, 5, seed, grid(), s);
    require(neg.verdict == Verdict::Yes,
            "negligible verdict " + std::string(to_string(neg.verdict)) + " at seed " +
                std::to_string(seed));
    require(neg.level <= 4, "needed q " + std::to_string(neg.level));
    for (const auto& t : neg.traces) {
      if (!t.order.all_zero) {
        require(t.order.slope >= 3.7, "trace slope " + fmt(t.order.slope));
      }
    }
    if (seed == 42) negligible_level = neg.level;
  }
  log << "moderate yes at N=1 (slopes ~ -1); negligible yes at q=" << negligible_level
      << " (slopes >= 3.7); stable across seeds {7,42,1000}";
}

/* C10: plot criteria. */
void c10(std::ostream& log) {
  require(plot_verdict(make_family("bump(x-u)", OpenInterval(-1.0, 1.0))).cls ==
              PlotClass::PlotOfD,
          "bump(x-u) not PlotOfD");
  require(plot_verdict(make_family("bump(u*x)", OpenInterval(0.0, 1.0))).cls ==
              PlotClass::PointwiseOnly,
          "bump(u*x) not PointwiseOnly");
  require(plot_verdict(make_family("sin(x)*(1+u)", OpenInterval(0.0, 1.0))).cls ==
              PlotClass::NotPointwise,
          "sin(x)(1+u) not NotPointwise");

  // Crafted D_K families: one inside K, one escaping it.
  require(plot_verdict_K(make_family("bump(x-u)", OpenInterval(-0.1, 0.1)),
                         CompactSet(-1.2, 1.2)) == Verdict::Yes,
          "narrow translated family rejected");
  require(plot_verdict_K(make_family("bump(x-u)", OpenInterval(-1.0, 1.0)),
                         CompactSet(-1.2, 1.2)) == Verdict::No,
          "wide translated family accepted");
  log << "bump(x-u): PlotOfD; bump(u*x): PointwiseOnly; sin(x)(1+u): NotPointwise; D_K ok";
}

/* C11: CLI byte-reproducibility and runtime budget. */
double g_elapsed_before_c11 = 0.0;

void c11(std::ostream& log) {
#ifndef GFCALC_CLI_PATH
  require(false, "CLI path not wired into the build");
#else
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gfcalc_acceptance";
  fs::create_directories(dir);
  const fs::path out1 = dir / "demo1.json";
  const fs::path out2 = dir / "demo2.json";

  auto run = [&](const std::string& out) {
    const std::string cmd = std::string(GFCALC_CLI_PATH) + " demo hsquared --grid 1:24 --out " +
                            out + " > " + out + ".stdout 2>&1";
    return std::system(cmd.c_str());
  };
  require(run(out1.string()) == 0, "demo run 1 failed");
  require(run(out2.string()) == 0, "demo run 2 failed");

  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::string r1 = slurp(out1);
  const std::string r2 = slurp(out2);
  require(!r1.empty(), "empty report");
  require(r1 == r2, "reports differ between identical runs");

  // Replay the embedded command with a new output path.
  require(r1.find("\"command\"") != std::string::npos, "report lacks its command");
  const fs::path out3 = dir / "demo3.json";
  require(run(out3.string()) == 0, "replay failed");
  require(slurp(out3) == r1, "replayed report differs");

  require(g_elapsed_before_c11 < 60.0,
          "suite exceeded 60 s: " + fmt(g_elapsed_before_c11));
  log << "reports byte-identical across runs and replay; elapsed "
      << fmt(g_elapsed_before_c11) << " s < 60 s";
#endif
}

}  // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();

  std::vector<Criterion> criteria = {
      {"C1", "mollifier moments q=0..8", c1},
      {"C2", "polynomial reproduction through the q=3 stage", c2},
      {"C3", "smooth-embedding negligibility (q_max=10)", c3},
      {"C4", "derivative commutation d iota(H) = iota(delta)", c4},
      {"C5", "delta infinite at 0 with scaling slopes", c5},
      {"C6", "H^2 vs H: quotient no, association yes", c6},
      {"C7", "generalized-number suite", c7},
      {"C8", "evaluation map", c8},
      {"C9", "full algebra panels", c9},
      {"C10", "plot criteria", c10},
      {"C11", "CLI reproducibility and runtime", c11},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (c.id == "C11") {
      g_elapsed_before_c11 =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    }
    std::ostringstream detail;
    try {
      c.run(detail);
      std::cout << "[PASS] " << c.id << " " << c.description << ": " << detail.str() << "\n";
    } catch (const FailedCriterion& f) {
      ++failures;
      std::cout << "[FAIL] " << c.id << " " << c.description << ": " << f.detail << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] " << c.id << " " << c.description << ": exception: " << e.what()
                << "\n";
    }
    std::cout.flush();
  }

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::cout << "ACCEPTANCE: " << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria passed in " << fmt(total) << " s\n";
  return failures == 0 ? 0 : 1;
}
