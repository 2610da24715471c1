#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/distributions.hpp"
#include "gfcalc/interval.hpp"
#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Test object of the full algebra: unit mass, moments 1..q vanishing.
struct TestFnA {
  SmoothFn phi;
  int q = 0;
  std::vector<double> poly_coeffs;  // phi = bump * p; replayable from these
};

// Representative in E^e(omega): R(phi, x), materialized as a smooth function
// of x for each fixed test function. The domain of R(phi, -) is Omega_phi.
struct FullRep {
  OpenInterval omega;
  std::function<SmoothFn(const SmoothFn& phi)> materialize;
};

// Omega_phi = {x : supp(phi) + x inside omega} = (a - s_lo, b - s_hi) cap (a, b).
// May be empty when the support is wider than omega.
MaybeInterval omega_phi(const SmoothFn& phi, const OpenInterval& omega);

// (phi, x) in U(omega): supp(phi) fits inside omega - x.
bool in_UOmega(const SmoothFn& phi, double x, const OpenInterval& omega);

// Seeded random panel from A_q: phi = bump * p with p of degree q + 2 drawn
// from the seed and projected onto the moment constraints; every member is
// certified by quadrature before being returned. Deterministic per
// (q, size, seed) across platforms.
std::vector<TestFnA> make_panel(int q, int size, std::uint64_t seed);

// Intrinsic embedding: R(phi, x) = <u, phi(? - x)>, materialized symbolically
// when possible (delta derivatives, Heaviside).
FullRep iota_full(const Distribution& u, const OpenInterval& omega = OpenInterval::real_line());

// Constant-in-phi representative of a smooth function: R(phi, x) = f(x).
FullRep sigma_full(const SmoothFn& f, const OpenInterval& omega = OpenInterval::real_line());

FullRep operator-(const FullRep& a, const FullRep& b);
FullRep partial_x(const FullRep& r, int k);

// Evaluate R(phi, x); throws when (phi, x) is outside U(omega).
double full_eval(const FullRep& r, const SmoothFn& phi, double x);

struct PanelMemberTrace {
  int member = 0;
  int alpha = 0;
  OrderReport order;
};

struct FullVerdictReport {
  Verdict verdict = Verdict::Inconclusive;
  int level = 0;  // the N (moderate) or q (negligible) the verdict was reached at
  std::vector<PanelMemberTrace> traces;
  int grid_head_dropped = 0;  // eps values removed so scaled supports stay admissible
};

// E^e_M proxy: for N = n_probe (escalating to 3 on a No), draw a panel from
// A_N and require sup_{x in K} |d^alpha R(eps @ phi, x)| = O(eps^-N) for all
// panel members and alpha <= alpha_max.
FullVerdictReport full_moderate(const FullRep& r, const CompactSet& k, int alpha_max, int n_probe,
                                int panel_size, std::uint64_t seed, const EpsGrid& grid,
                                const ClassifySettings& s = {});

// N^e proxy for a target m: search q through the schedule for a panel from
// A_q whose nets all have slope >= m; No when slopes plateau below m.
FullVerdictReport full_negligible(const FullRep& r, const CompactSet& k, int alpha_max, int m,
                                  const std::vector<int>& q_schedule, int panel_size,
                                  std::uint64_t seed, const EpsGrid& grid,
                                  const ClassifySettings& s = {});

std::vector<int> default_q_schedule();  // 1..8

}  // namespace gfcalc
