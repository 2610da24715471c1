#pragma once

#include <vector>

#include "gfcalc/asymptotics.hpp"
#include "gfcalc/smoothfn.hpp"

namespace gfcalc {

// Unit-mass kernel supported in [-1,1] whose moments 1..q vanish.
struct Mollifier {
  SmoothFn fn;
  int q = 0;
  double l1_mass = 1.0;
  std::vector<double> poly_coeffs;  // psi = bump * p; empty means p = 1
};

// Staged net (psi_eps): stage j (moments vanishing up to j) is active for
// eps in (thresholds[j], thresholds[j-1]]; the last stage covers the tail.
// Realizes the "for every j there is eps_0" quantifier of the moment
// property by construction.
struct MollifierNet {
  std::vector<double> thresholds;  // strictly decreasing, in (0,1]
  std::vector<Mollifier> stages;   // stages[j] has moment order j, j = 0..q_max

  const Mollifier& at(double eps) const;
};

// Normalized bump; odd moments vanish by symmetry.
Mollifier base_bump();

// psi = bump * p with p solving the Gram system G c = e0,
// G_{jk} = integral of x^(j+k) * bump. Valid for 0 <= q <= 12.
Mollifier make_moment_mollifier(int q);

// Stage thresholds default to eps_j = 2^(-4j).
MollifierNet make_schedule(int q_max);
MollifierNet make_schedule(int q_max, std::vector<double> thresholds);

// Empirical verification of the mollifier-net properties over a grid:
// support in the unit ball, unit mass, vanishing moments per stage, sup-net
// moderateness per derivative order, and the L1-mass trajectory.
struct MollifierCheck {
  bool support_ok = false;     // every stage supported strictly inside [-1,1]
  bool mass_ok = false;        // integral 1 within 1e-10 per stage
  bool moments_ok = false;     // stage j: moments 1..j within 1e-8
  std::vector<double> stage_moment_worst;  // per stage, max |moment 1..j|
  struct AlphaTrace {
    int alpha = 0;
    OrderReport order;  // of eps -> sup |psi_eps^(alpha)|
  };
  std::vector<AlphaTrace> sup_traces;  // alpha = 0..3
  std::vector<double> l1_trajectory;   // per grid eps
  double l1_final = 1.0;
  bool l1_within(double eta) const { return l1_final <= 1.0 + eta; }
};

MollifierCheck verify_properties(const MollifierNet& net, const EpsGrid& grid);

// Moments of the bump kernel, cached; used by the Gram systems here and by
// the panel generator in full_alg.
double bump_moment(int k);

// Dense solve helpers for the small Gram/projection systems (n <= 16).
// Throws on a singular or ill-conditioned system.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs);

}  // namespace gfcalc
