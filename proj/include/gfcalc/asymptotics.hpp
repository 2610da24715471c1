#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gfcalc/error.hpp"

namespace gfcalc {

// Three-valued verdict for asymptotic statements estimated from finite data.
// Classifiers never coerce Inconclusive into Yes or No.
enum class Verdict : std::uint8_t { Yes, No, Inconclusive };

const char* to_string(Verdict v);

// Conjunction: any No wins, then any Inconclusive, else Yes.
Verdict verdict_and(Verdict a, Verdict b);

// A net rule restricted to a finite, strictly decreasing sample of (0,1].
struct EpsGrid {
  std::vector<double> values;

  EpsGrid() = default;
  explicit EpsGrid(std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

// Geometric grid eps_k = 2^-k for k = k_min..k_max.
EpsGrid default_grid(int k_min = 1, int k_max = 40);

// One sampled net value, carried in log-magnitude domain so that nets like
// eps^-50 stay representable on fine grids.
struct LogSample {
  double eps = 0.0;
  double log_eps = 0.0;
  double log_abs = 0.0;  // -inf when the value is exactly zero
  int sign = 0;          // -1, 0, +1
};

LogSample make_log_sample(double eps, double value);

using NetRule = std::function<double(double)>;

std::vector<double> sample_net(const NetRule& net, const EpsGrid& grid);
std::vector<LogSample> sample_net_log(const NetRule& net, const EpsGrid& grid);

// Least-squares fit of log|value| against log(eps) over the tail window of
// smallest eps values. slope estimates the exponent m in value ~ eps^m.
struct OrderReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int window = 0;             // tail points actually used
  int zeros_dropped = 0;      // exact zeros excluded from the fit
  int nonfinite_dropped = 0;  // overflowed values excluded from the fit
  bool all_zero = false;      // every sample was exactly zero (slope = +inf sentinel)
};

// Knobs shared by every classifier. Asymptotic statements over all eps are
// not decidable from a finite grid; these encode the finite proxy.
struct ClassifySettings {
  int window = 12;            // tail points for regression (capped at size/2)
  double r2_min = 0.99;       // fit quality demanded before saying Yes/No
  double zero_floor = 1e-13;  // |value| at or below this counts as zero
  int n_cap = 50;             // moderateness: slope >= -n_cap
  int m_max = 8;              // negligibility: slope >= m_max
  int m_cap = 50;             // invertibility: |x_eps| >= eps^m_cap on the tail
  int sup_points = 513;       // grid used when classifiers build sup-nets
  double quad_tol = 1e-10;
};

OrderReport estimate_order(const std::vector<LogSample>& samples, int window);

// Order of the measurable signal: drops magnitudes at or below the floor
// (double-precision noise once cancellations dominate) and fits the tail of
// what remains. all_zero is set when nothing measurable is left, meaning the
// net vanished below the floor everywhere.
OrderReport estimate_order_signal(const std::vector<LogSample>& samples, int window,
                                  double floor);

// E^s_M membership proxy: exists N with value = O(eps^-N), N <= n_cap.
Verdict is_moderate(const std::vector<LogSample>& samples, const ClassifySettings& s = {});

// N^s membership proxy: value = O(eps^m) for all m up to m_max.
Verdict is_negligible(const std::vector<LogSample>& samples, const ClassifySettings& s = {});
Verdict is_negligible(const std::vector<LogSample>& samples, int m_max);

// Infinitesimality proxy: |value| eventually below every positive real.
// Accepts decay slower than any power (detected on an iterated-log scale).
Verdict tends_to_zero(const std::vector<LogSample>& samples, const ClassifySettings& s = {});

}  // namespace gfcalc
