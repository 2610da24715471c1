#include "gfcalc/gnum.hpp"

#include <algorithm>
#include <cmath>

namespace gfcalc {

std::vector<LogSample> GenNumber::samples(const EpsGrid& grid) const {
  return sample_net_log(net_, grid);
}

GenNumber operator+(const GenNumber& x, const GenNumber& y) {
  return GenNumber([a = x.net(), b = y.net()](double e) { return a(e) + b(e); });
}

GenNumber operator-(const GenNumber& x, const GenNumber& y) {
  return GenNumber([a = x.net(), b = y.net()](double e) { return a(e) - b(e); });
}

GenNumber operator*(const GenNumber& x, const GenNumber& y) {
  return GenNumber([a = x.net(), b = y.net()](double e) { return a(e) * b(e); });
}

GenNumber operator-(const GenNumber& x) {
  return GenNumber([a = x.net()](double e) { return -a(e); });
}

GenNumber abs(const GenNumber& x) {
  return GenNumber([a = x.net()](double e) { return std::abs(a(e)); });
}

GenNumber inf(const GenNumber& x, const GenNumber& y) {
  return GenNumber([a = x.net(), b = y.net()](double e) { return std::min(a(e), b(e)); });
}

GenNumber sup(const GenNumber& x, const GenNumber& y) {
  return GenNumber([a = x.net(), b = y.net()](double e) { return std::max(a(e), b(e)); });
}

Verdict eq_tilde(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
                 const ClassifySettings& s) {
  return is_negligible(abs(x - y).samples(grid), s);
}

Verdict leq(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
            const ClassifySettings& s) {
  // Equivalent to the exists-negligible-slack formulation: x <= y + z with
  // (z) ~ 0 iff the positive part of x - y is itself negligible.
  GenNumber deficit([a = x.net(), b = y.net()](double e) { return std::max(a(e) - b(e), 0.0); });
  return is_negligible(deficit.samples(grid), s);
}

Verdict is_invertible(const GenNumber& x, const EpsGrid& grid, const ClassifySettings& s) {
  const auto samples = x.samples(grid);

  const int w = std::min<int>(s.window, std::max<int>(static_cast<int>(samples.size()) / 2, 4));
  const std::size_t tail = std::min<std::size_t>(static_cast<std::size_t>(w), samples.size());
  // Exact zeros on the tail rule out a uniform eps^m lower bound; values below
  // eps^m_cap count against it even in log domain.
  int tail_exact_zeros = 0;
  int tail_below_cap = 0;
  for (std::size_t i = samples.size() - tail; i < samples.size(); ++i) {
    const auto& smp = samples[i];
    if (smp.sign == 0) ++tail_exact_zeros;
    if (smp.sign == 0 || smp.log_abs < static_cast<double>(s.m_cap) * smp.log_eps)
      ++tail_below_cap;
  }
  if (tail_below_cap >= (w + 1) / 2) return Verdict::No;  // persistently below eps^m_cap
  if (tail_exact_zeros > 0) return Verdict::Inconclusive;

  const OrderReport rep = estimate_order(samples, w);
  if (rep.all_zero) return Verdict::No;
  if (rep.r2 >= s.r2_min && rep.slope <= static_cast<double>(s.m_cap)) return Verdict::Yes;
  return Verdict::Inconclusive;
}

Verdict strict_lt(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
                  const ClassifySettings& s) {
  return verdict_and(leq(x, y, grid, s), is_invertible(y - x, grid, s));
}

Verdict is_infinitesimal(const GenNumber& x, const EpsGrid& grid, const ClassifySettings& s) {
  return tends_to_zero(abs(x).samples(grid), s);
}

Verdict approx(const GenNumber& x, const GenNumber& y, const EpsGrid& grid,
               const ClassifySettings& s) {
  return tends_to_zero(abs(x - y).samples(grid), s);
}

Verdict sharp_ball_contains(const GenNumber& center, const GenNumber& rho, const GenNumber& y,
                            const EpsGrid& grid, const ClassifySettings& s) {
  if (strict_lt(GenNumber::constant(0.0), rho, grid, s) == Verdict::No)
    throw Error(ErrorKind::Argument, "invalid radius: not positive invertible");
  return strict_lt(abs(y - center), rho, grid, s);
}

GenPoint::GenPoint(NetRule net, const CompactSet& witness, const OpenInterval& omega,
                   const EpsGrid& grid)
    : net_(std::move(net)), witness_(witness), omega_(omega) {
  if (!omega.strictly_contains(witness))
    throw Error(ErrorKind::Argument, "witness K must lie strictly inside omega");
  // Longest suffix of the grid confined to K; the point is compactly
  // supported when that suffix covers at least the grid tail quarter.
  std::size_t first_in = grid.size();
  for (std::size_t i = grid.size(); i-- > 0;) {
    const double v = net_(grid[i]);
    if (witness_.contains(v)) {
      first_in = i;
    } else {
      break;
    }
  }
  const std::size_t needed = std::max<std::size_t>(grid.size() / 4, 1);
  if (first_in == grid.size() || grid.size() - first_in < needed)
    throw Error(ErrorKind::Argument, "not compactly supported: net escapes the witness K on the grid tail");
  threshold_ = first_in == 0 ? 1.0 : grid[first_in];
}

GenPoint GenPoint::constant(double x0, const CompactSet& witness, const OpenInterval& omega,
                            const EpsGrid& grid) {
  return GenPoint([x0](double) { return x0; }, witness, omega, grid);
}

}  // namespace gfcalc
