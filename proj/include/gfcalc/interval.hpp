#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfcalc/error.hpp"

namespace gfcalc {

// Closed interval [lo, hi]; the K <<subset Omega of moderateness bounds.
struct CompactSet {
  double lo = 0.0;
  double hi = 0.0;

  CompactSet() = default;
  CompactSet(double a, double b) : lo(a), hi(b) {
    if (!(a <= b)) throw Error(ErrorKind::Argument, "CompactSet requires lo <= hi");
    if (!std::isfinite(a) || !std::isfinite(b))
      throw Error(ErrorKind::Argument, "CompactSet bounds must be finite");
  }

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const CompactSet& other) const { return lo <= other.lo && other.hi <= hi; }
};

// Open interval (lo, hi); lo/hi may be +-infinity.
struct OpenInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  OpenInterval() = default;
  OpenInterval(double a, double b) : lo(a), hi(b) {
    if (!(a < b)) throw Error(ErrorKind::Argument, "OpenInterval requires lo < hi");
  }

  static OpenInterval real_line() { return OpenInterval(); }

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double x) const { return lo < x && x < hi; }
  bool empty() const { return !(lo < hi); }

  // K strictly inside (lo, hi): needed for "K compactly contained in Omega".
  bool strictly_contains(const CompactSet& k) const { return lo < k.lo && k.hi < hi; }

  bool operator==(const OpenInterval& o) const { return lo == o.lo && hi == o.hi; }
};

// Intersection may be empty; callers check empty() before use.
struct MaybeInterval {
  bool present = false;
  double lo = 0.0;
  double hi = 0.0;
};

inline MaybeInterval intersect(const OpenInterval& a, const OpenInterval& b) {
  double lo = std::max(a.lo, b.lo);
  double hi = std::min(a.hi, b.hi);
  if (!(lo < hi)) return {};
  return {true, lo, hi};
}

}  // namespace gfcalc
