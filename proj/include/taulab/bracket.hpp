#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace taulab {

/// Per-accumulation-step relative slack used to pad partial sums and products
/// against floating-point roundoff. Default 1e-12; override with the
/// TAULAB_SLACK environment variable (read once).
inline double slack_per_step() {
  static const double value = [] {
    if (const char* env = std::getenv("TAULAB_SLACK")) {
      const double v = std::strtod(env, nullptr);
      if (v > 0.0 && std::isfinite(v)) return v;
    }
    return 1e-12;
  }();
  return value;
}

/// Closed interval [lo, hi] certified to contain an exactly defined real
/// value. Enclosures account for series truncation plus the float slack
/// above; they are conservative tail bounds, not directed-rounding intervals.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool intersects(const Bracket& other) const {
    return lo <= other.hi && other.lo <= hi;
  }

  /// Widen both endpoints outward by relative factor `rel` (on magnitude).
  Bracket pad_rel(double rel) const {
    return Bracket{lo - std::fabs(lo) * rel, hi + std::fabs(hi) * rel};
  }

  /// Widen both endpoints outward by absolute amount `abs`.
  Bracket pad_abs(double abs) const { return Bracket{lo - abs, hi + abs}; }

  /// Monotone image under sqrt; negative lower endpoints clamp to 0.
  Bracket sqrt() const {
    return Bracket{std::sqrt(std::max(lo, 0.0)), std::sqrt(std::max(hi, 0.0))};
  }
};

/// Distance from a complex point (re, im) to the interval [b.lo, b.hi] on the
/// real axis.
inline double distance_to(const Bracket& b, double re, double im) {
  const double dre = re < b.lo ? b.lo - re : (re > b.hi ? re - b.hi : 0.0);
  return std::hypot(dre, im);
}

}  // namespace taulab
