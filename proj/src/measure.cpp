#include "taulab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "taulab/errors.hpp"
#include "taulab/rng.hpp"

namespace taulab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Cdf

Cdf::Cdf(std::span<const Atom> atoms, std::span<const Piece> pieces) {
  xs_.reserve(atoms.size() + 2 * pieces.size());
  for (const Atom& a : atoms) xs_.push_back(a.x);
  for (const Piece& p : pieces) {
    xs_.push_back(p.lo);
    xs_.push_back(p.hi);
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());

  // Values and slopes are recomputed per breakpoint from the components
  // instead of swept cumulatively, so each entry carries only one rounding
  // cloud and monotonicity violations stay at ulp scale.
  value_.resize(xs_.size());
  slope_.assign(xs_.size(), 0.0);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double x = xs_[i];
    double v = 0.0;
    for (const Atom& a : atoms)
      if (a.x <= x) v += a.w;
    for (const Piece& p : pieces) v += p.w * clamp01((x - p.lo) / (p.hi - p.lo));
    value_[i] = clamp01(v);
    for (const Piece& p : pieces)
      if (p.lo <= x && x < p.hi) slope_[i] += p.w / (p.hi - p.lo);
  }
  for (std::size_t i = 1; i < xs_.size(); ++i)
    value_[i] = std::max(value_[i], value_[i - 1]);
  value_.back() = 1.0;  // total mass is exact after renormalization
}

double Cdf::eval(double x) const {
  if (!(x >= xs_.front())) return 0.0;  // also covers NaN
  if (x >= xs_.back()) return 1.0;
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const double v = value_[i] + slope_[i] * (x - xs_[i]);
  return std::min(v, value_[i + 1]);
}

double Cdf::eval_left(double x) const {
  return eval(std::nextafter(x, -std::numeric_limits<double>::infinity()));
}

double Cdf::quantile(double y) const {
  if (!(y >= 0.0 && y <= 1.0))
    throw ValidationError("quantile: y = " + std::to_string(y) +
                          " outside [0,1]");
  const auto it = std::lower_bound(value_.begin(), value_.end(), y);
  std::size_t i = static_cast<std::size_t>(it - value_.begin());
  if (i >= value_.size()) i = value_.size() - 1;  // y <= 1 = value_.back()
  if (i == 0) return xs_.front();

  const double x_lo = xs_[i - 1];
  const double x_hi = xs_[i];
  const double f_lo = value_[i - 1];
  const double s = slope_[i - 1];
  double x = x_hi;
  if (s > 0.0 && f_lo + s * (x_hi - x_lo) >= y)
    x = std::min(x_lo + (y - f_lo) / s, x_hi);

  // Settle on the float-minimal point with F(x) >= y.
  constexpr auto inf = std::numeric_limits<double>::infinity();
  int guard = 0;
  while (eval(x) < y && guard++ < 64) x = std::nextafter(x, inf);
  if (eval(x) < y) x = x_hi;  // affine inversion drifted; breakpoint is safe
  guard = 0;
  while (x > xs_.front() && guard++ < 64) {
    const double prev = std::nextafter(x, -inf);
    if (eval(prev) >= y)
      x = prev;
    else
      break;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Measure

Measure::Measure(std::vector<Atom> atoms, std::vector<Piece> pieces,
                 double weight_tol) {
  if (atoms.empty() && pieces.empty())
    throw ValidationError("measure: needs at least one atom or piece");

  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (!std::isfinite(a.x) || !std::isfinite(a.w))
      throw ValidationError("measure: atom " + std::to_string(i) +
                            " is not finite");
    if (!(a.w > 0.0))
      throw ValidationError("measure: atom " + std::to_string(i) +
                            " has non-positive weight");
    total += a.w;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.w))
      throw ValidationError("measure: piece " + std::to_string(i) +
                            " is not finite");
    if (!(p.lo < p.hi))
      throw ValidationError("measure: piece " + std::to_string(i) +
                            " needs lo < hi");
    if (!(p.w > 0.0))
      throw ValidationError("measure: piece " + std::to_string(i) +
                            " has non-positive weight");
    total += p.w;
  }
  if (!(std::fabs(total - 1.0) <= weight_tol))
    throw ValidationError("measure: weights sum to " + std::to_string(total) +
                          ", expected 1 within " + std::to_string(weight_tol));

  // Renormalize, but leave ulp-scale dust alone so that weight-preserving
  // maps (reflection, canonicalization) are exact involutions.
  if (std::fabs(total - 1.0) > 1e-13) {
    for (Atom& a : atoms) a.w /= total;
    for (Piece& p : pieces) p.w /= total;
  }

  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().x == a.x)
      atoms_.back().w += a.w;
    else
      atoms_.push_back(a);
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return std::tie(a.lo, a.hi, a.w) < std::tie(b.lo, b.hi, b.w);
  });
  pieces_ = std::move(pieces);

  cdf_ = std::make_shared<const Cdf>(atoms_, pieces_);
}

double cdf(const Measure& mu, double x) { return mu.cdf().eval(x); }
double cdf_left(const Measure& mu, double x) { return mu.cdf().eval_left(x); }
double quantile(const Measure& mu, double y) { return mu.cdf().quantile(y); }

double l1_quantile_distance(const Measure& mu, const Measure& eta) {
  std::vector<double> xs;
  xs.reserve(mu.cdf().breakpoints().size() + eta.cdf().breakpoints().size());
  xs.insert(xs.end(), mu.cdf().breakpoints().begin(),
            mu.cdf().breakpoints().end());
  xs.insert(xs.end(), eta.cdf().breakpoints().begin(),
            eta.cdf().breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // On each open segment both CDFs are affine, so |F_mu - F_eta| integrates
  // in closed form after splitting at the sign change.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double len = xs[i + 1] - xs[i];
    const double d0 = cdf(mu, xs[i]) - cdf(eta, xs[i]);
    const double d1 = cdf_left(mu, xs[i + 1]) - cdf_left(eta, xs[i + 1]);
    const double m = (d1 - d0) / len;
    if (d0 == 0.0 && d1 == 0.0) continue;
    if (d0 * d1 >= 0.0) {
      total += 0.5 * std::fabs(d0 + d1) * len;
    } else {
      const double root = -d0 / m;  // in (0, len) by the sign change
      total += 0.5 * std::fabs(d0) * root + 0.5 * std::fabs(d1) * (len - root);
    }
  }
  return total;
}

namespace {

/// sin(z)/z. Below the small-argument threshold |2z| < 1e-4 a 4-term series
/// replaces the quotient; relative error < 1e-16 in that regime.
double sinc(double z) {
  if (std::fabs(2.0 * z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
  }
  return std::sin(z) / z;
}

}  // namespace

std::complex<double> char_fn(const Measure& mu, double t) {
  std::complex<double> acc(0.0, 0.0);
  for (const Atom& a : mu.atoms()) {
    const double arg = kTwoPi * a.x * t;
    acc += std::complex<double>(a.w * std::cos(arg), a.w * std::sin(arg));
  }
  for (const Piece& p : mu.pieces()) {
    // (e^{2*pi*i*hi*t} - e^{2*pi*i*lo*t}) / (2*pi*i*t*(hi-lo))
    //   = e^{pi*i*(lo+hi)*t} * sinc(pi*t*(hi-lo))
    const double mod = std::numbers::pi * (p.lo + p.hi) * t;
    const double s = sinc(std::numbers::pi * t * (p.hi - p.lo));
    acc += std::complex<double>(p.w * s * std::cos(mod),
                                p.w * s * std::sin(mod));
  }
  return acc;
}

Measure mix(std::span<const double> weights, std::span<const Measure> parts) {
  if (weights.size() != parts.size())
    throw ValidationError("mix: " + std::to_string(weights.size()) +
                          " weights vs " + std::to_string(parts.size()) +
                          " parts");
  if (parts.empty()) throw ValidationError("mix: empty part list");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0))
      throw ValidationError("mix: negative or non-finite weight");
    total += w;
  }
  if (!(std::fabs(total - 1.0) <= 1e-12))
    throw ValidationError("mix: weights sum to " + std::to_string(total) +
                          ", expected 1 within 1e-12");

  std::vector<Atom> atoms;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (weights[i] == 0.0) continue;
    for (const Atom& a : parts[i].atoms())
      atoms.push_back({a.x, weights[i] * a.w});
    for (const Piece& p : parts[i].pieces())
      pieces.push_back({p.lo, p.hi, weights[i] * p.w});
  }
  return Measure(std::move(atoms), std::move(pieces), 1e-9);
}

Measure opposite(const Measure& mu) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) atoms.push_back({-a.x, a.w});
  std::vector<Piece> pieces;
  pieces.reserve(mu.pieces().size());
  for (const Piece& p : mu.pieces()) pieces.push_back({-p.hi, -p.lo, p.w});
  return Measure(std::move(atoms), std::move(pieces), 1e-9);
}

Measure symmetrize(const Measure& mu, double q) {
  if (!(q > 0.0 && q < 1.0))
    throw ValidationError("symmetrize: q = " + std::to_string(q) +
                          " outside (0,1)");
  const double lq = std::log(q);
  const Measure parts[] = {mu, opposite(mu), Measure::dirac(lq),
                           Measure::dirac(-lq)};
  const double w[] = {0.25, 0.25, 0.25, 0.25};
  return mix(w, parts);
}

std::vector<double> sample(const Measure& mu, std::uint64_t seed,
                           std::size_t n) {
  if (n < 1) throw ValidationError("sample: n must be >= 1");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 stream = derive_stream(seed, i);
    out[i] = quantile(mu, stream.uniform01());
  }
  return out;
}

std::vector<double> decay_profile(const Measure& mu,
                                  std::span<const Band> bands,
                                  double grid_step) {
  if (bands.empty()) throw ValidationError("decay_profile: empty band list");
  std::vector<double> out;
  out.reserve(bands.size());
  for (const Band& band : bands) {
    if (!(band.lo > 0.0 && band.hi > band.lo))
      throw ValidationError("decay_profile: band must satisfy 0 < lo < hi");
    const double width = band.hi - band.lo;
    const double step = grid_step > 0.0 ? grid_step : 1.0 / (64.0 * width);
    const auto count = static_cast<std::size_t>(std::floor(width / step));
    double sup = std::abs(char_fn(mu, band.hi));
    for (std::size_t j = 0; j <= count; ++j)
      sup = std::max(sup, std::abs(char_fn(mu, band.lo + static_cast<double>(j) * step)));
    out.push_back(sup);
  }
  return out;
}

}  // namespace taulab
