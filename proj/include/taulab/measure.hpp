#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace taulab {

struct Atom {
  double x;
  double w;
  bool operator==(const Atom&) const = default;
};

/// Uniform block carrying total weight w spread as density w/(hi-lo) on
/// [lo, hi]. Blocks may overlap; densities add.
struct Piece {
  double lo;
  double hi;
  double w;
  bool operator==(const Piece&) const = default;
};

/// Piecewise representation of a distribution function on R: right-continuous,
/// non-decreasing, constant jumps at atoms, affine across density pieces,
/// 0 at -inf and 1 at +inf.
class Cdf {
 public:
  Cdf(std::span<const Atom> atoms, std::span<const Piece> pieces);

  const std::vector<double>& breakpoints() const { return xs_; }

  /// F(x) = mass of (-inf, x].
  double eval(double x) const;
  /// Left limit F(x-) = mass of (-inf, x).
  double eval_left(double x) const;
  /// Minimal x with F(x) >= y (float-minimal). y = 0 returns the leftmost
  /// breakpoint: the infimum of the support hull, since the untruncated
  /// minimum over R would be -inf.
  double quantile(double y) const;

 private:
  std::vector<double> xs_;     // sorted breakpoints
  std::vector<double> value_;  // F at each breakpoint (right-continuous)
  std::vector<double> slope_;  // density on (xs_[i], xs_[i+1])
};

/// Finitely represented probability measure on R: weighted atoms plus
/// weighted uniform-density blocks. Weights are validated to sum to 1 within
/// `weight_tol` at construction and then renormalized exactly. Atoms at the
/// same location merge; locations end up pairwise distinct and sorted.
/// Immutable after construction; all operations on it are pure.
class Measure {
 public:
  Measure(std::vector<Atom> atoms, std::vector<Piece> pieces,
          double weight_tol = 1e-12);

  static Measure dirac(double x) { return Measure({{x, 1.0}}, {}); }
  static Measure uniform(double lo, double hi) {
    return Measure({}, {{lo, hi, 1.0}});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Cdf& cdf() const { return *cdf_; }

  double support_lo() const { return cdf_->breakpoints().front(); }
  double support_hi() const { return cdf_->breakpoints().back(); }

  /// Structural equality of the canonical form.
  bool operator==(const Measure& other) const {
    return atoms_ == other.atoms_ && pieces_ == other.pieces_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Piece> pieces_;
  std::shared_ptr<const Cdf> cdf_;
};

double cdf(const Measure& mu, double x);
double cdf_left(const Measure& mu, double x);

/// Quantile transform: minimal x with cdf(mu, x) >= y, for y in [0, 1].
double quantile(const Measure& mu, double y);

/// Exact integral of |F_mu - F_eta| over the support hull, computed
/// segment-by-segment on merged breakpoints with sign-change splitting.
/// Equals the L1 distance between the two quantile transforms.
double l1_quantile_distance(const Measure& mu, const Measure& eta);

/// Fourier transform at t with the e^{2*pi*i*x*t} convention.
std::complex<double> char_fn(const Measure& mu, double t);

/// Convex combination. Weights must be non-negative and sum to 1 within 1e-12.
Measure mix(std::span<const double> weights, std::span<const Measure> parts);

/// Reflection through 0: pushforward under x -> -x.
Measure opposite(const Measure& mu);

/// (mu + opposite(mu) + dirac(log q) + dirac(-log q)) / 4 for q in (0, 1).
/// The result's Fourier transform is real-valued.
Measure symmetrize(const Measure& mu, double q);

/// Inverse-CDF sampling: quantile(mu, u_i) for n seeded uniform deviates.
/// Deterministic per seed; per-draw derived streams keep the result
/// independent of evaluation order.
std::vector<double> sample(const Measure& mu, std::uint64_t seed,
                           std::size_t n);

struct Band {
  double lo;
  double hi;
};

/// Per band, the sup of |char_fn| over a deterministic grid. A grid lower
/// estimate of the true sup, not a certified bound. grid_step = 0 selects the
/// default step 1/(64 * band width).
std::vector<double> decay_profile(const Measure& mu,
                                  std::span<const Band> bands,
                                  double grid_step = 0.0);

}  // namespace taulab
