#include "taulab/product_measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "taulab/errors.hpp"
#include "taulab/rng.hpp"
#include "taulab/tau_metric.hpp"

namespace taulab {

namespace {
constexpr double kPiSq = std::numbers::pi * std::numbers::pi;
}

Bracket theta(const TritPrefix& x) {
  const double center = theta_center(x);
  const auto depth = static_cast<int>(x.depth());
  const double tail = std::ldexp(1.0, -depth + 1);  // sum_{n>=D} 2^(-n)
  // Partial sums stay within [-2, 2]; pad absolutely at that scale.
  const double pad =
      2.0 * slack_per_step() * static_cast<double>(x.depth() + 1);
  return Bracket{center - tail, center + tail}.pad_abs(pad);
}

double theta_center(const TritPrefix& x) {
  double acc = 0.0;
  for (std::size_t n = 0; n < x.depth(); ++n)
    acc += std::ldexp(static_cast<double>(x[n]), -static_cast<int>(n));
  return acc;
}

std::vector<TritPrefix> sample_nu(const ParamSeq& a, std::size_t depth,
                                  std::uint64_t seed, std::size_t n) {
  if (depth < 1) throw ValidationError("sample_nu: depth must be >= 1");
  if (n < 1) throw ValidationError("sample_nu: n must be >= 1");
  std::vector<double> coord(depth);
  for (std::size_t k = 0; k < depth; ++k) coord[k] = a.at(k);

  std::vector<TritPrefix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 stream = derive_stream(seed, i);
    std::vector<std::int8_t> trits(depth);
    for (std::size_t k = 0; k < depth; ++k) {
      const double u = stream.uniform01();
      if (u < 1.0 - coord[k])
        trits[k] = 0;
      else if (u < 1.0 - 0.5 * coord[k])
        trits[k] = -1;
      else
        trits[k] = 1;
    }
    out.emplace_back(std::move(trits));
  }
  return out;
}

std::vector<double> mu_a_sample(const ParamSeq& a, std::size_t depth,
                                std::uint64_t seed, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (const TritPrefix& x : sample_nu(a, depth, seed, n))
    out.push_back(theta_center(x));
  return out;
}

Bracket char_fn_product(const ParamSeq& a, double t, int truncation) {
  if (truncation < 1)
    throw ValidationError("char_fn_product: truncation must be >= 1");
  const double eps_tail =
      kPiSq * t * t * std::ldexp(1.0, -2 * truncation) / 6.0;
  if (!(eps_tail < 1.0))
    throw EnclosureError(
        "char_fn_product: tail bound invalid at truncation " +
        std::to_string(truncation) + " for t = " + std::to_string(t) +
        "; need at least N = " + std::to_string(default_truncation(t)));

  // 1 - cos(2 pi u) = 2 sin^2(pi u), and sin^2(pi u) has period 1, so the
  // argument reduces through d_Z(u) exactly; dyadic t then contributes
  // exactly-unit factors instead of cos() of a huge angle.
  double prod = 1.0;
  for (int n = 0; n <= truncation; ++n) {
    const double s = std::sin(std::numbers::pi * d_Z(std::ldexp(t, -n)));
    prod *= 1.0 - a.at(static_cast<std::size_t>(n)) * 2.0 * s * s;
  }
  const double rel =
      slack_per_step() * static_cast<double>(truncation + 1);
  // Remaining factors lie in [1 - eps_tail, 1]; prod > 0 since every factor
  // exceeds 1/2.
  return Bracket{prod * (1.0 - eps_tail), prod}.pad_rel(rel);
}

int default_truncation(double t) {
  if (t == 0.0) return 20;
  const double needed =
      std::ceil(std::log(kPiSq * t * t / (6.0 * 1e-12)) / std::log(4.0));
  return std::max(20, static_cast<int>(needed));
}

}  // namespace taulab
