#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "taulab/bracket.hpp"
#include "taulab/param_seq.hpp"

namespace taulab {

/// Distance of a real number to the nearest integer, in [0, 1/2].
inline double d_Z(double u) { return std::fabs(u - std::round(u)); }

/// Enclosure of the squared translation-invariant metric
///   d_a(t,s)^2 = sum_n a_n d_Z(2^(-n)(t-s))^2,
/// as the partial sum up to index N plus the tail bound (t-s)^2 4^(-N) / 12.
/// The default truncation keeps the tail below double-precision noise for
/// arguments at desk scale.
Bracket d_a_sq(const ParamSeq& a, double t, double s, int truncation = 60);

/// Enclosure of d_a(t,s): square root of d_a_sq.
Bracket d_a(const ParamSeq& a, double t, double s, int truncation = 60);

/// Enclosure of d_a(2^m, 0)^2 via its dyadic series sum_{k>=1} a_{m+k} 4^(-k),
/// truncated at k = N with tail bound 4^(-N-1)/3 (default tail < 4^-41).
Bracket d_a_dyadic_sq(const ParamSeq& a, std::size_t m, int truncation = 40);

/// Two-sided bounds on d_a(2^m, 0)^2. `lower`/`upper` are the verified pair
///   a_{m+1}/4  <=  d_a(2^m,0)^2  <=  sum_{k<=n} a_{m+k} 4^(-k) + 4^(-n-1)/3.
/// `displayed_lower`/`displayed_upper` evaluate the weaker classical display
///   a_{m+1}/2 and 2^(-n-2) + sum_{k<=n} a_{m+k} 2^(-k); the displayed lower
/// constant 1/2 is not valid for the squared-d_Z series (constant a = 1/8
/// gives 1/16 > 1/24) and is reported for documentation only.
struct TwoSidedBounds {
  double lower;
  double upper;
  double displayed_lower;
  double displayed_upper;
};
TwoSidedBounds two_sided_bounds(const ParamSeq& a, std::size_t m, int n);

/// Dyadic arguments 2^m whose metric distance to 0 is certified below (hits)
/// or above (non-hits) a threshold; brackets that still straddle epsilon
/// after one refinement land in `undecided`, never silently dropped.
struct DyadicNullReport {
  ParamSeq a;
  double epsilon;
  std::vector<std::pair<std::size_t, Bracket>> hits;
  std::vector<std::pair<std::size_t, Bracket>> undecided;
};
DyadicNullReport find_null_dyadic(const ParamSeq& a, double epsilon,
                                  std::size_t m_max);

/// Certificate that d_a and d_b induce different topologies: at argument 2^m
/// one metric is certified below epsilon and the other above. `swapped`
/// records the orientation (false: d_a small / d_b large).
struct SeparationWitness {
  std::size_t m;
  Bracket d_a_value;
  Bracket d_b_value;
  double epsilon;
  bool swapped;
};
std::optional<SeparationWitness> separation_witness(const ParamSeq& a,
                                                    const ParamSeq& b,
                                                    double epsilon,
                                                    std::size_t m_max);

enum class L1Verdict { Ell1Close, Divergent, Inconclusive };

/// Partial sum of sum_n |a_n - b_n| up to index N, with a closed-form bound
/// on the remainder when both tail rules admit one. Verdict Ell1Close implies
/// the two parameter sequences induce the same topology.
struct L1ParamDistance {
  double partial;
  std::optional<double> tail_bound;
  L1Verdict verdict;
};
L1ParamDistance l1_param_distance(const ParamSeq& a, const ParamSeq& b, int n);

/// Strictly increasing homeomorphism R -> (0, 1/4):
/// 1/8 + arctan(y) / (4 pi). A 1/(4 pi)-Lipschitz contraction.
double phi0(double y);

}  // namespace taulab
