#pragma once

#include <cstdint>
#include <vector>

#include "taulab/bracket.hpp"
#include "taulab/param_seq.hpp"

namespace taulab {

/// Enclosure of theta(x) = sum_n x_n 2^(-n) for the truncated point x:
/// the depth-D partial sum bracketed by the worst-case tail +-2^(-D+1).
Bracket theta(const TritPrefix& x);

/// Center of the theta bracket (the partial sum itself).
double theta_center(const TritPrefix& x);

/// n i.i.d. depth-D draws from the truncated product measure on {-1,0,1}^D,
/// coordinate k taking 0 with probability 1-a_k and -1/+1 with probability
/// a_k/2 each. Deterministic per seed; draws use per-index derived streams.
std::vector<TritPrefix> sample_nu(const ParamSeq& a, std::size_t depth,
                                  std::uint64_t seed, std::size_t n);

/// theta centers of sample_nu draws: samples of the pushforward measure on R,
/// with truncation bias at most 2^(-D+1) per point.
std::vector<double> mu_a_sample(const ParamSeq& a, std::size_t depth,
                                std::uint64_t seed, std::size_t n);

/// Fourier transform of the pushforward measure as the infinite product
///   prod_n (1 - a_n (1 - cos(2 pi t 2^(-n)))),
/// enclosed by the partial product up to index N and the tail estimate
/// eps_N = pi^2 t^2 4^(-N) / 6 (valid only when eps_N < 1; throws
/// EnclosureError naming a sufficient N otherwise). Every factor lies in
/// (1/2, 1], so the result is a real bracket inside [0, 1] up to slack.
Bracket char_fn_product(const ParamSeq& a, double t, int truncation);

/// Smallest truncation index the tail estimate needs to reach eps_N <= 1e-12
/// at this argument, floored at 20.
int default_truncation(double t);

}  // namespace taulab
