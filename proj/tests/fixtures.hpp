// Seeded random fixtures shared by the unit and acceptance suites.
#pragma once

#include <vector>

#include "taulab/measure.hpp"
#include "taulab/param_seq.hpp"
#include "taulab/rng.hpp"

namespace fixtures {

/// Random measure with 0-4 atoms and 0-3 uniform pieces (at least one
/// component), supported inside [lo, hi].
inline taulab::Measure random_measure(taulab::SplitMix64& rng, double lo,
                                      double hi) {
  const double span = hi - lo;
  for (;;) {
    const auto n_atoms = static_cast<std::size_t>(rng.next() % 5);
    const auto n_pieces = static_cast<std::size_t>(rng.next() % 4);
    if (n_atoms == 0 && n_pieces == 0) continue;

    std::vector<taulab::Atom> atoms;
    for (std::size_t i = 0; i < n_atoms; ++i)
      atoms.push_back({lo + span * rng.uniform01(), 0.05 + rng.uniform01()});
    std::vector<taulab::Piece> pieces;
    for (std::size_t i = 0; i < n_pieces; ++i) {
      double a = lo + span * rng.uniform01();
      double b = lo + span * rng.uniform01();
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3 * span) b = a + 1e-3 * span;
      pieces.push_back({a, b, 0.05 + rng.uniform01()});
    }
    double total = 0.0;
    for (const auto& a : atoms) total += a.w;
    for (const auto& p : pieces) total += p.w;
    for (auto& a : atoms) a.w /= total;
    for (auto& p : pieces) p.w /= total;
    return taulab::Measure(std::move(atoms), std::move(pieces), 1e-9);
  }
}

/// Random parameter sequence: short prefix plus one of the three tail kinds,
/// with moderate decay so series are well inside (0, 1/4).
inline taulab::ParamSeq random_param_seq(taulab::SplitMix64& rng) {
  const auto prefix_len = static_cast<std::size_t>(rng.next() % 4);
  std::vector<double> prefix;
  for (std::size_t i = 0; i < prefix_len; ++i)
    prefix.push_back(0.01 + 0.23 * rng.uniform01());
  taulab::TailRule tail;
  switch (rng.next() % 3) {
    case 0:
      tail = {taulab::TailKind::Constant, 0.01 + 0.23 * rng.uniform01(), 0.0,
              0.0};
      break;
    case 1:
      tail = {taulab::TailKind::Geometric, 0.01 + 0.2 * rng.uniform01(),
              0.1 + 0.8 * rng.uniform01(), 0.0};
      break;
    default:
      tail = {taulab::TailKind::Power, 0.01 + 0.2 * rng.uniform01(), 0.0,
              0.5 + 2.5 * rng.uniform01()};
      break;
  }
  return taulab::ParamSeq(std::move(prefix), tail);
}

/// a_n = 4^(-n-1) for n >= 1 (the n = 0 slot holds an inert valid value: a
/// literal 4^(-0-1) = 1/4 sits outside the open parameter box, and no dyadic
/// series or product factor ever reads index 0 for dyadic arguments).
inline taulab::ParamSeq geometric_quarter_seq() {
  return taulab::ParamSeq({0.1},
                          {taulab::TailKind::Geometric, 0.25, 0.25, 0.0});
}

/// Constant sequence a_n = c.
inline taulab::ParamSeq constant_seq(double c) {
  return taulab::ParamSeq({}, {taulab::TailKind::Constant, c, 0.0, 0.0});
}

}  // namespace fixtures
