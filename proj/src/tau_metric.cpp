#include "taulab/tau_metric.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "taulab/errors.hpp"

namespace taulab {

namespace {

// Search truncation for dyadic-argument series: tail below 4^(-41)/3, far
// under double-precision noise. One refinement doubles it.
constexpr int kSearchTruncation = 40;

Bracket dyadic_distance(const ParamSeq& a, std::size_t m, int truncation) {
  return d_a_dyadic_sq(a, m, truncation).sqrt();
}

enum class Side { Below, Above, Straddle };

Side classify(const Bracket& b, double epsilon) {
  if (b.hi < epsilon) return Side::Below;
  if (b.lo > epsilon) return Side::Above;
  return Side::Straddle;
}

}  // namespace

Bracket d_a_sq(const ParamSeq& a, double t, double s, int truncation) {
  if (truncation < 0)
    throw ValidationError("d_a_sq: truncation must be >= 0");
  const double diff = t - s;
  double sum = 0.0;
  for (int n = 0; n <= truncation; ++n) {
    const double d = d_Z(std::ldexp(diff, -n));
    sum += a.at(static_cast<std::size_t>(n)) * d * d;
  }
  // d_Z(v) <= |v| and a_n < 1/4 bound the tail by diff^2 4^(-N) / 12.
  const double tail = std::ldexp(diff * diff, -2 * truncation) / 12.0;
  const double rel = slack_per_step() * static_cast<double>(truncation + 1);
  return Bracket{sum * (1.0 - rel), (sum + tail) * (1.0 + rel)};
}

Bracket d_a(const ParamSeq& a, double t, double s, int truncation) {
  return d_a_sq(a, t, s, truncation).sqrt();
}

Bracket d_a_dyadic_sq(const ParamSeq& a, std::size_t m, int truncation) {
  if (truncation < 1)
    throw ValidationError("d_a_dyadic_sq: truncation must be >= 1");
  double sum = 0.0;
  for (int k = 1; k <= truncation; ++k)
    sum += a.at(m + static_cast<std::size_t>(k)) * std::ldexp(1.0, -2 * k);
  const double tail = std::ldexp(1.0, -2 * (truncation + 1)) / 3.0;
  const double rel = slack_per_step() * static_cast<double>(truncation + 1);
  return Bracket{sum * (1.0 - rel), (sum + tail) * (1.0 + rel)};
}

TwoSidedBounds two_sided_bounds(const ParamSeq& a, std::size_t m, int n) {
  if (n < 1) throw ValidationError("two_sided_bounds: n must be >= 1");
  TwoSidedBounds b{};
  b.lower = 0.25 * a.at(m + 1);
  b.displayed_lower = 0.5 * a.at(m + 1);
  double sum4 = 0.0;
  double sum2 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double v = a.at(m + static_cast<std::size_t>(k));
    sum4 += v * std::ldexp(1.0, -2 * k);
    sum2 += v * std::ldexp(1.0, -k);
  }
  b.upper = sum4 + std::ldexp(1.0, -2 * (n + 1)) / 3.0;
  b.displayed_upper = sum2 + std::ldexp(1.0, -n - 2);
  return b;
}

DyadicNullReport find_null_dyadic(const ParamSeq& a, double epsilon,
                                  std::size_t m_max) {
  if (!(epsilon > 0.0))
    throw ValidationError("find_null_dyadic: epsilon must be > 0");
  if (m_max < 1) throw ValidationError("find_null_dyadic: m_max must be >= 1");

  DyadicNullReport report{a, epsilon, {}, {}};
  for (std::size_t m = 0; m <= m_max; ++m) {
    Bracket b = dyadic_distance(a, m, kSearchTruncation);
    Side side = classify(b, epsilon);
    if (side == Side::Straddle) {  // refine once before giving up
      b = dyadic_distance(a, m, 2 * kSearchTruncation);
      side = classify(b, epsilon);
    }
    if (side == Side::Below)
      report.hits.emplace_back(m, b);
    else if (side == Side::Straddle)
      report.undecided.emplace_back(m, b);
  }
  return report;
}

std::optional<SeparationWitness> separation_witness(const ParamSeq& a,
                                                    const ParamSeq& b,
                                                    double epsilon,
                                                    std::size_t m_max) {
  if (!(epsilon > 0.0))
    throw ValidationError("separation_witness: epsilon must be > 0");

  for (std::size_t m = 0; m <= m_max; ++m) {
    Bracket ba = dyadic_distance(a, m, kSearchTruncation);
    Bracket bb = dyadic_distance(b, m, kSearchTruncation);
    Side sa = classify(ba, epsilon);
    Side sb = classify(bb, epsilon);
    if (sa == Side::Straddle) {
      ba = dyadic_distance(a, m, 2 * kSearchTruncation);
      sa = classify(ba, epsilon);
    }
    if (sb == Side::Straddle) {
      bb = dyadic_distance(b, m, 2 * kSearchTruncation);
      sb = classify(bb, epsilon);
    }
    if (sa == Side::Below && sb == Side::Above)
      return SeparationWitness{m, ba, bb, epsilon, false};
    if (sb == Side::Below && sa == Side::Above)
      return SeparationWitness{m, ba, bb, epsilon, true};
  }
  return std::nullopt;
}

namespace {

struct NormalRule {
  TailKind kind;
  double c;
  double r;
  double p;
};

// Geometric with r = 1 and power with p = 0 are constants in disguise.
NormalRule normalize(const TailRule& t) {
  if (t.kind == TailKind::Geometric && t.r == 1.0)
    return {TailKind::Constant, t.c, 0.0, 0.0};
  if (t.kind == TailKind::Power && t.p == 0.0)
    return {TailKind::Constant, t.c, 0.0, 0.0};
  return {t.kind, t.c, t.r, t.p};
}

bool summable(const NormalRule& t) {
  return (t.kind == TailKind::Geometric && t.r < 1.0) ||
         (t.kind == TailKind::Power && t.p > 1.0);
}

// Upper bound on sum_{n >= start} of the rule (requires summable()).
double tail_sum_from(const NormalRule& t, std::size_t start) {
  const double s = static_cast<double>(start);
  if (t.kind == TailKind::Geometric)
    return t.c * std::pow(t.r, s) / (1.0 - t.r);
  return t.c * std::pow(s, 1.0 - t.p) / (t.p - 1.0);  // integral comparison
}

bool same_rule(const NormalRule& x, const NormalRule& y) {
  if (x.kind != y.kind || x.c != y.c) return false;
  if (x.kind == TailKind::Geometric) return x.r == y.r;
  if (x.kind == TailKind::Power) return x.p == y.p;
  return true;
}

}  // namespace

L1ParamDistance l1_param_distance(const ParamSeq& a, const ParamSeq& b,
                                  int n) {
  if (n < 1) throw ValidationError("l1_param_distance: N must be >= 1");

  double partial = 0.0;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
    partial += std::fabs(a.at(i) - b.at(i));

  // Past M both sequences follow their tail rules alone.
  const std::size_t m = std::max({static_cast<std::size_t>(n) + 1,
                                  a.prefix().size(), b.prefix().size()});
  double explicit_gap = 0.0;
  for (std::size_t i = static_cast<std::size_t>(n) + 1; i < m; ++i)
    explicit_gap += std::fabs(a.at(i) - b.at(i));

  const NormalRule ra = normalize(a.tail());
  const NormalRule rb = normalize(b.tail());

  if (same_rule(ra, rb))
    return {partial, explicit_gap, L1Verdict::Ell1Close};
  if (summable(ra) && summable(rb))
    return {partial, explicit_gap + tail_sum_from(ra, m) + tail_sum_from(rb, m),
            L1Verdict::Ell1Close};
  if (summable(ra) != summable(rb))
    return {partial, std::nullopt, L1Verdict::Divergent};

  // Both non-summable (constant, or power with p <= 1) and not identical:
  // the term gap is eventually of the order of the slower-decaying rule, so
  // the difference series diverges.
  const bool decided =
      (ra.kind == TailKind::Constant || ra.kind == TailKind::Power) &&
      (rb.kind == TailKind::Constant || rb.kind == TailKind::Power);
  if (decided) return {partial, std::nullopt, L1Verdict::Divergent};
  return {partial, std::nullopt, L1Verdict::Inconclusive};
}

double phi0(double y) {
  return 0.125 + std::atan(y) / (4.0 * std::numbers::pi);
}

}  // namespace taulab
