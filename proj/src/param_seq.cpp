#include "taulab/param_seq.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "taulab/errors.hpp"

namespace taulab {

namespace {

// Strict positivity floor: closed-form tails underflow to 0 in doubles long
// before the math does.
constexpr double kFloor = std::numeric_limits<double>::min();

[[noreturn]] void reject(std::size_t index, double value) {
  throw ValidationError("param_seq: value " + std::to_string(value) +
                        " at index " + std::to_string(index) +
                        " outside (0, 0.25)");
}

bool in_range(double v) { return v > 0.0 && v < 0.25; }

}  // namespace

double TailRule::eval(std::size_t n) const {
  double v = 0.0;
  switch (kind) {
    case TailKind::Constant:
      v = c;
      break;
    case TailKind::Geometric:
      v = c * std::pow(r, static_cast<double>(n));
      break;
    case TailKind::Power:
      v = c * std::pow(static_cast<double>(n) + 1.0, -p);
      break;
  }
  return std::max(v, kFloor);
}

ParamSeq::ParamSeq(std::vector<double> prefix, TailRule tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (!std::isfinite(prefix_[i]) || !in_range(prefix_[i]))
      reject(i, prefix_[i]);

  const std::size_t start = prefix_.size();
  if (!(tail_.c > 0.0) || !std::isfinite(tail_.c))
    throw ValidationError("param_seq: tail coefficient c must be positive");
  switch (tail_.kind) {
    case TailKind::Constant:
      if (!in_range(tail_.c)) reject(start, tail_.c);
      break;
    case TailKind::Geometric: {
      if (!(tail_.r > 0.0) || !std::isfinite(tail_.r))
        throw ValidationError("param_seq: geometric ratio r must be positive");
      if (tail_.r > 1.0) {
        // Growing tail: find the first index at or past the prefix where the
        // value leaves (0, 1/4).
        std::size_t n = start;
        const double crossing =
            std::log(0.25 / tail_.c) / std::log(tail_.r);  // c*r^n = 1/4
        if (crossing > static_cast<double>(start))
          n = static_cast<std::size_t>(std::floor(crossing));
        while (in_range(tail_.eval(n))) ++n;
        reject(n, tail_.eval(n));
      }
      // r <= 1: values only decrease with n, so the first one decides.
      if (!in_range(tail_.eval(start))) reject(start, tail_.eval(start));
      break;
    }
    case TailKind::Power:
      if (!(tail_.p >= 0.0) || !std::isfinite(tail_.p))
        throw ValidationError("param_seq: power exponent p must be >= 0");
      if (!in_range(tail_.eval(start))) reject(start, tail_.eval(start));
      break;
  }
}

double ParamSeq::at(std::size_t n) const {
  return n < prefix_.size() ? prefix_[n] : tail_.eval(n);
}

TritPrefix::TritPrefix(std::vector<std::int8_t> trits)
    : trits_(std::move(trits)) {
  if (trits_.empty()) throw ValidationError("trit_prefix: depth must be >= 1");
  for (std::size_t i = 0; i < trits_.size(); ++i)
    if (trits_[i] < -1 || trits_[i] > 1)
      throw ValidationError("trit_prefix: entry at index " + std::to_string(i) +
                            " not in {-1,0,1}");
}

}  // namespace taulab
