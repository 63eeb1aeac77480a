#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace taulab {

enum class TailKind { Constant, Geometric, Power };

/// Closed-form rule for sequence entries past the explicit prefix, evaluated
/// at the global index n:
///   Constant   c
///   Geometric  c * r^n          (0 < r <= 1)
///   Power      c * (n+1)^(-p)   (p >= 0)
struct TailRule {
  TailKind kind = TailKind::Constant;
  double c = 0.0;
  double r = 0.0;
  double p = 0.0;

  double eval(std::size_t n) const;
  bool operator==(const TailRule&) const = default;
};

/// Element of the parameter space (0, 1/4)^N: an explicit prefix plus a tail
/// rule. Every entry, prefix or tail, is validated to lie strictly inside
/// (0, 1/4) at construction; violations name the offending index.
class ParamSeq {
 public:
  ParamSeq(std::vector<double> prefix, TailRule tail);

  double at(std::size_t n) const;
  const std::vector<double>& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

  bool operator==(const ParamSeq&) const = default;

 private:
  std::vector<double> prefix_;
  TailRule tail_;
};

inline double param_at(const ParamSeq& a, std::size_t n) { return a.at(n); }

/// Finite word over {-1, 0, 1}: the first `depth()` coordinates of a point of
/// the full shift space {-1,0,1}^N.
class TritPrefix {
 public:
  explicit TritPrefix(std::vector<std::int8_t> trits);

  std::size_t depth() const { return trits_.size(); }
  std::int8_t operator[](std::size_t i) const { return trits_[i]; }
  const std::vector<std::int8_t>& trits() const { return trits_; }

 private:
  std::vector<std::int8_t> trits_;
};

}  // namespace taulab
