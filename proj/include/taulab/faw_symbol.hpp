#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "taulab/measure.hpp"

namespace taulab {

/// Pointwise parameter data of the operator pair (J, T): two multiplication
/// symbols on [0,1], a 2x2 diagonal block, and the fixed block-swap structure
/// of the involution. The defining relations hold pointwise:
/// f1 + f2 = 1, both strictly inside (0,1), and the diagonal sums to 1.
struct FawSymbol {
  double q;
  std::function<double(double)> f1;
  std::function<double(double)> f2;
  std::array<double, 2> matrix_diag;
  std::string j_structure;
};

/// Builds the symbol pair from a probability measure supported in [0,1] and
/// q in (0,1):
///   f1(x) = (1 + exp(phi(x)))^-1,  f2(x) = (1 + exp(-phi(x)))^-1,
///   matrix_diag = ((1+q)^-1, (1+q^-1)^-1),
/// where phi is the quantile transform of mu.
FawSymbol build_faw_symbol(const Measure& mu, double q);

struct DomainViolation {
  std::string where;  // "f" for the function block, "matrix" for the diagonal
  double x;           // grid point for function-block entries, 0 otherwise
  std::string detail;
};

/// Outcome of checking the defining relations on a grid. Violations are data,
/// not exceptions.
struct DomainReport {
  std::vector<DomainViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Verifies at every grid point: f1, f2 in (0,1) strictly, f1 + f2 = 1 within
/// 1e-12; plus matrix_diag entries in (0,1) summing to 1 within 1e-12.
DomainReport check_domain_relations(const FawSymbol& s,
                                    std::span<const double> grid);

/// Default evaluation grid on [0,1]: n uniform points, the endpoints, and the
/// CDF images of the measure's breakpoints (where the quantile transform has
/// jumps or kinks).
std::vector<double> default_symbol_grid(const Measure& mu, std::size_t n);

}  // namespace taulab
