#include "taulab/faw_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "taulab/errors.hpp"

namespace taulab {

FawSymbol build_faw_symbol(const Measure& mu, double q) {
  if (!(q > 0.0 && q < 1.0))
    throw ValidationError("faw_symbol: q = " + std::to_string(q) +
                          " outside (0,1)");
  // Quantile range check: the transform must stay inside [0,1].
  if (mu.support_lo() < 0.0 || mu.support_hi() > 1.0)
    throw ValidationError("faw_symbol: measure support [" +
                          std::to_string(mu.support_lo()) + ", " +
                          std::to_string(mu.support_hi()) +
                          "] not contained in [0,1]");

  FawSymbol s;
  s.q = q;
  s.f1 = [mu](double x) { return 1.0 / (1.0 + std::exp(quantile(mu, x))); };
  s.f2 = [mu](double x) { return 1.0 / (1.0 + std::exp(-quantile(mu, x))); };
  s.matrix_diag = {1.0 / (1.0 + q), 1.0 / (1.0 + 1.0 / q)};
  s.j_structure = "swap-and-conjugate the two function components; J0 swaps e1,e2";
  return s;
}

namespace {

void check_unit_interval(DomainReport& report, const std::string& where,
                         double x, const char* name, double v) {
  if (!(v > 0.0 && v < 1.0))
    report.violations.push_back(
        {where, x, std::string(name) + " = " + std::to_string(v) +
                       " not strictly inside (0,1)"});
}

}  // namespace

DomainReport check_domain_relations(const FawSymbol& s,
                                    std::span<const double> grid) {
  if (grid.empty())
    throw ValidationError("check_domain_relations: empty grid");

  DomainReport report;
  for (double x : grid) {
    const double v1 = s.f1(x);
    const double v2 = s.f2(x);
    check_unit_interval(report, "f", x, "f1", v1);
    check_unit_interval(report, "f", x, "f2", v2);
    if (std::fabs(v1 + v2 - 1.0) > 1e-12)
      report.violations.push_back(
          {"f", x, "f1 + f2 = " + std::to_string(v1 + v2) +
                       " deviates from 1 beyond 1e-12"});
  }
  check_unit_interval(report, "matrix", 0.0, "diag[0]", s.matrix_diag[0]);
  check_unit_interval(report, "matrix", 0.0, "diag[1]", s.matrix_diag[1]);
  if (std::fabs(s.matrix_diag[0] + s.matrix_diag[1] - 1.0) > 1e-12)
    report.violations.push_back(
        {"matrix", 0.0,
         "diagonal sums to " +
             std::to_string(s.matrix_diag[0] + s.matrix_diag[1]) +
             ", expected 1 within 1e-12"});
  return report;
}

std::vector<double> default_symbol_grid(const Measure& mu, std::size_t n) {
  std::vector<double> grid;
  grid.reserve(n + 2 * mu.cdf().breakpoints().size() + 2);
  for (std::size_t i = 0; n >= 2 && i < n; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
  grid.push_back(0.0);
  grid.push_back(1.0);
  for (double b : mu.cdf().breakpoints()) {
    grid.push_back(std::clamp(cdf(mu, b), 0.0, 1.0));
    grid.push_back(std::clamp(cdf_left(mu, b), 0.0, 1.0));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace taulab
