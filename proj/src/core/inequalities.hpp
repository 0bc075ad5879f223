#pragma once

#include <optional>
#include <span>
#include <string>

#include "core/density.hpp"
#include "core/functionals.hpp"

namespace lsilab {

// One checker run. Every checker is oriented so that slack = rhs - lhs >= 0
// means the inequality holds.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  double tol = 0.0;
  std::string inputs;
  double estimated_error = 0.0;
};

// Tolerance floor; the default tolerance is kBaseTolerance plus ten times the
// estimated quadrature error of the report.
inline constexpr double kBaseTolerance = 1e-7;

struct CheckOptions {
  QuadratureOptions quadrature;
  Path path = Path::Automatic;
  // Replaces the default tolerance when set.
  std::optional<double> tol;
};

InequalityReport make_report(std::string name, double lhs, double rhs, double estimated_error,
                             std::string inputs, const CheckOptions& opts = {});

// 2 Ent(f) <= E |grad f|^2 / f
InequalityReport check_lsi_gross(const RelativeFunction& f, const CheckOptions& opts = {});
// |E grad f|^2 / E f <= 2 Ent(f)
InequalityReport check_reversed_lsi(const RelativeFunction& f, const CheckOptions& opts = {});
// -H(g) <= (n/2) log(J(g) / (2 pi e n))
InequalityReport check_euclidean_lsi(const Density& g, const CheckOptions& opts = {});
// n <= N J
InequalityReport check_nj(const Density& g, const CheckOptions& opts = {});
// 1 <= N |J_m|^{1/n}
InequalityReport check_njj(const Density& g, const CheckOptions& opts = {});
// N <= Tr K / n
InequalityReport check_entropy_trace(const Density& g, const CheckOptions& opts = {});
// H <= (n/2) log(2 pi e Tr K / n)
InequalityReport check_reversed_euclidean(const Density& g, const CheckOptions& opts = {});
// N <= |K|^{1/n}
InequalityReport check_max_entropy_det(const Density& g, const CheckOptions& opts = {});
// geometric mean <= arithmetic mean
InequalityReport check_amgm(std::span<const double> values, const CheckOptions& opts = {});
// AM-GM on the covariance spectrum: |K|^{1/n} <= Tr K / n
InequalityReport check_amgm_spectrum(const Density& g, const CheckOptions& opts = {});

RelativeFunction exp_witness(const Vector& slope);

}  // namespace lsilab
