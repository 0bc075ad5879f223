#pragma once

#include <string>
#include <vector>

#include "core/density.hpp"
#include "core/quadrature.hpp"

namespace lsilab {

struct SemigroupOptions {
  int slices = 32;  // Simpson slices over s in [0, t]; rounded up to even
  int points = kDefaultHermitePoints;
};

// P_t f(x) = E f(x + sqrt(t) Y), Y ~ gamma_n. P_0 f = f.
double heat_apply(const RelativeFunction& f, double t, const Vector& x,
                  int points = kDefaultHermitePoints);
// P_t (grad f)(x), using the analytic gradient of f.
Vector heat_apply_gradient(const RelativeFunction& f, double t, const Vector& x,
                           int points = kDefaultHermitePoints);

struct GradientCommuteReport {
  Vector fd_gradient;       // central differences of x -> P_t f(x), step 1e-5
  Vector heat_of_gradient;  // P_t grad f (x)
  double max_abs_diff = 0.0;
  bool agrees = false;      // max_abs_diff <= 1e-5
};

GradientCommuteReport heat_gradient_commute_check(const RelativeFunction& f, double t,
                                                  const Vector& x,
                                                  int points = kDefaultHermitePoints);

struct SemigroupRow {
  double s = 0.0;
  // P_s(|P_{t-s} grad f|^2 / P_{t-s} f)(x)
  double integrand = 0.0;
  // |P_t grad f|^2 / P_t f at x (lower Cauchy-Schwarz bound, constant in s)
  double reversed_integrand = 0.0;
  // P_t(|grad f|^2 / f)(x) (upper Cauchy-Schwarz bound, constant in s)
  double forward_integrand = 0.0;
};

struct SemigroupTrace {
  std::string f_digest;
  double t = 0.0;
  Vector x;
  // P_t(f log f) - P_t f log P_t f at x
  double identity_lhs = 0.0;
  // (1/2) int_0^t integrand(s) ds
  double production_integral = 0.0;
  double reversed_bound = 0.0;
  double forward_bound = 0.0;
  std::vector<SemigroupRow> rows;

  std::vector<double> s_grid() const;
  double identity_gap() const { return std::abs(identity_lhs - production_integral); }
  // Every row's integrand lies between its two bounds (relative slack tol).
  bool rows_sandwiched(double tol = 1e-9) const;
};

// Identity tolerance used by the checks below: 1e-4 (1 + |identity_lhs|).
double identity_tolerance(const SemigroupTrace& trace);

double reversed_bound(const RelativeFunction& f, double t, const Vector& x,
                      int points = kDefaultHermitePoints);
double forward_bound(const RelativeFunction& f, double t, const Vector& x,
                     int points = kDefaultHermitePoints);

SemigroupTrace interpolation_identity(const RelativeFunction& f, double t, const Vector& x,
                                      const SemigroupOptions& opts = {});

struct SandwichReport {
  SemigroupTrace trace;
  double functional_entropy = 0.0;  // Ent_gamma(f) from the functionals module
  bool lower_holds = false;         // reversed_bound <= Ent
  bool upper_holds = false;         // Ent <= forward_bound
  bool identity_matches = false;    // |Ent - identity_lhs| <= 1e-6
  bool integral_matches = false;    // identity_gap within identity_tolerance

  bool ok() const noexcept { return lower_holds && upper_holds && identity_matches && integral_matches; }
};

// Both Cauchy-Schwarz bounds at (t, x) = (1, 0).
SandwichReport sandwich_at_origin(const RelativeFunction& f, const SemigroupOptions& opts = {});

}  // namespace lsilab
