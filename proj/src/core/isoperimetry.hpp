#pragma once

#include "core/density.hpp"
#include "core/inequalities.hpp"

namespace lsilab {

double gaussian_pdf(double x) noexcept;
// Phi(x) = gamma((-inf, x]), via erfc.
double gaussian_cdf(double x) noexcept;
// Phi^{-1}(t) for t in (0, 1); OutOfRange otherwise.
double gaussian_quantile(double t);
// I = phi o Phi^{-1} on [0, 1], extended by I(0) = I(1) = 0.
double isoperimetric_I(double t);

// Function object bundling the profile, for callers that want one handle.
struct IsoperimetricProfile {
  double cdf(double x) const noexcept { return gaussian_cdf(x); }
  double quantile(double t) const { return gaussian_quantile(t); }
  double pdf(double x) const noexcept { return gaussian_pdf(x); }
  double operator()(double t) const { return isoperimetric_I(t); }
};

// Quadrature used by check_bobkov when none is given: Gaussian-weighted
// Simpson on [-10, 10] (n = 1) or [-8, 8]^n, fine enough for steep [0,1]-valued profiles.
QuadratureOptions bobkov_quadrature(int n);

// |E grad f| <= I(E f) for f with values in [0, 1].
InequalityReport check_bobkov(const RelativeFunction& f, const CheckOptions& opts);
InequalityReport check_bobkov(const RelativeFunction& f);

inline constexpr double kRangeTolerance = 1e-12;

}  // namespace lsilab
