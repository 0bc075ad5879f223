#include "core/isoperimetry.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace lsilab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Acklam's rational approximation to the normal quantile (relative error
// about 1.2e-9), used as the starting point for Newton polishing.
double quantile_seed(double t) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  if (t < low) {
    const double q = std::sqrt(-2.0 * std::log(t));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (t > 1.0 - low) {
    const double q = std::sqrt(-2.0 * std::log1p(-t));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = t - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double gaussian_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double gaussian_cdf(double x) noexcept { return 0.5 * std::erfc(-x * kInvSqrt2); }

double gaussian_quantile(double t) {
  require(std::isfinite(t) && t > 0.0 && t < 1.0, ErrorCode::OutOfRange,
          "quantile argument must lie in (0, 1)");
  double x = quantile_seed(t);
  for (int i = 0; i < 2; ++i) {
    const double density = gaussian_pdf(x);
    if (density <= 0.0) break;
    // Work with the smaller tail so the residual keeps its relative accuracy.
    const double residual = t < 0.5 ? gaussian_cdf(x) - t : (1.0 - t) - gaussian_cdf(-x);
    x -= residual / density;
  }
  return x;
}

double isoperimetric_I(double t) {
  require(std::isfinite(t) && t >= 0.0 && t <= 1.0, ErrorCode::OutOfRange,
          "isoperimetric profile is defined on [0, 1]");
  if (t == 0.0 || t == 1.0) return 0.0;
  return gaussian_pdf(gaussian_quantile(t));
}

QuadratureOptions bobkov_quadrature(int n) {
  require(n >= 1 && n <= 3, ErrorCode::UnsupportedDimension, "dimension must be 1, 2 or 3");
  QuadratureOptions q;
  const double half = n == 1 ? 10.0 : 8.0;
  q.box = Box{Vector::Constant(n, -half), Vector::Constant(n, half)};
  q.box_points = n == 1 ? 4001 : (n == 2 ? 641 : 121);
  return q;
}

InequalityReport check_bobkov(const RelativeFunction& f, const CheckOptions& opts) {
  require(f.kind() == RelativeFunction::Kind::Analytic || f.kind() == RelativeFunction::Kind::Grid,
          ErrorCode::UnsupportedRepresentation,
          "Bobkov check needs an analytic or grid function with values in [0, 1]");
  const auto m = gamma_moments(f, opts.quadrature, Path::Quadrature);
  require(m.min_value >= -kRangeTolerance && m.max_value <= 1.0 + kRangeTolerance,
          ErrorCode::RangeViolation, "function leaves [0, 1] at a quadrature node");
  const double mean = std::clamp(m.mass, 0.0, 1.0);
  const double rhs = isoperimetric_I(mean);
  // |I'(t)| = |Phi^{-1}(t)|.
  const double slope = (mean > 0.0 && mean < 1.0) ? std::abs(gaussian_quantile(mean)) : 0.0;
  const double err = m.estimated_error * (1.0 + slope);
  return make_report("bobkov", m.mean_gradient.norm(), rhs, err, f.name(), opts);
}

InequalityReport check_bobkov(const RelativeFunction& f) {
  CheckOptions opts;
  opts.quadrature = bobkov_quadrature(f.dim());
  return check_bobkov(f, opts);
}

}  // namespace lsilab
