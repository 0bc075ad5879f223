#pragma once

#include <optional>

#include "core/density.hpp"
#include "core/quadrature.hpp"

namespace lsilab {

struct FunctionalValue {
  double value = 0.0;
  // |value at default resolution - value at 1.5x resolution|
  double estimated_error = 0.0;
};

struct MatrixValue {
  Matrix value;
  double estimated_error = 0.0;
};

// Resolution knobs shared by every functional. When `box` is set, Gaussian
// expectations of relative functions use a Gaussian-weighted Simpson rule on
// that box instead of Gauss-Hermite.
struct QuadratureOptions {
  int hermite_points = kDefaultHermitePoints;
  std::optional<Box> box;
  int box_points = 2001;
  // Trapezoid steps per smallest component standard deviation, used for
  // mixture entropy and Fisher information.
  double steps_per_sd = 4.0;

  QuadratureOptions refined() const;
};

// Which evaluation route a relative-function functional takes.
//   Analytic   closed forms only (exponential and Gaussian-ratio forms)
//   Quadrature always integrate numerically
//   Automatic  closed form when available
enum class Path { Automatic, Analytic, Quadrature };

// Gaussian expectations of a positive function f and its gradient:
//   mass          E f
//   entropy       Ent(f) = E f log f - E f log E f
//   mean_gradient E grad f
//   fisher        E |grad f|^2 / f
struct GammaMoments {
  double mass = 0.0;
  double entropy = 0.0;
  Vector mean_gradient;
  double fisher = 0.0;
  double estimated_error = 0.0;
  // Smallest and largest value of f seen at quadrature nodes (quadrature
  // path only; NaN on the analytic path).
  double min_value = 0.0;
  double max_value = 0.0;
};

GammaMoments gamma_moments(const RelativeFunction& f, const QuadratureOptions& opts = {},
                           Path path = Path::Automatic);
// Single-rule evaluation; estimated_error is zero.
GammaMoments gamma_moments_on(const RelativeFunction& f, const QuadratureRule& rule);

// Ent of f against the measure of `rule` (Gaussian or Lebesgue-on-box).
FunctionalValue relative_entropy(const RelativeFunction& f, const QuadratureRule& rule);
FunctionalValue relative_entropy(const RelativeFunction& f, const QuadratureOptions& opts = {});
// Ent of a grid field against Lebesgue measure on its box.
FunctionalValue relative_entropy(const GridField& g);

FunctionalValue shannon_entropy(const Density& g, const QuadratureOptions& opts = {});
FunctionalValue entropy_power(const Density& g, const QuadratureOptions& opts = {});
double entropy_power_from_entropy(double entropy, int n);

// Integral of the density under its default quadrature (1 for valid inputs).
double total_mass(const Density& g, const QuadratureOptions& opts = {});

Vector mean(const Density& g);
MatrixValue covariance(const Density& g);
MatrixValue fisher_matrix(const Density& g, const QuadratureOptions& opts = {});
FunctionalValue fisher_scalar(const Density& g, const QuadratureOptions& opts = {});

// Grid Fisher information through 4|grad sqrt g|^2; cross-check for the
// grad-log form used by fisher_matrix.
MatrixValue fisher_matrix_sqrt_form(const GridField& g);

// Masking threshold for Fisher integrands (relative to max g) and the mass
// the mask may discard before DegenerateSupport is raised.
inline constexpr double kFisherMaskRelative = 1e-12;
inline constexpr double kFisherMaskMass = 1e-6;

// Node budget for the mixture trapezoid rule.
inline constexpr std::size_t kMaxTrapezoidNodes = 8'000'000;

}  // namespace lsilab
