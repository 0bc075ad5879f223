#include "core/semigroup.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/functionals.hpp"

namespace lsilab {

namespace {

struct HeatValue {
  double value = 0.0;
  Vector gradient;
};

// P_t f(x) and P_t grad f(x) in one pass over the rule.
HeatValue heat_pair(const RelativeFunction& f, double t, const Vector& x,
                    const QuadratureRule& rule) {
  if (t == 0.0) return {f.value(x), f.gradient(x)};
  const double scale = std::sqrt(t);
  HeatValue out{0.0, Vector::Zero(f.dim())};
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    const Vector y = x + scale * rule.nodes.col(k);
    out.value += rule.weights(k) * f.value(y);
    out.gradient += rule.weights(k) * f.gradient(y);
  }
  require(std::isfinite(out.value) && out.gradient.allFinite(), ErrorCode::DivergentIntegral,
          "heat semigroup integral diverges");
  return out;
}

template <typename Fn>
double heat_scalar(double t, const Vector& x, const QuadratureRule& rule, Fn fn) {
  if (t == 0.0) return fn(x);
  const double scale = std::sqrt(t);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    acc += rule.weights(k) * fn(Vector(x + scale * rule.nodes.col(k)));
  }
  require(std::isfinite(acc), ErrorCode::DivergentIntegral, "heat semigroup integral diverges");
  return acc;
}

void check_args(const RelativeFunction& f, double t, const Vector& x) {
  require(std::isfinite(t) && t >= 0.0, ErrorCode::InvalidArgument, "time must be >= 0");
  require(x.size() == f.dim(), ErrorCode::DimensionMismatch, "point dimension does not match function");
}

double fisher_density(const RelativeFunction& f, const Vector& y) {
  const double v = f.value(y);
  require(v > 0.0, ErrorCode::NonPositiveInput, "function must be positive");
  return f.gradient(y).squaredNorm() / v;
}

}  // namespace

double heat_apply(const RelativeFunction& f, double t, const Vector& x, int points) {
  check_args(f, t, x);
  if (t == 0.0) return f.value(x);
  const auto rule = gauss_hermite_rule(points, f.dim());
  return heat_scalar(t, x, rule, [&](const Vector& y) { return f.value(y); });
}

Vector heat_apply_gradient(const RelativeFunction& f, double t, const Vector& x, int points) {
  check_args(f, t, x);
  return heat_pair(f, t, x, gauss_hermite_rule(points, f.dim())).gradient;
}

GradientCommuteReport heat_gradient_commute_check(const RelativeFunction& f, double t,
                                                  const Vector& x, int points) {
  check_args(f, t, x);
  const double h = 1e-5;
  GradientCommuteReport r;
  r.fd_gradient.resize(f.dim());
  for (int d = 0; d < f.dim(); ++d) {
    Vector plus = x;
    Vector minus = x;
    plus(d) += h;
    minus(d) -= h;
    r.fd_gradient(d) = (heat_apply(f, t, plus, points) - heat_apply(f, t, minus, points)) / (2.0 * h);
  }
  r.heat_of_gradient = heat_apply_gradient(f, t, x, points);
  r.max_abs_diff = (r.fd_gradient - r.heat_of_gradient).cwiseAbs().maxCoeff();
  r.agrees = r.max_abs_diff <= 1e-5;
  return r;
}

double reversed_bound(const RelativeFunction& f, double t, const Vector& x, int points) {
  check_args(f, t, x);
  const auto p = heat_pair(f, t, x, gauss_hermite_rule(points, f.dim()));
  return 0.5 * t * p.gradient.squaredNorm() / p.value;
}

double forward_bound(const RelativeFunction& f, double t, const Vector& x, int points) {
  check_args(f, t, x);
  const auto rule = gauss_hermite_rule(points, f.dim());
  return 0.5 * t * heat_scalar(t, x, rule, [&](const Vector& y) { return fisher_density(f, y); });
}

std::vector<double> SemigroupTrace::s_grid() const {
  std::vector<double> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r.s);
  return s;
}

bool SemigroupTrace::rows_sandwiched(double tol) const {
  for (const auto& r : rows) {
    const double scale = tol * (1.0 + std::abs(r.forward_integrand));
    if (r.integrand < r.reversed_integrand - scale) return false;
    if (r.integrand > r.forward_integrand + scale) return false;
  }
  return true;
}

double identity_tolerance(const SemigroupTrace& trace) {
  return 1e-4 * (1.0 + std::abs(trace.identity_lhs));
}

SemigroupTrace interpolation_identity(const RelativeFunction& f, double t, const Vector& x,
                                      const SemigroupOptions& opts) {
  check_args(f, t, x);
  require(t > 0.0, ErrorCode::InvalidArgument, "interpolation identity needs t > 0");
  require(opts.slices >= 2, ErrorCode::InvalidArgument, "need at least 2 Simpson slices");
  const auto rule = gauss_hermite_rule(opts.points, f.dim());

  SemigroupTrace trace;
  trace.f_digest = f.name();
  trace.t = t;
  trace.x = x;

  const auto top = heat_pair(f, t, x, rule);
  require(top.value > 0.0, ErrorCode::NonPositiveInput, "P_t f must be positive");
  const double p_flogf = heat_scalar(t, x, rule, [&](const Vector& y) { return xlogx(f.value(y)); });
  trace.identity_lhs = p_flogf - top.value * std::log(top.value);

  const double reversed = top.gradient.squaredNorm() / top.value;
  const double forward = heat_scalar(t, x, rule, [&](const Vector& y) { return fisher_density(f, y); });

  const int slices = opts.slices % 2 == 0 ? opts.slices : opts.slices + 1;
  trace.rows.resize(slices + 1);
  for (int i = 0; i <= slices; ++i) {
    const double s = t * i / slices;
    const double inner_t = i == slices ? 0.0 : t - s;
    // s = t: P_0 is the identity, so the inner expression is |grad f|^2 / f.
    const double integrand = heat_scalar(s, x, rule, [&](const Vector& y) {
      const auto inner = heat_pair(f, inner_t, y, rule);
      require(inner.value > 0.0, ErrorCode::NonPositiveInput, "P_{t-s} f must be positive");
      return inner.gradient.squaredNorm() / inner.value;
    });
    trace.rows[i] = {s, integrand, reversed, forward};
  }

  double acc = 0.0;
  for (int i = 0; i <= slices; ++i) {
    const double c = (i == 0 || i == slices) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += c * trace.rows[i].integrand;
  }
  trace.production_integral = 0.5 * acc * (t / slices) / 3.0;
  trace.reversed_bound = 0.5 * t * reversed;
  trace.forward_bound = 0.5 * t * forward;
  return trace;
}

SandwichReport sandwich_at_origin(const RelativeFunction& f, const SemigroupOptions& opts) {
  SandwichReport r;
  r.trace = interpolation_identity(f, 1.0, Vector::Zero(f.dim()), opts);
  r.functional_entropy = relative_entropy(f, gauss_hermite_rule(opts.points, f.dim())).value;
  const double tol = identity_tolerance(r.trace);
  r.lower_holds = r.trace.reversed_bound <= r.functional_entropy + tol;
  r.upper_holds = r.functional_entropy <= r.trace.forward_bound + tol;
  r.identity_matches = std::abs(r.functional_entropy - r.trace.identity_lhs) <= 1e-6;
  r.integral_matches = r.trace.identity_gap() <= tol;
  return r;
}

}  // namespace lsilab
