#include "core/catalog.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/isoperimetry.hpp"

namespace lsilab {

namespace {

Vector unit(int n, int axis) {
  Vector e = Vector::Zero(n);
  e(axis) = 1.0;
  return e;
}

RelativeFunction first_axis(int n, std::string name, double (*value)(double),
                            double (*derivative)(double)) {
  return RelativeFunction::analytic(
      n, std::move(name), [value](const Vector& x) { return value(x(0)); },
      [n, derivative](const Vector& x) { return Vector(derivative(x(0)) * unit(n, 0)); });
}

std::string ridge_name(const char* kind, const Vector& u, double b, double s) {
  std::ostringstream os;
  os << kind << "(u=[";
  for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? "," : "") << u(i);
  os << "],b=" << b << ",s=" << s << ")";
  return os.str();
}

}  // namespace

RelativeFunction named_function(const std::string& name, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (name == "one") {
    return RelativeFunction::analytic(
        n, "one", [](const Vector&) { return 1.0; },
        [n](const Vector&) { return Vector(Vector::Zero(n)); });
  }
  if (name == "exp") return RelativeFunction::exponential(unit(n, 0));
  if (name == "tanh") {
    return first_axis(
        n, "1+0.5tanh(x)", [](double x) { return 1.0 + 0.5 * std::tanh(x); },
        [](double x) {
          const double c = std::cosh(x);
          return 0.5 / (c * c);
        });
  }
  if (name == "quad") {
    return RelativeFunction::analytic(
        n, "1+0.25|x|^2", [](const Vector& x) { return 1.0 + 0.25 * x.squaredNorm(); },
        [](const Vector& x) { return Vector(0.5 * x); });
  }
  if (name == "sq") {
    return RelativeFunction::analytic(
        n, "1+|x|^2", [](const Vector& x) { return 1.0 + x.squaredNorm(); },
        [](const Vector& x) { return Vector(2.0 * x); });
  }
  if (name == "sin") {
    return first_axis(
        n, "1+0.5sin(x)", [](double x) { return 1.0 + 0.5 * std::sin(x); },
        [](double x) { return 0.5 * std::cos(x); });
  }
  if (name == "sin2") {
    return first_axis(
        n, "2+sin(x)", [](double x) { return 2.0 + std::sin(x); },
        [](double x) { return std::cos(x); });
  }
  fail(ErrorCode::InvalidArgument, "unknown function name: " + name);
}

std::vector<std::string> named_function_list() {
  return {"one", "exp", "tanh", "quad", "sq", "sin", "sin2"};
}

RelativeFunction halfspace_function(int n, double shift, double eps) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "smoothing width must be positive");
  auto f = probit_ridge(unit(n, 0), shift, eps);
  return f;
}

RelativeFunction probit_ridge(const Vector& direction, double offset, double scale) {
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::InvalidArgument, "scale must be positive");
  const int n = static_cast<int>(direction.size());
  return RelativeFunction::analytic(
      n, ridge_name("probit", direction, offset, scale),
      [direction, offset, scale](const Vector& x) {
        return gaussian_cdf((direction.dot(x) - offset) / scale);
      },
      [direction, offset, scale](const Vector& x) {
        return Vector(gaussian_pdf((direction.dot(x) - offset) / scale) / scale * direction);
      });
}

RelativeFunction logistic_ridge(const Vector& direction, double offset, double scale) {
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::InvalidArgument, "scale must be positive");
  const int n = static_cast<int>(direction.size());
  auto sigma = [direction, offset, scale](const Vector& x) {
    const double z = (direction.dot(x) - offset) / scale;
    return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  };
  return RelativeFunction::analytic(
      n, ridge_name("logistic", direction, offset, scale), sigma,
      [sigma, direction, scale](const Vector& x) {
        const double s = sigma(x);
        return Vector(s * (1.0 - s) / scale * direction);
      });
}

RelativeFunction derived_bobkov_function(const Density& g) {
  const auto k = covariance(g).value;
  const auto eig = eigen_symmetric(k);
  const Eigen::Index top = eig.values.size() - 1;
  Vector u = eig.vectors.col(top);
  // Fix the sign so the derivation is deterministic.
  Eigen::Index pivot = 0;
  u.cwiseAbs().maxCoeff(&pivot);
  if (u(pivot) < 0.0) u = -u;
  const double offset = u.dot(mean(g));
  const double scale = std::sqrt(eig.values(top));
  return probit_ridge(u, offset, scale);
}

}  // namespace lsilab
