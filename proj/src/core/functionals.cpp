#include "core/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace lsilab {

QuadratureOptions QuadratureOptions::refined() const {
  QuadratureOptions r = *this;
  r.hermite_points = std::min(256, (3 * hermite_points + 1) / 2);
  r.box_points = (3 * box_points + 1) / 2;
  r.steps_per_sd = 1.5 * steps_per_sd;
  return r;
}

namespace {

// ------------------------------------------------------------ grid helpers

// Derivative of u along `axis` at `flat`, sixth order in the interior.
double grid_derivative(const GridField& g, const std::vector<double>& u, std::size_t flat,
                       int axis) {
  const auto idx = g.unflatten(flat);
  const int s = g.shape()[axis];
  const int i = idx[axis];
  const double h = g.spacing(axis);
  auto at = [&](int j) {
    auto k = idx;
    k[axis] = j;
    return u[g.flatten(k)];
  };
  if (i >= 3 && i <= s - 4) {
    return (at(i + 3) - 9.0 * at(i + 2) + 45.0 * at(i + 1) - 45.0 * at(i - 1) + 9.0 * at(i - 2) -
            at(i - 3)) / (60.0 * h);
  }
  if (i >= 2 && i <= s - 3) {
    return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
  }
  if (i >= 1 && i <= s - 2) return (at(i + 1) - at(i - 1)) / (2.0 * h);
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  return (3.0 * at(s - 1) - 4.0 * at(s - 2) + at(s - 3)) / (2.0 * h);
}

bool stencil_clear(const GridField& g, std::size_t flat, int axis, double threshold) {
  const auto idx = g.unflatten(flat);
  const int s = g.shape()[axis];
  for (int off = -3; off <= 3; ++off) {
    const int j = idx[axis] + off;
    if (j < 0 || j >= s) continue;
    auto k = idx;
    k[axis] = j;
    if (g.values()[g.flatten(k)] < threshold) return false;
  }
  return true;
}

// Every-other-point subgrid, used as the coarse resolution for error
// estimates. Empty when the shape does not allow it.
std::optional<GridField> coarsen(const GridField& g) {
  std::vector<int> shape(g.dim());
  for (int d = 0; d < g.dim(); ++d) {
    if (g.shape()[d] % 2 == 0 || (g.shape()[d] + 1) / 2 < kMinGridPoints) return std::nullopt;
    shape[d] = (g.shape()[d] + 1) / 2;
  }
  std::size_t count = 1;
  for (int s : shape) count *= static_cast<std::size_t>(s);
  GridField frame(g.lo(), g.hi(), shape, std::vector<double>(count, 0.0));
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto idx = frame.unflatten(k);
    for (int& i : idx) i *= 2;
    values[k] = g.values()[g.flatten(idx)];
  }
  return frame.with_values(std::move(values));
}

void require_normalized(const GridField& g) {
  const double m = g.mass();
  require(m > 0.0, ErrorCode::ZeroMass, "grid density has zero mass");
  require(std::abs(m - 1.0) <= 1e-6, ErrorCode::InvalidArgument,
          "grid density is not normalized; call normalize first");
}

double grid_entropy(const GridField& g) {
  double acc = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) acc -= xlogx(g.values()[k]) * g.weight(k);
  return acc;
}

struct GridMoments {
  Vector mean;
  Matrix cov;
};

GridMoments grid_moments(const GridField& g) {
  const int n = g.dim();
  double mass = 0.0;
  Vector first = Vector::Zero(n);
  Matrix second = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double v = g.values()[k] * g.weight(k);
    if (v == 0.0) continue;
    const Vector x = g.node(k);
    mass += v;
    first += v * x;
    second += v * x * x.transpose();
  }
  require(mass > 0.0, ErrorCode::ZeroMass, "grid density has zero mass");
  const Vector m = first / mass;
  return {m, symmetrize(second / mass - m * m.transpose())};
}

Matrix grid_fisher(const GridField& g) {
  const int n = g.dim();
  const double top = *std::max_element(g.values().begin(), g.values().end());
  require(top > 0.0, ErrorCode::ZeroMass, "grid density has zero mass");
  const double threshold = kFisherMaskRelative * top;
  std::vector<double> logs(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) logs[k] = safe_log(g.values()[k]);

  Matrix acc = Matrix::Zero(n, n);
  double masked = 0.0;
  Vector s(n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double v = g.values()[k];
    if (v < threshold) {
      masked += v * g.weight(k);
      continue;
    }
    for (int d = 0; d < n; ++d) {
      s(d) = stencil_clear(g, k, d, threshold) ? grid_derivative(g, logs, k, d)
                                               : grid_derivative(g, g.values(), k, d) / v;
    }
    acc += v * g.weight(k) * s * s.transpose();
  }
  require(masked <= kFisherMaskMass, ErrorCode::DegenerateSupport,
          "masked region carries more than 1e-6 of the mass");
  return symmetrize(acc);
}

// ------------------------------------------------------- mixture helpers

template <typename Fn>
void for_each_mixture_node(const MixtureSpec& mix, int points, Fn fn) {
  const auto standard = gauss_hermite_rule(points, mix.dim());
  for (std::size_t c = 0; c < mix.size(); ++c) {
    const auto& comp = mix.components()[c];
    const auto rule = push_forward(standard, comp.mean(), comp.cov_sqrt());
    for (Eigen::Index k = 0; k < rule.size(); ++k) {
      fn(rule.nodes.col(k), mix.weights()[c] * rule.weights(k));
    }
  }
}

// Trapezoid rule over default_box with spacing (smallest component standard
// deviation) / steps_per_sd on every axis. The integrands decay like the
// density and are analytic, so the rule converges geometrically in the step;
// per-component Gauss-Hermite converges much more slowly once components
// overlap. Calls fn(x, mass weight, log g(x)).
template <typename Fn>
void for_each_trapezoid_node(const MixtureSpec& mix, double steps_per_sd, Fn fn) {
  const int n = mix.dim();
  double sd_min = std::numeric_limits<double>::infinity();
  for (const auto& c : mix.components()) {
    sd_min = std::min(sd_min, std::sqrt(eigen_symmetric(c.cov()).values(0)));
  }
  const Box box = default_box(Density(mix));
  std::vector<int> counts(static_cast<std::size_t>(n));
  Vector step(n);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) {
    const double width = box.hi(d) - box.lo(d);
    counts[static_cast<std::size_t>(d)] = static_cast<int>(std::ceil(width * steps_per_sd / sd_min)) + 1;
    step(d) = width / (counts[static_cast<std::size_t>(d)] - 1);
    total *= static_cast<std::size_t>(counts[static_cast<std::size_t>(d)]);
  }
  require(total <= kMaxTrapezoidNodes, ErrorCode::UnsupportedRepresentation,
          "mixture too anisotropic for the trapezoid rule");
  const double cell = step.prod();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vector x(n);
  for (std::size_t k = 0; k < total; ++k) {
    double w = cell;
    for (int d = 0; d < n; ++d) {
      const int i = idx[static_cast<std::size_t>(d)];
      x(d) = box.lo(d) + i * step(d);
      if (i == 0 || i == counts[static_cast<std::size_t>(d)] - 1) w *= 0.5;
    }
    const double lp = mix.log_pdf(x);
    fn(x, w * std::exp(lp), lp);
    for (int d = n - 1; d >= 0; --d) {
      if (++idx[static_cast<std::size_t>(d)] < counts[static_cast<std::size_t>(d)]) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
  }
}

double mixture_entropy(const MixtureSpec& mix, double steps_per_sd) {
  double acc = 0.0;
  for_each_trapezoid_node(mix, steps_per_sd, [&](const Vector&, double w, double lp) {
    if (w > 0.0) acc -= w * lp;
  });
  return acc;
}

double mixture_mass(const MixtureSpec& mix, int points) {
  // Integral of the density: sum of weights of each component rule.
  double acc = 0.0;
  for_each_mixture_node(mix, points, [&](const auto&, double w) { acc += w; });
  return acc;
}

Matrix mixture_fisher(const MixtureSpec& mix, double steps_per_sd) {
  const int n = mix.dim();
  std::vector<Vector> xs;
  std::vector<double> ws;
  std::vector<double> logs;
  for_each_trapezoid_node(mix, steps_per_sd, [&](const Vector& x, double w, double lp) {
    xs.emplace_back(x);
    ws.push_back(w);
    logs.push_back(lp);
  });
  const double top = *std::max_element(logs.begin(), logs.end());
  const double log_threshold = top + std::log(kFisherMaskRelative);
  Matrix acc = Matrix::Zero(n, n);
  double masked = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (logs[i] < log_threshold) {
      masked += ws[i];
      continue;
    }
    const Vector s = mix.score(xs[i]);
    acc += ws[i] * s * s.transpose();
  }
  require(masked <= kFisherMaskMass, ErrorCode::DegenerateSupport,
          "masked region carries more than 1e-6 of the mass");
  return symmetrize(acc);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// ------------------------------------------------ relative-function helpers

// Accumulates Gaussian expectations given per-node tilted weights
// T = f d(gamma), log f and grad log f.
struct MomentAccumulator {
  explicit MomentAccumulator(int n) : mean_gradient(Vector::Zero(n)) {}

  void add(double tilted, double log_f, const Vector& log_grad) {
    if (tilted == 0.0) return;
    mass += tilted;
    weighted_log += tilted * log_f;
    mean_gradient += tilted * log_grad;
    fisher += tilted * log_grad.squaredNorm();
  }

  GammaMoments finish() const {
    require(mass > 0.0 && std::isfinite(mass), ErrorCode::ZeroMass,
            "function has zero Gaussian mass");
    GammaMoments m;
    m.mass = mass;
    m.entropy = weighted_log - mass * std::log(mass);
    m.mean_gradient = mean_gradient;
    m.fisher = fisher;
    m.min_value = min_value;
    m.max_value = max_value;
    return m;
  }

  void observe(double value) {
    min_value = std::min(min_value, value);
    max_value = std::max(max_value, value);
  }

  double mass = 0.0;
  double weighted_log = 0.0;
  Vector mean_gradient;
  double fisher = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
};

// f and grad f at x without going through the log form, so that zeros of f
// (allowed for [0,1]-valued test functions) stay finite.
void add_plain_node(MomentAccumulator& acc, const RelativeFunction& f, const Vector& x,
                    double weight) {
  require(f.in_domain(x), ErrorCode::OutOfDomain, "quadrature node outside function domain");
  const double v = f.value(x);
  require(std::isfinite(v) && v >= 0.0, ErrorCode::DivergentIntegral,
          "function value is negative or not finite at a quadrature node");
  acc.observe(v);
  if (v == 0.0) return;
  const Vector grad = f.gradient(x);
  acc.add(weight * v, std::log(v), grad / v);
}

GammaMoments moments_on_rule(const RelativeFunction& f, const QuadratureRule& rule) {
  require(rule.dim() == f.dim(), ErrorCode::DimensionMismatch,
          "rule dimension does not match function");
  MomentAccumulator acc(f.dim());
  if (rule.measure == Measure::Gaussian) {
    for (Eigen::Index k = 0; k < rule.size(); ++k) {
      add_plain_node(acc, f, rule.nodes.col(k), rule.weights(k));
    }
  } else {
    const double log_norm = -0.5 * f.dim() * std::log(2.0 * kPi);
    for (Eigen::Index k = 0; k < rule.size(); ++k) {
      const Vector x = rule.nodes.col(k);
      add_plain_node(acc, f, x, rule.weights(k) * std::exp(log_norm - 0.5 * x.squaredNorm()));
    }
  }
  return acc.finish();
}

GammaMoments moments_ratio(const RelativeFunction& f, double steps_per_sd) {
  // f d(gamma) = h dx: integrate log f and its gradient against h.
  const auto mix = f.base_density().as_mixture();
  MomentAccumulator acc(f.dim());
  for_each_trapezoid_node(mix, steps_per_sd, [&](const Vector& x, double w, double) {
    if (w > 0.0) acc.add(w, f.log_value(x), f.log_gradient(x));
  });
  auto m = acc.finish();
  m.min_value = m.max_value = std::numeric_limits<double>::quiet_NaN();
  return m;
}

GammaMoments moments_grid(const GridField& field) {
  const int n = field.dim();
  std::vector<double> logs(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) logs[k] = safe_log(field.values()[k]);
  const double log_norm = -0.5 * n * std::log(2.0 * kPi);
  MomentAccumulator acc(n);
  Vector s(n);
  for (std::size_t k = 0; k < field.size(); ++k) {
    const Vector x = field.node(k);
    const double v = field.values()[k];
    acc.observe(v);
    for (int d = 0; d < n; ++d) s(d) = grid_derivative(field, logs, k, d);
    acc.add(field.weight(k) * v * std::exp(log_norm - 0.5 * x.squaredNorm()), logs[k], s);
  }
  return acc.finish();
}

std::optional<GammaMoments> moments_closed_form(const RelativeFunction& f) {
  const int n = f.dim();
  if (f.kind() == RelativeFunction::Kind::Exponential) {
    // f = e^{a.x+c}: E f = e^{c+|a|^2/2} =: M, f d(gamma) = M N(a, I).
    const Vector& a = f.slope();
    const double a2 = a.squaredNorm();
    const double mass = std::exp(f.offset() + 0.5 * a2);
    GammaMoments m;
    m.mass = mass;
    m.entropy = 0.5 * mass * a2;
    m.mean_gradient = mass * a;
    m.fisher = mass * a2;
    m.min_value = m.max_value = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  if (f.kind() == RelativeFunction::Kind::GaussianRatio && f.base_density().is_gaussian()) {
    // grad log f = -P(x-m) + x = (I-P)(x-m) + m under h = N(m, K).
    const auto& h = f.base_density().gaussian();
    const Matrix proj = Matrix::Identity(n, n) - h.precision();
    const double entropy_h = 0.5 * n * std::log(kTwoPiE) + 0.5 * h.log_det();
    GammaMoments m;
    m.mass = 1.0;
    m.entropy = -entropy_h + 0.5 * n * std::log(2.0 * kPi) +
                0.5 * (h.cov().trace() + h.mean().squaredNorm());
    m.mean_gradient = h.mean();
    m.fisher = (proj * h.cov() * proj.transpose()).trace() + h.mean().squaredNorm();
    m.min_value = m.max_value = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  return std::nullopt;
}

GammaMoments moments_numeric(const RelativeFunction& f, const QuadratureOptions& opts) {
  switch (f.kind()) {
    case RelativeFunction::Kind::GaussianRatio:
      return moments_ratio(f, opts.steps_per_sd);
    case RelativeFunction::Kind::Grid:
      return moments_grid(f.grid());
    default:
      break;
  }
  if (opts.box) {
    return moments_on_rule(f, gaussian_weighted(box_rule(opts.box->lo, opts.box->hi, opts.box_points)));
  }
  return moments_on_rule(f, gauss_hermite_rule(opts.hermite_points, f.dim()));
}

double moments_gap(const GammaMoments& a, const GammaMoments& b) {
  double gap = std::max({std::abs(a.mass - b.mass), std::abs(a.entropy - b.entropy),
                         std::abs(a.fisher - b.fisher)});
  if (a.mean_gradient.size() == b.mean_gradient.size()) {
    gap = std::max(gap, (a.mean_gradient - b.mean_gradient).cwiseAbs().maxCoeff());
  }
  return gap;
}

}  // namespace

// ------------------------------------------------------------- public API

GammaMoments gamma_moments(const RelativeFunction& f, const QuadratureOptions& opts, Path path) {
  if (path != Path::Quadrature) {
    if (auto closed = moments_closed_form(f)) return *closed;
    require(path == Path::Automatic, ErrorCode::UnsupportedRepresentation,
            "no closed form for " + f.name());
  }
  GammaMoments base = moments_numeric(f, opts);
  if (f.kind() == RelativeFunction::Kind::Grid) {
    if (auto coarse = coarsen(f.grid())) {
      base.estimated_error = moments_gap(base, moments_grid(*coarse));
    }
    return base;
  }
  base.estimated_error = moments_gap(base, moments_numeric(f, opts.refined()));
  return base;
}

GammaMoments gamma_moments_on(const RelativeFunction& f, const QuadratureRule& rule) {
  return moments_on_rule(f, rule);
}

FunctionalValue relative_entropy(const RelativeFunction& f, const QuadratureRule& rule) {
  if (rule.measure == Measure::Gaussian) return {moments_on_rule(f, rule).entropy, 0.0};
  double mass = 0.0;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    const double v = f.value(rule.nodes.col(k));
    require(v >= 0.0, ErrorCode::InvalidArgument, "function must be non-negative");
    mass += rule.weights(k) * v;
    acc += rule.weights(k) * xlogx(v);
  }
  require(mass > 0.0, ErrorCode::ZeroMass, "function has zero mass");
  return {acc - mass * std::log(mass), 0.0};
}

FunctionalValue relative_entropy(const RelativeFunction& f, const QuadratureOptions& opts) {
  const auto m = gamma_moments(f, opts, Path::Quadrature);
  return {m.entropy, m.estimated_error};
}

FunctionalValue relative_entropy(const GridField& g) {
  auto ent = [](const GridField& field) {
    double acc = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) acc += xlogx(field.values()[k]) * field.weight(k);
    const double mass = field.mass();
    require(mass > 0.0, ErrorCode::ZeroMass, "grid field has zero mass");
    return acc - mass * std::log(mass);
  };
  FunctionalValue out{ent(g), 0.0};
  if (auto coarse = coarsen(g)) out.estimated_error = std::abs(out.value - ent(*coarse));
  return out;
}

FunctionalValue shannon_entropy(const Density& g, const QuadratureOptions& opts) {
  if (g.is_gaussian()) {
    const auto& s = g.gaussian();
    return {0.5 * s.dim() * std::log(kTwoPiE) + 0.5 * s.log_det(), 0.0};
  }
  if (g.is_mixture()) {
    const double v = mixture_entropy(g.mixture(), opts.steps_per_sd);
    const double r = mixture_entropy(g.mixture(), opts.refined().steps_per_sd);
    return {v, std::abs(v - r)};
  }
  const auto& field = g.grid();
  require_normalized(field);
  FunctionalValue out{grid_entropy(field), 0.0};
  if (auto coarse = coarsen(field)) out.estimated_error = std::abs(out.value - grid_entropy(*coarse));
  return out;
}

double entropy_power_from_entropy(double entropy, int n) {
  return std::exp(2.0 * entropy / n) / kTwoPiE;
}

FunctionalValue entropy_power(const Density& g, const QuadratureOptions& opts) {
  const auto h = shannon_entropy(g, opts);
  const double n = g.dim();
  const double value = entropy_power_from_entropy(h.value, g.dim());
  return {value, value * (2.0 / n) * h.estimated_error};
}

double total_mass(const Density& g, const QuadratureOptions& opts) {
  if (g.is_grid()) return g.grid().mass();
  return mixture_mass(g.as_mixture(), opts.hermite_points);
}

Vector mean(const Density& g) {
  if (g.is_grid()) return grid_moments(g.grid()).mean;
  const auto mix = g.as_mixture();
  Vector m = Vector::Zero(g.dim());
  for (std::size_t k = 0; k < mix.size(); ++k) m += mix.weights()[k] * mix.components()[k].mean();
  return m;
}

MatrixValue covariance(const Density& g) {
  if (g.is_gaussian()) return {g.gaussian().cov(), 0.0};
  if (g.is_mixture()) {
    const auto& mix = g.mixture();
    const Vector m = mean(g);
    Matrix cov = Matrix::Zero(g.dim(), g.dim());
    for (std::size_t k = 0; k < mix.size(); ++k) {
      const auto& c = mix.components()[k];
      const Vector d = c.mean() - m;
      cov += mix.weights()[k] * (c.cov() + d * d.transpose());
    }
    return {symmetrize(cov), 0.0};
  }
  const auto& field = g.grid();
  MatrixValue out{grid_moments(field).cov, 0.0};
  if (auto coarse = coarsen(field)) out.estimated_error = max_abs(out.value - grid_moments(*coarse).cov);
  return out;
}

MatrixValue fisher_matrix(const Density& g, const QuadratureOptions& opts) {
  if (g.is_gaussian()) return {g.gaussian().precision(), 0.0};
  if (g.is_mixture()) {
    const Matrix v = mixture_fisher(g.mixture(), opts.steps_per_sd);
    const Matrix r = mixture_fisher(g.mixture(), opts.refined().steps_per_sd);
    return {v, max_abs(v - r)};
  }
  const auto& field = g.grid();
  require_normalized(field);
  MatrixValue out{grid_fisher(field), 0.0};
  if (auto coarse = coarsen(field)) out.estimated_error = max_abs(out.value - grid_fisher(*coarse));
  return out;
}

FunctionalValue fisher_scalar(const Density& g, const QuadratureOptions& opts) {
  const auto m = fisher_matrix(g, opts);
  return {m.value.trace(), m.estimated_error * g.dim()};
}

MatrixValue fisher_matrix_sqrt_form(const GridField& g) {
  const int n = g.dim();
  std::vector<double> roots(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) roots[k] = std::sqrt(g.values()[k]);
  Matrix acc = Matrix::Zero(n, n);
  Vector s(n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int d = 0; d < n; ++d) s(d) = grid_derivative(g, roots, k, d);
    acc += 4.0 * g.weight(k) * s * s.transpose();
  }
  return {symmetrize(acc), 0.0};
}

}  // namespace lsilab
