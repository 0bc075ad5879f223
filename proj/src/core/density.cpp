#include "core/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace lsilab {

// ---------------------------------------------------------------- Gaussian

GaussianSpec::GaussianSpec(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto n = mean_.size();
  require(n >= 1, ErrorCode::InvalidArgument, "Gaussian dimension must be >= 1");
  require(cov_.rows() == n && cov_.cols() == n, ErrorCode::DimensionMismatch,
          "covariance shape does not match mean");
  require(mean_.allFinite() && cov_.allFinite(), ErrorCode::InvalidArgument,
          "Gaussian parameters must be finite");
  require(is_symmetric(cov_), ErrorCode::InvalidArgument, "covariance is not symmetric");
  cov_ = symmetrize(cov_);
  const auto eig = eigen_symmetric(cov_);
  require(eig.values.minCoeff() > kEpsDet, ErrorCode::SingularCovariance,
          "covariance eigenvalues must exceed 1e-10");
  precision_ = symmetrize(eig.vectors * eig.values.cwiseInverse().asDiagonal() *
                          eig.vectors.transpose());
  cov_sqrt_ = symmetrize(eig.vectors * eig.values.cwiseSqrt().asDiagonal() *
                         eig.vectors.transpose());
  log_det_ = eig.values.array().log().sum();
  log_norm_ = -0.5 * (static_cast<double>(n) * std::log(2.0 * kPi) + log_det_);
}

GaussianSpec GaussianSpec::standard(int n) {
  return GaussianSpec(Vector::Zero(n), Matrix::Identity(n, n));
}

double GaussianSpec::log_pdf(const Vector& x) const {
  // Hot path of every quadrature; written out to avoid temporaries.
  const Eigen::Index n = mean_.size();
  double q = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double di = x(i) - mean_(i);
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) row += precision_(i, j) * (x(j) - mean_(j));
    q += di * row;
  }
  return log_norm_ - 0.5 * q;
}

double GaussianSpec::pdf(const Vector& x) const { return std::exp(log_pdf(x)); }

Vector GaussianSpec::score(const Vector& x) const { return -(precision_ * (x - mean_)); }

// ----------------------------------------------------------------- Mixture

MixtureSpec::MixtureSpec(std::vector<double> weights, std::vector<GaussianSpec> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  require(!components_.empty(), ErrorCode::InvalidArgument, "mixture needs a component");
  require(weights_.size() == components_.size(), ErrorCode::InvalidArgument,
          "mixture weight and component counts differ");
  double total = 0.0;
  for (double w : weights_) {
    require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument,
            "mixture weights must be positive");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "mixture weights must sum to 1");
  const int n = components_.front().dim();
  for (const auto& c : components_) {
    require(c.dim() == n, ErrorCode::DimensionMismatch, "mixture components differ in dimension");
  }
}

namespace {

// log sum_k w_k N_k(x), also returning the per-component log terms.
double mixture_log_terms(const MixtureSpec& m, const Vector& x, std::vector<double>& terms) {
  terms.resize(m.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m.size(); ++k) {
    terms[k] = std::log(m.weights()[k]) + m.components()[k].log_pdf(x);
    top = std::max(top, terms[k]);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

}  // namespace

double MixtureSpec::log_pdf(const Vector& x) const {
  thread_local std::vector<double> terms;
  return mixture_log_terms(*this, x, terms);
}

double MixtureSpec::pdf(const Vector& x) const { return std::exp(log_pdf(x)); }

Vector MixtureSpec::score(const Vector& x) const {
  thread_local std::vector<double> terms;
  const double total = mixture_log_terms(*this, x, terms);
  Vector out = Vector::Zero(dim());
  for (std::size_t k = 0; k < size(); ++k) {
    out += std::exp(terms[k] - total) * components_[k].score(x);
  }
  return out;
}

// -------------------------------------------------------------------- Grid

GridField::GridField(Vector lo, Vector hi, std::vector<int> shape, std::vector<double> values)
    : lo_(std::move(lo)), hi_(std::move(hi)), shape_(std::move(shape)), values_(std::move(values)) {
  const int n = static_cast<int>(shape_.size());
  require(n >= 1 && n <= kMaxGridDim, ErrorCode::UnsupportedDimension,
          "grid dimension must be 1, 2 or 3");
  require(lo_.size() == n && hi_.size() == n, ErrorCode::DimensionMismatch,
          "grid box corners do not match shape");
  std::size_t count = 1;
  for (int d = 0; d < n; ++d) {
    require(shape_[d] >= kMinGridPoints, ErrorCode::InvalidArgument,
            "grid needs at least 8 points per axis");
    require(std::isfinite(lo_(d)) && std::isfinite(hi_(d)) && hi_(d) > lo_(d),
            ErrorCode::InvalidArgument, "grid box must be non-empty and finite");
    count *= static_cast<std::size_t>(shape_[d]);
  }
  require(count == values_.size(), ErrorCode::InvalidArgument,
          "grid value count does not match shape");
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument,
            "grid values must be finite and non-negative");
  }
}

double GridField::spacing(int axis) const {
  return (hi_(axis) - lo_(axis)) / (shape_[axis] - 1);
}

double GridField::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim(); ++d) v *= spacing(d);
  return v;
}

bool GridField::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int d = 0; d < dim(); ++d) {
    const double slack = 1e-12 * (hi_(d) - lo_(d));
    if (x(d) < lo_(d) - slack || x(d) > hi_(d) + slack) return false;
  }
  return true;
}

std::vector<int> GridField::unflatten(std::size_t flat) const {
  std::vector<int> idx(shape_.size());
  for (int d = dim() - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % shape_[d]);
    flat /= shape_[d];
  }
  return idx;
}

std::size_t GridField::flatten(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim(); ++d) flat = flat * shape_[d] + idx[d];
  return flat;
}

Vector GridField::node(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vector x(dim());
  for (int d = 0; d < dim(); ++d) x(d) = lo_(d) + spacing(d) * idx[d];
  return x;
}

double GridField::interpolate(const Vector& x) const {
  require(x.size() == dim(), ErrorCode::DimensionMismatch, "point dimension does not match grid");
  require(contains(x), ErrorCode::OutOfDomain, "point lies outside the grid box");
  const int n = dim();
  std::vector<int> base(n);
  std::vector<double> frac(n);
  for (int d = 0; d < n; ++d) {
    const double u = std::clamp((x(d) - lo_(d)) / spacing(d), 0.0,
                                static_cast<double>(shape_[d] - 1));
    base[d] = std::min(static_cast<int>(std::floor(u)), shape_[d] - 2);
    frac[d] = u - base[d];
  }
  double acc = 0.0;
  std::vector<int> idx(n);
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      const int bit = (corner >> d) & 1;
      idx[d] = base[d] + bit;
      w *= bit ? frac[d] : 1.0 - frac[d];
    }
    if (w != 0.0) acc += w * values_[flatten(idx)];
  }
  return acc;
}

Vector GridField::fd_gradient(const Vector& x) const {
  require(contains(x), ErrorCode::OutOfDomain, "point lies outside the grid box");
  Vector g(dim());
  for (int d = 0; d < dim(); ++d) {
    const double h = spacing(d);
    Vector plus = x;
    Vector minus = x;
    plus(d) = std::min(x(d) + h, hi_(d));
    minus(d) = std::max(x(d) - h, lo_(d));
    g(d) = (interpolate(plus) - interpolate(minus)) / (plus(d) - minus(d));
  }
  return g;
}

double GridField::weight(std::size_t flat) const {
  double w = cell_volume();
  for (int d = dim() - 1; d >= 0; --d) {
    const auto i = static_cast<int>(flat % static_cast<std::size_t>(shape_[d]));
    flat /= static_cast<std::size_t>(shape_[d]);
    if (i == 0 || i == shape_[d] - 1) w *= 0.5;
  }
  return w;
}

double GridField::mass() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) acc += values_[k] * weight(k);
  return acc;
}

GridField GridField::with_values(std::vector<double> values) const {
  return GridField(lo_, hi_, shape_, std::move(values));
}

// ----------------------------------------------------------------- Density

int Density::dim() const {
  return std::visit([](const auto& r) { return r.dim(); }, rep_);
}

MixtureSpec Density::as_mixture() const {
  if (is_mixture()) return mixture();
  require(is_gaussian(), ErrorCode::UnsupportedRepresentation,
          "grid densities have no mixture form");
  return MixtureSpec({1.0}, {gaussian()});
}

std::string Density::describe() const {
  std::ostringstream os;
  if (is_gaussian()) {
    os << "gaussian(n=" << dim() << ")";
  } else if (is_mixture()) {
    os << "mixture(n=" << dim() << ",k=" << mixture().size() << ")";
  } else {
    os << "grid(n=" << dim() << ",points=" << grid().size() << ")";
  }
  return os.str();
}

// -------------------------------------------------------- RelativeFunction

RelativeFunction RelativeFunction::exponential(Vector slope, double offset) {
  require(slope.size() >= 1, ErrorCode::InvalidArgument, "slope must be non-empty");
  require(slope.allFinite() && std::isfinite(offset), ErrorCode::InvalidArgument,
          "exponential parameters must be finite");
  RelativeFunction f;
  f.kind_ = Kind::Exponential;
  f.dim_ = static_cast<int>(slope.size());
  std::ostringstream os;
  os << "exp(a.x+c),a=[";
  for (Eigen::Index i = 0; i < slope.size(); ++i) os << (i ? "," : "") << slope(i);
  os << "],c=" << offset;
  f.name_ = os.str();
  f.slope_ = std::move(slope);
  f.offset_ = offset;
  return f;
}

RelativeFunction RelativeFunction::from_grid(GridField field) {
  for (double v : field.values()) {
    require(v > 0.0, ErrorCode::NonPositiveInput, "relative functions must be strictly positive");
  }
  RelativeFunction f;
  f.kind_ = Kind::Grid;
  f.dim_ = field.dim();
  f.name_ = "grid";
  f.grid_ = std::make_shared<const GridField>(std::move(field));
  return f;
}

RelativeFunction RelativeFunction::analytic(int dim, std::string name, ValueFn value,
                                            GradientFn gradient) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  require(static_cast<bool>(value) && static_cast<bool>(gradient), ErrorCode::InvalidArgument,
          "analytic function needs value and gradient");
  RelativeFunction f;
  f.kind_ = Kind::Analytic;
  f.dim_ = dim;
  f.name_ = std::move(name);
  f.value_ = std::move(value);
  f.gradient_ = std::move(gradient);
  return f;
}

RelativeFunction RelativeFunction::gaussian_ratio(Density h) {
  require(h.is_analytic(), ErrorCode::UnsupportedRepresentation,
          "change of function needs an analytic density");
  RelativeFunction f;
  f.kind_ = Kind::GaussianRatio;
  f.dim_ = h.dim();
  f.name_ = "ratio[" + h.describe() + "]";
  f.density_ = std::make_shared<const Density>(std::move(h));
  return f;
}

const Vector& RelativeFunction::slope() const {
  require(kind_ == Kind::Exponential, ErrorCode::UnsupportedRepresentation,
          "not an exponential function");
  return slope_;
}

double RelativeFunction::offset() const {
  require(kind_ == Kind::Exponential, ErrorCode::UnsupportedRepresentation,
          "not an exponential function");
  return offset_;
}

const GridField& RelativeFunction::grid() const {
  require(kind_ == Kind::Grid, ErrorCode::UnsupportedRepresentation, "not a grid function");
  return *grid_;
}

const Density& RelativeFunction::base_density() const {
  require(kind_ == Kind::GaussianRatio, ErrorCode::UnsupportedRepresentation,
          "not a change-of-function form");
  return *density_;
}

bool RelativeFunction::in_domain(const Vector& x) const {
  if (x.size() != dim_) return false;
  return kind_ != Kind::Grid || grid_->contains(x);
}

double RelativeFunction::log_value(const Vector& x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch, "point dimension does not match function");
  switch (kind_) {
    case Kind::Exponential:
      return slope_.dot(x) + offset_;
    case Kind::GaussianRatio:
      return log_density(*density_, x) + 0.5 * dim_ * std::log(2.0 * kPi) + 0.5 * x.squaredNorm();
    case Kind::Grid:
      return safe_log(grid_->interpolate(x));
    case Kind::Analytic:
      return safe_log(value_(x));
  }
  return 0.0;
}

double RelativeFunction::value(const Vector& x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch, "point dimension does not match function");
  switch (kind_) {
    case Kind::Grid:
      return grid_->interpolate(x);
    case Kind::Analytic:
      return value_(x);
    default:
      return std::exp(log_value(x));
  }
}

Vector RelativeFunction::log_gradient(const Vector& x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch, "point dimension does not match function");
  switch (kind_) {
    case Kind::Exponential:
      return slope_;
    case Kind::GaussianRatio:
      return score(*density_, x) + x;
    case Kind::Grid:
      return grid_->fd_gradient(x) / std::max(grid_->interpolate(x), kEpsFloor);
    case Kind::Analytic:
      return gradient_(x) / std::max(value_(x), kEpsFloor);
  }
  return Vector();
}

Vector RelativeFunction::gradient(const Vector& x) const {
  require(x.size() == dim_, ErrorCode::DimensionMismatch, "point dimension does not match function");
  switch (kind_) {
    case Kind::Grid:
      return grid_->fd_gradient(x);
    case Kind::Analytic:
      return gradient_(x);
    default:
      return value(x) * log_gradient(x);
  }
}

// ------------------------------------------------------------- operations

double evaluate(const Density& d, const Vector& x) {
  require(x.size() == d.dim(), ErrorCode::DimensionMismatch, "point dimension does not match density");
  if (d.is_grid()) return d.grid().interpolate(x);
  return std::exp(log_density(d, x));
}

double evaluate(const RelativeFunction& f, const Vector& x) { return f.value(x); }

Vector gradient(const Density& d, const Vector& x) {
  require(x.size() == d.dim(), ErrorCode::DimensionMismatch, "point dimension does not match density");
  if (d.is_grid()) return d.grid().fd_gradient(x);
  return evaluate(d, x) * score(d, x);
}

Vector gradient(const RelativeFunction& f, const Vector& x) { return f.gradient(x); }

double log_density(const Density& d, const Vector& x) {
  require(x.size() == d.dim(), ErrorCode::DimensionMismatch, "point dimension does not match density");
  if (d.is_gaussian()) return d.gaussian().log_pdf(x);
  if (d.is_mixture()) return d.mixture().log_pdf(x);
  return safe_log(d.grid().interpolate(x));
}

Vector score(const Density& d, const Vector& x) {
  require(x.size() == d.dim(), ErrorCode::DimensionMismatch, "point dimension does not match density");
  if (d.is_gaussian()) return d.gaussian().score(x);
  if (d.is_mixture()) return d.mixture().score(x);
  return d.grid().fd_gradient(x) / std::max(d.grid().interpolate(x), kEpsFloor);
}

Box default_box(const Density& d) {
  if (d.is_grid()) return {d.grid().lo(), d.grid().hi()};
  const auto mix = d.as_mixture();
  const int n = d.dim();
  Box box{Vector::Constant(n, std::numeric_limits<double>::infinity()),
          Vector::Constant(n, -std::numeric_limits<double>::infinity())};
  for (const auto& c : mix.components()) {
    const Vector half = 8.0 * c.cov().diagonal().cwiseSqrt();
    box.lo = box.lo.cwiseMin(c.mean() - half);
    box.hi = box.hi.cwiseMax(c.mean() + half);
  }
  return box;
}

int default_grid_points(int n) {
  switch (n) {
    case 1:
      return 257;
    case 2:
      return 129;
    case 3:
      return 65;
    default:
      fail(ErrorCode::UnsupportedDimension, "grid dimension must be 1, 2 or 3");
  }
}

GridField discretize(const Density& d, const Box& box, const std::vector<int>& shape) {
  const int n = d.dim();
  require(static_cast<int>(shape.size()) == n && box.lo.size() == n && box.hi.size() == n,
          ErrorCode::DimensionMismatch, "box/shape dimension does not match density");
  require(n <= kMaxGridDim, ErrorCode::UnsupportedDimension, "grid dimension must be <= 3");
  std::size_t count = 1;
  for (int s : shape) {
    require(s >= kMinGridPoints, ErrorCode::InvalidArgument, "grid needs >= 8 points per axis");
    count *= static_cast<std::size_t>(s);
  }
  GridField frame(box.lo, box.hi, shape, std::vector<double>(count, 0.0));
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = evaluate(d, frame.node(k));
  GridField out = frame.with_values(std::move(values));
  if (d.is_analytic()) {
    const double tail = 1.0 - out.mass();
    require(tail <= 1e-8, ErrorCode::InsufficientCoverage,
            "box misses more than 1e-8 of the probability mass");
  }
  return out;
}

GridField discretize(const Density& d) {
  const int n = d.dim();
  return discretize(d, default_box(d), std::vector<int>(n, default_grid_points(n)));
}

GridField normalize(const GridField& g) {
  const double m = g.mass();
  require(m > 0.0 && std::isfinite(m), ErrorCode::ZeroMass, "grid field has zero mass");
  std::vector<double> values = g.values();
  for (double& v : values) v /= m;
  return g.with_values(std::move(values));
}

namespace {

double gamma_mass(const RelativeFunction& f, int points) {
  const auto rule = gauss_hermite_rule(points, f.dim());
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    acc += rule.weights(k) * f.value(rule.nodes.col(k));
  }
  return acc;
}

}  // namespace

Density relative_to_pdf(const RelativeFunction& f) {
  const int n = f.dim();
  switch (f.kind()) {
    case RelativeFunction::Kind::Exponential:
      // e^{a.x} gamma_n(x) is proportional to N(a, I).
      return GaussianSpec(f.slope(), Matrix::Identity(n, n));
    case RelativeFunction::Kind::GaussianRatio:
      return f.base_density();
    case RelativeFunction::Kind::Grid: {
      const auto& g = f.grid();
      std::vector<double> values(g.size());
      const double log_norm = -0.5 * n * std::log(2.0 * kPi);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const Vector x = g.node(k);
        values[k] = g.values()[k] * std::exp(log_norm - 0.5 * x.squaredNorm());
      }
      return normalize(g.with_values(std::move(values)));
    }
    case RelativeFunction::Kind::Analytic:
      break;
  }
  require(n <= kMaxGridDim, ErrorCode::UnsupportedDimension, "grid dimension must be <= 3");
  const double coarse = gamma_mass(f, kDefaultHermitePoints);
  const double fine = gamma_mass(f, kRefinedHermitePoints);
  require(std::isfinite(coarse) && std::isfinite(fine) && fine > 0.0 &&
              std::abs(coarse - fine) <= 1e-6 * std::abs(fine),
          ErrorCode::DivergentIntegral, "integral of f against gamma_n does not converge");
  const Box box{Vector::Constant(n, -8.0), Vector::Constant(n, 8.0)};
  const std::vector<int> shape(n, default_grid_points(n));
  GridField frame(box.lo, box.hi, shape, std::vector<double>(
      static_cast<std::size_t>(std::pow(shape[0], n)), 0.0));
  std::vector<double> values(frame.size());
  const double log_norm = -0.5 * n * std::log(2.0 * kPi);
  for (std::size_t k = 0; k < frame.size(); ++k) {
    const Vector x = frame.node(k);
    values[k] = f.value(x) * std::exp(log_norm - 0.5 * x.squaredNorm());
  }
  return normalize(frame.with_values(std::move(values)));
}

}  // namespace lsilab
