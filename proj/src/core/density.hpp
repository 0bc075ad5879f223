#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "core/linalg.hpp"

namespace lsilab {

inline constexpr int kMaxGridDim = 3;
inline constexpr int kMinGridPoints = 8;

// Multivariate normal law N(mean, cov). Precision, log normalizer and the
// symmetric square root are computed once at construction.
class GaussianSpec {
 public:
  // Validates symmetry (1e-12 relative) and eigenvalues > kEpsDet.
  GaussianSpec(Vector mean, Matrix cov);

  static GaussianSpec standard(int n);

  int dim() const noexcept { return static_cast<int>(mean_.size()); }
  const Vector& mean() const noexcept { return mean_; }
  const Matrix& cov() const noexcept { return cov_; }
  const Matrix& precision() const noexcept { return precision_; }
  // Symmetric square root of cov; maps standard normal nodes onto this law.
  const Matrix& cov_sqrt() const noexcept { return cov_sqrt_; }
  double log_det() const noexcept { return log_det_; }

  double log_pdf(const Vector& x) const;
  double pdf(const Vector& x) const;
  // Gradient of log pdf: -P (x - m).
  Vector score(const Vector& x) const;

 private:
  Vector mean_;
  Matrix cov_;
  Matrix precision_;
  Matrix cov_sqrt_;
  double log_det_ = 0.0;
  double log_norm_ = 0.0;
};

class MixtureSpec {
 public:
  MixtureSpec(std::vector<double> weights, std::vector<GaussianSpec> components);

  int dim() const noexcept { return components_.front().dim(); }
  std::size_t size() const noexcept { return components_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<GaussianSpec>& components() const noexcept { return components_; }

  double log_pdf(const Vector& x) const;
  double pdf(const Vector& x) const;
  Vector score(const Vector& x) const;

 private:
  std::vector<double> weights_;
  std::vector<GaussianSpec> components_;
};

// Non-negative samples on a uniform axis-aligned grid including both box
// faces. Values are row-major with the last axis fastest.
class GridField {
 public:
  GridField(Vector lo, Vector hi, std::vector<int> shape, std::vector<double> values);

  int dim() const noexcept { return static_cast<int>(shape_.size()); }
  const Vector& lo() const noexcept { return lo_; }
  const Vector& hi() const noexcept { return hi_; }
  const std::vector<int>& shape() const noexcept { return shape_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double spacing(int axis) const;
  double cell_volume() const;
  bool contains(const Vector& x) const;

  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::vector<int>& idx) const;
  Vector node(std::size_t flat) const;

  // Multilinear interpolation. Throws OutOfDomain outside the box.
  double interpolate(const Vector& x) const;
  // Central differences with step = spacing, one-sided at the faces.
  Vector fd_gradient(const Vector& x) const;

  // Trapezoid weight of a node: the cell volume, halved once for every box
  // face the node lies on.
  double weight(std::size_t flat) const;
  // Trapezoid sum of the values.
  double mass() const;

  GridField with_values(std::vector<double> values) const;

 private:
  Vector lo_;
  Vector hi_;
  std::vector<int> shape_;
  std::vector<double> values_;
};

class Density {
 public:
  using Rep = std::variant<GaussianSpec, MixtureSpec, GridField>;

  Density(GaussianSpec g) : rep_(std::move(g)) {}  // NOLINT implicit
  Density(MixtureSpec m) : rep_(std::move(m)) {}   // NOLINT implicit
  Density(GridField f) : rep_(std::move(f)) {}     // NOLINT implicit

  int dim() const;
  const Rep& rep() const noexcept { return rep_; }

  bool is_gaussian() const noexcept { return std::holds_alternative<GaussianSpec>(rep_); }
  bool is_mixture() const noexcept { return std::holds_alternative<MixtureSpec>(rep_); }
  bool is_grid() const noexcept { return std::holds_alternative<GridField>(rep_); }
  bool is_analytic() const noexcept { return !is_grid(); }

  const GaussianSpec& gaussian() const { return std::get<GaussianSpec>(rep_); }
  const MixtureSpec& mixture() const { return std::get<MixtureSpec>(rep_); }
  const GridField& grid() const { return std::get<GridField>(rep_); }

  // Mixture view of an analytic density (a Gaussian is a one-component
  // mixture).
  MixtureSpec as_mixture() const;

  std::string describe() const;

 private:
  Rep rep_;
};

// Positive function on R^n, measured against the standard Gaussian.
class RelativeFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  // f(x) = exp(a.x + c)
  static RelativeFunction exponential(Vector slope, double offset = 0.0);
  static RelativeFunction from_grid(GridField field);
  static RelativeFunction analytic(int dim, std::string name, ValueFn value, GradientFn gradient);
  // f = h (2 pi)^{n/2} e^{|x|^2/2}, so that f d(gamma_n) = h dx.
  static RelativeFunction gaussian_ratio(Density h);

  enum class Kind { Exponential, Grid, Analytic, GaussianRatio };

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }

  const Vector& slope() const;
  double offset() const;
  const GridField& grid() const;
  const Density& base_density() const;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  double log_value(const Vector& x) const;
  // Gradient of log f.
  Vector log_gradient(const Vector& x) const;

  bool in_domain(const Vector& x) const;

 private:
  RelativeFunction() = default;

  Kind kind_ = Kind::Analytic;
  int dim_ = 0;
  std::string name_;
  Vector slope_;
  double offset_ = 0.0;
  std::shared_ptr<const GridField> grid_;
  std::shared_ptr<const Density> density_;
  ValueFn value_;
  GradientFn gradient_;
};

struct Box {
  Vector lo;
  Vector hi;
};

double evaluate(const Density& d, const Vector& x);
double evaluate(const RelativeFunction& f, const Vector& x);
Vector gradient(const Density& d, const Vector& x);
Vector gradient(const RelativeFunction& f, const Vector& x);

// Log density and score for analytic densities.
double log_density(const Density& d, const Vector& x);
Vector score(const Density& d, const Vector& x);

// mean +- 8 marginal standard deviations, unioned over mixture components.
Box default_box(const Density& d);
// Points per axis used when sampling densities onto grids.
int default_grid_points(int n);

GridField discretize(const Density& d, const Box& box, const std::vector<int>& shape);
GridField discretize(const Density& d);
GridField normalize(const GridField& g);

Density relative_to_pdf(const RelativeFunction& f);

}  // namespace lsilab
