#include "core/discrete.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/functionals.hpp"

namespace lsilab {

BernoulliMeasure::BernoulliMeasure(double p) : p_(p) {
  require(std::isfinite(p) && p > 0.0 && p < 1.0, ErrorCode::InvalidArgument,
          "Bernoulli parameter must lie in (0, 1)");
}

double TwoPointSides::ratio() const {
  const double denom = entropy * mean;
  if (denom == 0.0) return delta_sq == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                           : std::numeric_limits<double>::infinity();
  return delta_sq / denom;
}

TwoPointSides two_point_sides(double fp, double fm, double p) {
  require(std::isfinite(fp) && std::isfinite(fm) && fp > 0.0 && fm > 0.0,
          ErrorCode::NonPositiveInput, "two-point values must be positive");
  const BernoulliMeasure beta(p);
  const double q = beta.q();
  const double mean = p * fp + q * fm;
  // log(f(+1)/E) = log1p(q (fp - fm) / E), and symmetrically; this keeps the
  // near-constant regime free of cancellation.
  const double d = fp - fm;
  const double ent = p * fp * std::log1p(q * d / mean) + q * fm * std::log1p(-p * d / mean);
  return {d * d, std::max(ent, 0.0), mean};
}

double bernoulli_optimal_constant(double p) {
  const BernoulliMeasure beta(p);
  const double q = beta.q();
  const double d = q - p;
  // (log q - log p) / (q - p) = 2 atanh(d) / d.
  const double slope = std::abs(d) < 1e-8 ? 2.0 * (1.0 + d * d / 3.0) : 2.0 * std::atanh(d) / d;
  return p * p * q * q * slope;
}

InequalityReport check_two_point(double fp, double fm, double p, const CheckOptions& opts) {
  const auto sides = two_point_sides(fp, fm, p);
  const double c = bernoulli_optimal_constant(p);
  const double rhs = sides.entropy * sides.mean;
  const double err = 1e-14 * (c * sides.delta_sq + rhs);
  CheckOptions o = opts;
  if (!o.tol) o.tol = 1e-12 + 10.0 * err;
  return make_report("two_point", c * sides.delta_sq, rhs, err,
                     "f(+1)=" + std::to_string(fp) + ",f(-1)=" + std::to_string(fm) +
                         ",p=" + std::to_string(p),
                     o);
}

namespace {

// Ent * E / Delta^2 at (r, 1); homogeneous of degree zero in (fp, fm).
double scan_objective(double log_r, double p) {
  const double r = std::exp(log_r);
  const auto s = two_point_sides(r, 1.0, p);
  if (s.delta_sq == 0.0) return std::numeric_limits<double>::infinity();
  return s.entropy * s.mean / s.delta_sq;
}

}  // namespace

ConstantScan scan_optimal_constant(double p, int grid_size) {
  const BernoulliMeasure beta(p);
  require(grid_size >= 3, ErrorCode::InvalidArgument, "scan grid needs at least 3 points");
  const double lo = std::log(1e-3);
  const double hi = std::log(1e3);
  const double step = (hi - lo) / (grid_size - 1);
  std::vector<double> axis(grid_size);
  for (int i = 0; i < grid_size; ++i) axis[i] = std::exp(lo + step * i);

  ConstantScan out;
  out.grid_minimum = std::numeric_limits<double>::infinity();
  double best_log_r = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    for (int j = 0; j < grid_size; ++j) {
      if (i == j) continue;
      const auto s = two_point_sides(axis[i], axis[j], beta.p());
      const double v = s.entropy * s.mean / s.delta_sq;
      if (v < out.grid_minimum) {
        out.grid_minimum = v;
        best_log_r = std::log(axis[i] / axis[j]);
      }
    }
  }

  // Golden-section refinement on log(f(+1)/f(-1)) between the neighbouring
  // lattice ratios.
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_log_r - step;
  double b = best_log_r + step;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = scan_objective(c, beta.p());
  double fd = scan_objective(d, beta.p());
  for (int it = 0; it < 200 && (b - a) > 1e-9; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = scan_objective(c, beta.p());
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = scan_objective(d, beta.p());
    }
  }
  const double refined_log_r = fc < fd ? c : d;
  const double refined = std::min(fc, fd);
  if (refined < out.grid_minimum) {
    out.constant = refined;
    out.argmin_ratio = std::exp(refined_log_r);
  } else {
    out.constant = out.grid_minimum;
    out.argmin_ratio = std::exp(best_log_r);
  }
  return out;
}

// ------------------------------------------------------------ CubeFunction

CubeFunction CubeFunction::full(std::vector<double> table, std::vector<BernoulliMeasure> measures) {
  const int n = static_cast<int>(measures.size());
  require(n >= 1 && n <= kMaxFullCubeDim, ErrorCode::InvalidArgument,
          "full cube tables support 1 <= n <= 16");
  require(table.size() == (std::size_t{1} << n), ErrorCode::InvalidArgument,
          "full cube table must hold 2^n values");
  for (double v : table) {
    require(std::isfinite(v) && v > 0.0, ErrorCode::NonPositiveInput, "cube values must be positive");
  }
  CubeFunction f;
  f.n_ = n;
  f.full_ = true;
  f.values_ = std::move(table);
  f.measures_ = std::move(measures);
  return f;
}

CubeFunction CubeFunction::sum_symmetric(std::vector<double> by_count, BernoulliMeasure measure) {
  const int n = static_cast<int>(by_count.size()) - 1;
  require(n >= 1 && n <= kMaxSymmetricCubeDim, ErrorCode::InvalidArgument,
          "sum-symmetric tables support 1 <= n <= 20000");
  for (double v : by_count) {
    require(std::isfinite(v) && v > 0.0, ErrorCode::NonPositiveInput, "cube values must be positive");
  }
  CubeFunction f;
  f.n_ = n;
  f.full_ = false;
  f.values_ = std::move(by_count);
  f.measures_ = {measure};
  return f;
}

namespace {

// Neumaier-compensated sum; full tables add up to 65536 terms.
class Sum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::vector<double> CubeFunction::count_weights(int m) const {
  const double p = measures_.front().p();
  const double ratio = p / (1.0 - p);
  // Binomial(m, p) by the term ratio, walking out from the mode so nothing
  // overflows; far tails underflow to zero harmlessly.
  const int mode = std::clamp(static_cast<int>(std::floor((m + 1) * p)), 0, m);
  std::vector<double> w(m + 1, 0.0);
  w[mode] = 1.0;
  for (int k = mode; k < m; ++k) w[k + 1] = w[k] * ratio * (m - k) / (k + 1.0);
  for (int k = mode; k > 0; --k) w[k - 1] = w[k] / ratio * k / (m - k + 1.0);
  Sum total;
  for (double x : w) total.add(x);
  for (double& x : w) x /= total.value();
  return w;
}

namespace {

double full_weight(std::size_t index, const std::vector<BernoulliMeasure>& measures) {
  double w = 1.0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    w *= ((index >> i) & 1U) ? measures[i].p() : measures[i].q();
  }
  return w;
}

double entropy_of(const std::vector<double>& values, const std::vector<double>& weights) {
  Sum mass;
  Sum acc;
  for (std::size_t k = 0; k < values.size(); ++k) {
    mass.add(weights[k] * values[k]);
    acc.add(weights[k] * xlogx(values[k]));
  }
  return acc.value() - mass.value() * std::log(mass.value());
}

}  // namespace

double CubeFunction::mean() const {
  Sum acc;
  if (full_) {
    for (std::size_t k = 0; k < values_.size(); ++k) acc.add(full_weight(k, measures_) * values_[k]);
    return acc.value();
  }
  const auto w = count_weights(n_);
  for (int k = 0; k <= n_; ++k) acc.add(w[k] * values_[k]);
  return acc.value();
}

double CubeFunction::entropy() const {
  if (full_) {
    std::vector<double> w(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) w[k] = full_weight(k, measures_);
    return entropy_of(values_, w);
  }
  return entropy_of(values_, count_weights(n_));
}

double CubeFunction::mean_discrete_gradient(int i) const {
  require(i >= 0 && i < n_, ErrorCode::InvalidArgument, "coordinate out of range");
  Sum acc;
  if (full_) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (k & bit) continue;
      // Weight of the other coordinates only.
      double w = full_weight(k, measures_) / measures_[i].q();
      acc.add(w * (values_[k | bit] - values_[k]));
    }
    return 0.5 * acc.value();
  }
  // The other n - 1 coordinates carry k' plus signs.
  const auto w = count_weights(n_ - 1);
  for (int k = 0; k < n_; ++k) acc.add(w[k] * (values_[k + 1] - values_[k]));
  return 0.5 * acc.value();
}

double CubeFunction::mean_gradient_sq() const {
  if (!full_) {
    const double g = mean_discrete_gradient(0);
    return n_ * g * g;
  }
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double g = mean_discrete_gradient(i);
    acc += g * g;
  }
  return acc;
}

CubeFunction CubeFunction::to_full() const {
  if (full_) return *this;
  require(n_ <= kMaxFullCubeDim, ErrorCode::InvalidArgument, "expansion limited to n <= 16");
  std::vector<double> table(std::size_t{1} << n_);
  for (std::size_t k = 0; k < table.size(); ++k) {
    table[k] = values_[static_cast<std::size_t>(std::popcount(k))];
  }
  return full(std::move(table), std::vector<BernoulliMeasure>(n_, measures_.front()));
}

InequalityReport tensorization_check(const CubeFunction& f, const CheckOptions& opts) {
  require(f.is_full(), ErrorCode::UnsupportedRepresentation,
          "tensorization check needs a full table");
  const int n = f.n();
  const auto& ms = f.measures();
  const auto& values = f.values();
  double lhs = 0.0;
  for (int i = 0; i < n; ++i) {
    // Marginal g_i(+1), g_i(-1): average over the other coordinates.
    const std::size_t bit = std::size_t{1} << i;
    Sum plus;
    Sum minus;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double w = full_weight(k, ms) / ((k & bit) ? ms[i].p() : ms[i].q());
      ((k & bit) ? plus : minus).add(w * values[k]);
    }
    lhs += entropy_of({plus.value(), minus.value()}, {ms[i].p(), ms[i].q()});
  }
  CheckOptions o = opts;
  if (!o.tol) o.tol = kTensorizationTolerance;
  return make_report("tensorization", lhs, f.entropy(), 0.0,
                     "cube(n=" + std::to_string(n) + ")", o);
}

// -------------------------------------------------------------------- CLT

CubeFunction clt_lattice_function(const RelativeFunction& smooth_f, int n) {
  require(smooth_f.dim() == 1, ErrorCode::DimensionMismatch, "CLT pipeline needs a 1-D function");
  require(n >= 1 && n <= kMaxSymmetricCubeDim, ErrorCode::InvalidArgument,
          "CLT dimension must lie in [1, 20000]");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> values(n + 1);
  Vector x(1);
  for (int k = 0; k <= n; ++k) {
    x(0) = (2.0 * k - n) * scale;
    values[k] = smooth_f.value(x);
    require(std::isfinite(values[k]) && values[k] > 0.0, ErrorCode::NonPositiveSample,
            "function is not positive at a lattice point");
  }
  return CubeFunction::sum_symmetric(std::move(values), BernoulliMeasure(0.5));
}

std::vector<CltRow> clt_pipeline(const RelativeFunction& smooth_f, std::span<const int> n_list) {
  require(smooth_f.dim() == 1, ErrorCode::DimensionMismatch, "CLT pipeline needs a 1-D function");
  // Lattice samples first so a non-positive f reports NonPositiveSample.
  std::vector<CubeFunction> cubes;
  cubes.reserve(n_list.size());
  for (int n : n_list) cubes.push_back(clt_lattice_function(smooth_f, n));
  const auto g = gamma_moments(smooth_f);
  const double gauss_grad_sq = g.mean_gradient.squaredNorm();
  const double gauss_deficit = 2.0 * g.entropy - gauss_grad_sq / g.mass;

  std::vector<CltRow> rows;
  rows.reserve(n_list.size());
  for (const auto& cube : cubes) {
    CltRow row;
    row.n = cube.n();
    row.discrete_ent = cube.entropy();
    row.discrete_grad_sq = cube.mean_gradient_sq();
    row.gaussian_ent = g.entropy;
    row.gaussian_grad_sq = gauss_grad_sq;
    const double discrete_deficit = 2.0 * row.discrete_ent - row.discrete_grad_sq / cube.mean();
    row.deficit_gap = std::abs(discrete_deficit - gauss_deficit);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lsilab
