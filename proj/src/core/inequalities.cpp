#include "core/inequalities.hpp"

#include <cmath>

#include "core/error.hpp"

namespace lsilab {

InequalityReport make_report(std::string name, double lhs, double rhs, double estimated_error,
                             std::string inputs, const CheckOptions& opts) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.estimated_error = estimated_error;
  r.tol = opts.tol.value_or(kBaseTolerance + 10.0 * estimated_error);
  require(r.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  r.satisfied = r.slack >= -r.tol;
  r.inputs = std::move(inputs);
  return r;
}

InequalityReport check_lsi_gross(const RelativeFunction& f, const CheckOptions& opts) {
  const auto m = gamma_moments(f, opts.quadrature, opts.path);
  return make_report("lsi", 2.0 * m.entropy, m.fisher, m.estimated_error, f.name(), opts);
}

InequalityReport check_reversed_lsi(const RelativeFunction& f, const CheckOptions& opts) {
  const auto m = gamma_moments(f, opts.quadrature, opts.path);
  const double lhs = m.mean_gradient.squaredNorm() / m.mass;
  // d(|E grad f|^2 / E f) is bounded by the moment errors scaled by the
  // function's magnitude.
  const double err = m.estimated_error *
                     (1.0 + 2.0 * m.mean_gradient.norm() / m.mass + lhs / m.mass);
  return make_report("reversed_lsi", lhs, 2.0 * m.entropy, err, f.name(), opts);
}

InequalityReport check_euclidean_lsi(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto h = shannon_entropy(g, opts.quadrature);
  const auto j = fisher_scalar(g, opts.quadrature);
  require(j.value > 0.0, ErrorCode::DegenerateSupport, "Fisher information vanishes");
  const double rhs = 0.5 * n * std::log(j.value / (kTwoPiE * n));
  const double err = h.estimated_error + 0.5 * n * j.estimated_error / j.value;
  return make_report("euclidean_lsi", -h.value, rhs, err, g.describe(), opts);
}

InequalityReport check_nj(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto np = entropy_power(g, opts.quadrature);
  const auto j = fisher_scalar(g, opts.quadrature);
  const double err = np.estimated_error * j.value + np.value * j.estimated_error;
  return make_report("nj", static_cast<double>(n), np.value * j.value, err, g.describe(), opts);
}

InequalityReport check_njj(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto np = entropy_power(g, opts.quadrature);
  const auto jm = fisher_matrix(g, opts.quadrature);
  const double root = std::exp(log_det_spd(jm.value) / n);
  // Relative error of |J_m|^{1/n} is bounded by ||dJ|| ||J^{-1}|| / n.
  const double inv_norm = 1.0 / std::max(eigen_symmetric(jm.value).values.minCoeff(), kEpsDet);
  const double root_err = root * jm.estimated_error * inv_norm;
  const double err = np.estimated_error * root + np.value * root_err;
  return make_report("njj", 1.0, np.value * root, err, g.describe(), opts);
}

InequalityReport check_entropy_trace(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto np = entropy_power(g, opts.quadrature);
  const auto k = covariance(g);
  const double err = np.estimated_error + k.estimated_error;
  return make_report("entropy_trace", np.value, k.value.trace() / n, err, g.describe(), opts);
}

InequalityReport check_reversed_euclidean(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto h = shannon_entropy(g, opts.quadrature);
  const auto k = covariance(g);
  const double tr = k.value.trace();
  require(tr > 0.0, ErrorCode::NonPositiveTrace, "covariance trace must be positive");
  const double rhs = 0.5 * n * std::log(kTwoPiE * tr / n);
  const double err = h.estimated_error + 0.5 * n * n * k.estimated_error / tr;
  return make_report("reversed_euclidean", h.value, rhs, err, g.describe(), opts);
}

InequalityReport check_max_entropy_det(const Density& g, const CheckOptions& opts) {
  const int n = g.dim();
  const auto np = entropy_power(g, opts.quadrature);
  const auto k = covariance(g);
  const double root = std::exp(log_det_spd(k.value) / n);
  const double err = np.estimated_error + k.estimated_error;
  return make_report("max_entropy_det", np.value, root, err, g.describe(), opts);
}

InequalityReport check_amgm(std::span<const double> values, const CheckOptions& opts) {
  require(!values.empty(), ErrorCode::InvalidArgument, "AM-GM needs at least one value");
  double log_sum = 0.0;
  double sum = 0.0;
  for (double v : values) {
    require(std::isfinite(v) && v > 0.0, ErrorCode::NonPositiveInput,
            "AM-GM inputs must be positive");
    log_sum += std::log(v);
    sum += v;
  }
  const double count = static_cast<double>(values.size());
  const double geometric = std::exp(log_sum / count);
  const double arithmetic = sum / count;
  // Rounding in the mean and the exp/log round trip.
  const double err = 1e-15 * arithmetic;
  return make_report("amgm", geometric, arithmetic, err,
                     "values[" + std::to_string(values.size()) + "]", opts);
}

InequalityReport check_amgm_spectrum(const Density& g, const CheckOptions& opts) {
  const auto k = covariance(g);
  const Vector eig = eigen_symmetric(k.value).values;
  auto r = check_amgm(std::span<const double>(eig.data(), static_cast<std::size_t>(eig.size())), opts);
  r.name = "amgm_spectrum";
  r.inputs = g.describe();
  return r;
}

RelativeFunction exp_witness(const Vector& slope) { return RelativeFunction::exponential(slope, 0.0); }

}  // namespace lsilab
