#include "core/transforms.hpp"

#include <cmath>

#include "core/error.hpp"

namespace lsilab {

namespace {

GaussianSpec affine(const GaussianSpec& g, const Matrix& map) {
  return GaussianSpec(map * g.mean(), symmetrize(map * g.cov() * map.transpose()));
}

}  // namespace

Density whiten(const Density& g) {
  require(g.is_analytic(), ErrorCode::UnsupportedRepresentation,
          "grid densities are not whitened; re-interpolation would bias the result");
  const Matrix k = covariance(g).value;
  require(eigen_symmetric(k).values.minCoeff() > kEpsDet, ErrorCode::SingularCovariance,
          "covariance is singular");
  const Matrix w = inv_sqrt_spd(k);
  if (g.is_gaussian()) return affine(g.gaussian(), w);
  std::vector<GaussianSpec> comps;
  for (const auto& c : g.mixture().components()) comps.push_back(affine(c, w));
  return MixtureSpec(g.mixture().weights(), std::move(comps));
}

Density scale_family(const Density& g, double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorCode::InvalidArgument, "alpha must be positive");
  const int n = g.dim();
  if (g.is_grid()) {
    const auto& f = g.grid();
    std::vector<double> values = f.values();
    const double factor = std::pow(alpha, n);
    for (double& v : values) v *= factor;
    return GridField(f.lo() / alpha, f.hi() / alpha, f.shape(), std::move(values));
  }
  const Matrix map = Matrix::Identity(n, n) / alpha;
  if (g.is_gaussian()) return affine(g.gaussian(), map);
  std::vector<GaussianSpec> comps;
  for (const auto& c : g.mixture().components()) comps.push_back(affine(c, map));
  return MixtureSpec(g.mixture().weights(), std::move(comps));
}

RelativeFunction gauss_to_euclid_function(const Density& h) {
  if (h.is_analytic()) return RelativeFunction::gaussian_ratio(h);
  const auto& field = h.grid();
  const double log_scale = 0.5 * field.dim() * std::log(2.0 * kPi);
  std::vector<double> values(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) {
    values[k] = field.values()[k] * std::exp(log_scale + 0.5 * field.node(k).squaredNorm());
  }
  return RelativeFunction::from_grid(field.with_values(std::move(values)));
}

InequalityReport intermediate_bound_check(const Density& h, const CheckOptions& opts) {
  const int n = h.dim();
  const auto ent = shannon_entropy(h, opts.quadrature);
  const auto k = covariance(h);
  const double rhs = 0.5 * k.value.trace() + 0.5 * n * std::log(2.0 * kPi);
  return make_report("intermediate_bound", ent.value, rhs,
                     ent.estimated_error + 0.5 * n * k.estimated_error, h.describe(), opts);
}

AlphaOptimum optimal_alpha(double trace_cov, int n) {
  require(std::isfinite(trace_cov) && trace_cov > 0.0, ErrorCode::NonPositiveTrace,
          "covariance trace must be positive");
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  const double alpha = std::sqrt(trace_cov / n);
  return {alpha, 0.5 * n * std::log(kTwoPiE * trace_cov / n)};
}

double scaled_intermediate_bound(double trace_cov, int n, double alpha) {
  return 0.5 * trace_cov / (alpha * alpha) + n * std::log(alpha) + 0.5 * n * std::log(2.0 * kPi);
}

InequalityReport derive_reversed_euclidean(const Density& h, const CheckOptions& opts) {
  const int n = h.dim();
  const double tr = covariance(h).value.trace();
  const auto opt = optimal_alpha(tr, n);
  auto r = intermediate_bound_check(scale_family(h, opt.alpha), opts);
  // H(h) = H(h_alpha) + n log alpha.
  const double shift = n * std::log(opt.alpha);
  return make_report("derived_reversed_euclidean", r.lhs + shift, r.rhs + shift,
                     r.estimated_error, h.describe(), opts);
}

AmgmMeans amgm_reduce(const Matrix& cov) {
  const Vector eig = eigen_symmetric(cov).values;
  require(eig.minCoeff() >= 0.0, ErrorCode::NonPositiveInput, "matrix is not PSD");
  const double n = static_cast<double>(eig.size());
  const double geometric = eig.minCoeff() == 0.0 ? 0.0 : std::exp(eig.array().log().sum() / n);
  return {geometric, eig.sum() / n};
}

bool EquivalenceBundle::ok() const noexcept {
  return transport_consistent && verdicts_consistent && reversed_lsi.satisfied &&
         reversed_euclidean.satisfied && entropy_trace.satisfied && max_entropy_det.satisfied &&
         whitened_trace.satisfied;
}

EquivalenceBundle equivalence_roundtrip(const Density& g, const CheckOptions& opts) {
  EquivalenceBundle b;
  b.reversed_lsi = check_reversed_lsi(gauss_to_euclid_function(g), opts);
  b.reversed_euclidean = check_reversed_euclidean(g, opts);
  b.entropy_trace = check_entropy_trace(g, opts);
  b.max_entropy_det = check_max_entropy_det(g, opts);
  b.whitened_trace = check_entropy_trace(whiten(g), opts);
  b.whitened_trace.name = "whitened_entropy_trace";

  // N(K^{-1/2} X) = N(X) / |K|^{1/n}, so the det-form slack divided by
  // |K|^{1/n} is the trace-form slack of the whitened law.
  const double root = b.max_entropy_det.rhs;
  b.transport_gap = std::abs(b.whitened_trace.slack - b.max_entropy_det.slack / root);
  b.transport_consistent = b.transport_gap <= kTransportTolerance;
  b.verdicts_consistent = b.reversed_lsi.satisfied == b.reversed_euclidean.satisfied &&
                          b.reversed_euclidean.satisfied == b.entropy_trace.satisfied;
  return b;
}

}  // namespace lsilab
