#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "core/error.hpp"

namespace lsilab {

namespace {

// Orthonormal probabilists' Hermite recurrence:
//   p_{k+1} = (x p_k - sqrt(k) p_{k-1}) / sqrt(k+1).
// Returns p_m(x), p_{m-1}(x) and sum_{k<m} p_k(x)^2.
struct HermiteEval {
  double pm;
  double pm1;
  double christoffel;
};

HermiteEval hermite_eval(int m, double x) {
  double prev = 0.0;
  double cur = 1.0;
  double sum_sq = 0.0;
  for (int k = 0; k < m; ++k) {
    sum_sq += cur * cur;
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return {cur, prev, sum_sq};
}

HermiteNodes compute_hermite(int m) {
  // Golub-Welsch start, Newton polish, Christoffel weights.
  Matrix jacobi = Matrix::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);
  std::vector<double> x(solver.eigenvalues().data(), solver.eigenvalues().data() + m);

  for (double& xi : x) {
    for (int it = 0; it < 8; ++it) {
      const auto h = hermite_eval(m, xi);
      const double step = h.pm / (std::sqrt(static_cast<double>(m)) * h.pm1);
      xi -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(xi))) break;
    }
  }
  std::sort(x.begin(), x.end());
  for (int i = 0; i < m / 2; ++i) {
    const double s = 0.5 * (x[m - 1 - i] - x[i]);
    x[i] = -s;
    x[m - 1 - i] = s;
  }
  if (m % 2 == 1) x[m / 2] = 0.0;

  HermiteNodes out;
  out.nodes = x;
  out.weights.resize(m);
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    out.weights[i] = 1.0 / hermite_eval(m, x[i]).christoffel;
    total += out.weights[i];
  }
  for (double& w : out.weights) w /= total;
  return out;
}

}  // namespace

const HermiteNodes& hermite_nodes(int points) {
  require(points >= 2 && points <= 256, ErrorCode::InvalidArgument,
          "Gauss-Hermite points per axis must lie in [2, 256]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const HermiteNodes>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[points];
  if (!slot) slot = std::make_unique<const HermiteNodes>(compute_hermite(points));
  return *slot;
}

namespace {

QuadratureRule tensor_product(const std::vector<std::vector<double>>& axis_nodes,
                              const std::vector<std::vector<double>>& axis_weights,
                              Measure measure) {
  const int n = static_cast<int>(axis_nodes.size());
  Eigen::Index total = 1;
  for (const auto& a : axis_nodes) total *= static_cast<Eigen::Index>(a.size());

  QuadratureRule rule;
  rule.measure = measure;
  rule.nodes.resize(n, total);
  rule.weights.resize(total);
  std::vector<std::size_t> idx(n, 0);
  for (Eigen::Index k = 0; k < total; ++k) {
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      rule.nodes(d, k) = axis_nodes[d][idx[d]];
      w *= axis_weights[d][idx[d]];
    }
    rule.weights(k) = w;
    for (int d = n - 1; d >= 0; --d) {
      if (++idx[d] < axis_nodes[d].size()) break;
      idx[d] = 0;
    }
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite_rule(int points_per_axis, int n) {
  require(n >= 1 && n <= 3, ErrorCode::UnsupportedDimension,
          "quadrature dimension must be 1, 2 or 3");
  const auto& h = hermite_nodes(points_per_axis);
  return tensor_product(std::vector<std::vector<double>>(n, h.nodes),
                        std::vector<std::vector<double>>(n, h.weights), Measure::Gaussian);
}

QuadratureRule box_rule(const Vector& lo, const Vector& hi, int points_per_axis) {
  const int n = static_cast<int>(lo.size());
  require(n >= 1 && n <= 3, ErrorCode::UnsupportedDimension,
          "quadrature dimension must be 1, 2 or 3");
  require(hi.size() == lo.size(), ErrorCode::DimensionMismatch, "box corners differ in size");
  require(points_per_axis >= 3, ErrorCode::InvalidArgument, "box rule needs >= 3 points");
  const int m = points_per_axis % 2 == 1 ? points_per_axis : points_per_axis + 1;

  std::vector<std::vector<double>> nodes(n), weights(n);
  for (int d = 0; d < n; ++d) {
    require(hi(d) > lo(d), ErrorCode::InvalidArgument, "empty box");
    const double h = (hi(d) - lo(d)) / (m - 1);
    nodes[d].resize(m);
    weights[d].resize(m);
    for (int i = 0; i < m; ++i) {
      nodes[d][i] = lo(d) + h * i;
      const double c = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      weights[d][i] = c * h / 3.0;
    }
  }
  return tensor_product(nodes, weights, Measure::LebesgueBox);
}

QuadratureRule gaussian_weighted(const QuadratureRule& box) {
  require(box.measure == Measure::LebesgueBox, ErrorCode::InvalidArgument,
          "expected a Lebesgue box rule");
  QuadratureRule out = box;
  out.measure = Measure::Gaussian;
  const double log_norm = -0.5 * box.dim() * std::log(2.0 * kPi);
  for (Eigen::Index k = 0; k < box.size(); ++k) {
    out.weights(k) *= std::exp(log_norm - 0.5 * box.nodes.col(k).squaredNorm());
  }
  return out;
}

QuadratureRule push_forward(const QuadratureRule& standard, const Vector& mean,
                            const Matrix& cov_sqrt) {
  require(standard.measure == Measure::Gaussian, ErrorCode::InvalidArgument,
          "push_forward expects a Gaussian rule");
  require(mean.size() == standard.dim(), ErrorCode::DimensionMismatch,
          "mean dimension does not match rule");
  QuadratureRule out = standard;
  out.nodes = (cov_sqrt * standard.nodes).colwise() + mean;
  return out;
}

}  // namespace lsilab
