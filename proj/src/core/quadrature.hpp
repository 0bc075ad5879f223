#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace lsilab {

enum class Measure { Gaussian, LebesgueBox };

// Nodes are the columns of `nodes`. Gaussian rules integrate against the
// standard Gaussian (weights sum to 1); box rules against Lebesgue measure
// (weights sum to the box volume).
struct QuadratureRule {
  Measure measure = Measure::Gaussian;
  Matrix nodes;
  Vector weights;

  int dim() const noexcept { return static_cast<int>(nodes.rows()); }
  Eigen::Index size() const noexcept { return weights.size(); }
};

inline constexpr int kDefaultHermitePoints = 64;
inline constexpr int kRefinedHermitePoints = 96;

struct HermiteNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Probabilists' Gauss-Hermite nodes and weights for one axis. Results are
// cached in a process-wide immutable table.
const HermiteNodes& hermite_nodes(int points);

// Tensor-product rule against gamma_n. 2 <= points_per_axis <= 256, n <= 3.
QuadratureRule gauss_hermite_rule(int points_per_axis, int n);

// Composite Simpson rule on a box; points_per_axis is rounded up to odd.
QuadratureRule box_rule(const Vector& lo, const Vector& hi, int points_per_axis);

// Reweights a box rule by the standard Gaussian density so it integrates
// against gamma_n.
QuadratureRule gaussian_weighted(const QuadratureRule& box);

// Pushes a gamma_n rule forward through x -> mean + cov_sqrt * y, giving a rule
// for N(mean, cov).
QuadratureRule push_forward(const QuadratureRule& standard, const Vector& mean,
                            const Matrix& cov_sqrt);

}  // namespace lsilab
