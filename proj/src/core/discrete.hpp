#pragma once

#include <span>
#include <vector>

#include "core/density.hpp"
#include "core/inequalities.hpp"

namespace lsilab {

// Bernoulli law on {-1, +1} with mass p at +1.
class BernoulliMeasure {
 public:
  explicit BernoulliMeasure(double p = 0.5);

  double p() const noexcept { return p_; }
  double q() const noexcept { return 1.0 - p_; }

 private:
  double p_;
};

struct TwoPointSides {
  double delta_sq = 0.0;  // (f(+1) - f(-1))^2
  double entropy = 0.0;   // Ent_beta(f)
  double mean = 0.0;      // E_beta f

  // delta_sq / (entropy * mean); 1 / c(p) in the near-constant limit.
  double ratio() const;
};

TwoPointSides two_point_sides(double fp, double fm, double p);

// c(p) = p^2 q^2 (log q - log p) / (q - p), with the removable singularity at
// p = 1/2 filled in (c = 1/8).
double bernoulli_optimal_constant(double p);

// c(p) Delta^2 <= Ent * E
InequalityReport check_two_point(double fp, double fm, double p, const CheckOptions& opts = {});

struct ConstantScan {
  double constant = 0.0;  // inf of Ent * E / Delta^2
  double argmin_ratio = 1.0;  // f(+1) / f(-1) at the infimum
  double grid_minimum = 0.0;  // best value on the raw grid before refinement
};

// Brute-force infimum of Ent * E / Delta^2 over a log-spaced grid of
// (f(+1), f(-1)) in [1e-3, 1e3]^2, refined by golden-section search.
ConstantScan scan_optimal_constant(double p, int grid_size = 201);

// Positive function on {-1, +1}^n under a product Bernoulli measure. Either a
// full table of 2^n values (bit i of the index set <=> x_i = +1, n <= 16) or
// a sum-symmetric table of n + 1 values indexed by the number of +1
// coordinates (n <= 20000, one common measure).
class CubeFunction {
 public:
  static CubeFunction full(std::vector<double> table, std::vector<BernoulliMeasure> measures);
  static CubeFunction sum_symmetric(std::vector<double> by_count, BernoulliMeasure measure);

  int n() const noexcept { return n_; }
  bool is_full() const noexcept { return full_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<BernoulliMeasure>& measures() const noexcept { return measures_; }

  double mean() const;
  // Ent with respect to the product measure.
  double entropy() const;
  // E[D_i f] with D_i f = (f(x, x_i=+1) - f(x, x_i=-1)) / 2.
  double mean_discrete_gradient(int i) const;
  // |E grad f|^2 = sum_i E[D_i f]^2.
  double mean_gradient_sq() const;

  // Expands a sum-symmetric table (n <= 16) into a full table.
  CubeFunction to_full() const;

 private:
  CubeFunction() = default;

  // Binomial weights for the sum-symmetric form of size m.
  std::vector<double> count_weights(int m) const;

  int n_ = 0;
  bool full_ = true;
  std::vector<double> values_;
  std::vector<BernoulliMeasure> measures_;
};

inline constexpr int kMaxFullCubeDim = 16;
inline constexpr int kMaxSymmetricCubeDim = 20000;

// Ent_mu(f) >= sum_i Ent_{mu_i}(E_{mu without i} f); full tables only.
InequalityReport tensorization_check(const CubeFunction& f, const CheckOptions& opts = {});

inline constexpr double kTensorizationTolerance = 1e-12;

struct CltRow {
  int n = 0;
  double discrete_ent = 0.0;
  double discrete_grad_sq = 0.0;
  double gaussian_ent = 0.0;
  double gaussian_grad_sq = 0.0;
  double deficit_gap = 0.0;
};

// F_n(x) = f((x_1 + ... + x_n) / sqrt n) under the symmetric product measure,
// against the Gaussian quantities of f. `smooth_f` must be one-dimensional.
std::vector<CltRow> clt_pipeline(const RelativeFunction& smooth_f, std::span<const int> n_list);

// The sum-symmetric table of F_n used by clt_pipeline.
CubeFunction clt_lattice_function(const RelativeFunction& smooth_f, int n);

}  // namespace lsilab
