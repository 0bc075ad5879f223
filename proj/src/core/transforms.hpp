#pragma once

#include "core/density.hpp"
#include "core/inequalities.hpp"

namespace lsilab {

// Law of K^{-1/2} X. Exact for Gaussian and mixture inputs; grids are
// rejected with UnsupportedRepresentation.
Density whiten(const Density& g);

// Law of X / alpha, i.e. the density alpha^n g(alpha x).
Density scale_family(const Density& g, double alpha);

// f = h (2 pi)^{n/2} e^{|x|^2/2}, so that f d(gamma_n) = h dx.
RelativeFunction gauss_to_euclid_function(const Density& h);

// H(h) <= Tr K(h) / 2 + (n/2) log(2 pi)
InequalityReport intermediate_bound_check(const Density& h, const CheckOptions& opts = {});

struct AlphaOptimum {
  double alpha = 1.0;
  // (n/2) log(2 pi e Tr K / n), the minimum over alpha of
  // Tr K / (2 alpha^2) + n log alpha + (n/2) log(2 pi).
  double bound = 0.0;
};

AlphaOptimum optimal_alpha(double trace_cov, int n);

// The scaled intermediate bound for H(h) as a function of alpha.
double scaled_intermediate_bound(double trace_cov, int n, double alpha);

// Intermediate bound on scale_family(h, alpha*), transported back to h.
InequalityReport derive_reversed_euclidean(const Density& h, const CheckOptions& opts = {});

struct AmgmMeans {
  double geometric = 0.0;
  double arithmetic = 0.0;
};

AmgmMeans amgm_reduce(const Matrix& cov);

// All four forms of the reversed inequality on one density, plus the two
// consistency checks tying them together.
struct EquivalenceBundle {
  InequalityReport reversed_lsi;        // gamma form via change of function
  InequalityReport reversed_euclidean;  // Lebesgue form
  InequalityReport entropy_trace;       // N <= Tr K / n
  InequalityReport max_entropy_det;     // N <= |K|^{1/n}
  InequalityReport whitened_trace;      // N <= Tr K / n on whiten(g)
  // |slack(whitened_trace) - slack(max_entropy_det) / |K|^{1/n}|
  double transport_gap = 0.0;
  bool transport_consistent = false;
  bool verdicts_consistent = false;

  bool ok() const noexcept;
};

inline constexpr double kTransportTolerance = 1e-6;

EquivalenceBundle equivalence_roundtrip(const Density& g, const CheckOptions& opts = {});

}  // namespace lsilab
