#include <gtest/gtest.h>

#include <cmath>

#include "core/corpus.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/transforms.hpp"
#include "test_support.hpp"

namespace lsilab {
namespace {

using testing::Gen;
using testing::gaussian1;
using testing::vec;

TEST(Whiten, Gaussian) {
  Matrix k(2, 2);
  k << 2.0, 0.5, 0.5, 1.0;
  const Vector m = vec({1.0, -1.0});
  const Density w = whiten(GaussianSpec(m, k));
  ASSERT_TRUE(w.is_gaussian());
  EXPECT_LT((w.gaussian().cov() - Matrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((w.gaussian().mean() - inv_sqrt_spd(k) * m).norm(), 1e-12);
  const Density s = whiten(GaussianSpec::standard(2));
  EXPECT_LT((s.gaussian().cov() - Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(Whiten, MixtureAndIdempotence) {
  Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Density g = gen.mixture(1 + trial % 2, 3);
    const Density w = whiten(g);
    const int n = g.dim();
    EXPECT_LT((covariance(w).value - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>(), 1e-10);
    const Density ww = whiten(w);
    EXPECT_LT((covariance(ww).value - covariance(w).value).lpNorm<Eigen::Infinity>(), 1e-8);
  }
}

TEST(Whiten, RejectsGrids) {
  const auto grid = normalize(discretize(GaussianSpec::standard(1)));
  try {
    whiten(grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedRepresentation);
  }
}

TEST(ScaleFamily, Examples) {
  const Density g = GaussianSpec::standard(1);
  EXPECT_NEAR(covariance(scale_family(g, 1.0)).value(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(covariance(scale_family(g, 2.0)).value(0, 0), 0.25, 1e-15);
  Gen gen(42);
  const Density m = gen.mixture(2, 3);
  EXPECT_NEAR(covariance(scale_family(m, 0.5)).value.trace(), 4.0 * covariance(m).value.trace(), 1e-12);
  EXPECT_NEAR(total_mass(scale_family(m, 3.0)), 1.0, 1e-6);
  EXPECT_THROW(scale_family(m, 0.0), Error);
}

TEST(GaussToEuclid, RecoversDensity) {
  Gen gen(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Density h = gen.mixture(1 + trial % 2, 2);
    const auto f = gauss_to_euclid_function(h);
    const Vector x = gen.vector(h.dim(), -1, 1);
    const double expected = evaluate(h, x) * std::pow(2.0 * kPi, 0.5 * h.dim()) * std::exp(0.5 * x.squaredNorm());
    EXPECT_NEAR(f.value(x), expected, 1e-12 * expected);
    const Density back = relative_to_pdf(f);
    EXPECT_NEAR(evaluate(back, x), evaluate(h, x), 1e-8);
  }
}

TEST(IntermediateBound, Examples) {
  const double half_log_2pi = 0.5 * std::log(2.0 * kPi);
  const auto a = intermediate_bound_check(GaussianSpec::standard(1));
  EXPECT_NEAR(a.lhs, 1.4189385332046727, 1e-14);
  EXPECT_NEAR(a.rhs, 0.5 + half_log_2pi, 1e-14);
  EXPECT_NEAR(a.slack, 0.0, 1e-14);
  const auto b = intermediate_bound_check(gaussian1(0, 4));
  EXPECT_NEAR(b.lhs, 2.1120857137646180, 1e-13);
  EXPECT_NEAR(b.rhs, 2.0 + half_log_2pi, 1e-14);
  const auto c = intermediate_bound_check(gaussian1(0, 0.25));
  EXPECT_NEAR(c.lhs, 0.7257913526447274, 1e-13);
  EXPECT_NEAR(c.rhs, 0.125 + half_log_2pi, 1e-14);
  EXPECT_GT(c.slack, 0.3);
}

TEST(OptimalAlpha, Examples) {
  EXPECT_NEAR(optimal_alpha(3.0, 3).alpha, 1.0, 1e-15);
  EXPECT_NEAR(optimal_alpha(4.0, 1).alpha, 2.0, 1e-15);
  EXPECT_NEAR(optimal_alpha(2.0, 2).alpha, 1.0, 1e-15);
  EXPECT_NEAR(optimal_alpha(4.0, 1).bound, 0.5 * std::log(kTwoPiE * 4.0), 1e-14);
  try {
    optimal_alpha(0.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveTrace);
  }
}

TEST(OptimalAlpha, GridScanFindsMinimizer) {
  Gen gen(44);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const Density h = gen.mixture(n, 3);
    const double tr = covariance(h).value.trace();
    const auto opt = optimal_alpha(tr, n);
    // 33 log-spaced points on [a/4, 4a]; the closed form sits on point 16.
    int best = -1;
    double best_value = 0.0;
    for (int i = 0; i < 33; ++i) {
      const double alpha = opt.alpha * std::pow(16.0, i / 32.0) / 4.0;
      const double direct = intermediate_bound_check(scale_family(h, alpha)).rhs + n * std::log(alpha);
      EXPECT_NEAR(direct, scaled_intermediate_bound(tr, n, alpha), 1e-10);
      EXPECT_GE(direct, opt.bound - 1e-12);
      if (best < 0 || direct < best_value) {
        best = i;
        best_value = direct;
      }
    }
    EXPECT_LE(std::abs(best - 16), 1);
    EXPECT_NEAR(scaled_intermediate_bound(tr, n, opt.alpha), opt.bound, 1e-8);
  }
}

TEST(DeriveReversedEuclidean, MatchesDirectCheck) {
  CorpusSpec spec;
  spec.count = 25;
  for (const auto& h : generate(spec)) {
    const auto derived = derive_reversed_euclidean(h);
    const auto direct = check_reversed_euclidean(h);
    EXPECT_NEAR(derived.lhs, direct.lhs, 1e-8);
    EXPECT_NEAR(derived.rhs, direct.rhs, 1e-8);
  }
}

TEST(Amgm, Reduce) {
  Matrix k(2, 2);
  k << 1.0, 0.0, 0.0, 4.0;
  const auto r = amgm_reduce(k);
  EXPECT_NEAR(r.geometric, 2.0, 1e-15);
  EXPECT_NEAR(r.arithmetic, 2.5, 1e-15);
}

TEST(Equivalence, RoundTripOnCorpus) {
  CorpusSpec spec;
  spec.count = 25;
  spec.seed = 5;
  for (const auto& g : generate(spec)) {
    const auto b = equivalence_roundtrip(g);
    EXPECT_TRUE(b.ok()) << g.describe();
    EXPECT_LE(b.transport_gap, 1e-6);
    const double det = std::pow(covariance(g).value.determinant(), 1.0 / g.dim());
    EXPECT_NEAR(entropy_power(whiten(g)).value, entropy_power(g).value / det, 1e-6);
  }
}

}  // namespace
}  // namespace lsilab
