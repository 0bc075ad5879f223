#include <gtest/gtest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/transforms.hpp"
#include "test_support.hpp"

namespace lsilab {
namespace {

using testing::diag2;
using testing::Gen;
using testing::gaussian1;
using testing::vec;

// Reference values from tests/oracles/compute_oracles.py (mpmath, 30 digits).
constexpr double kMix1Entropy = 1.77514206718608367;
constexpr double kMix1Fisher = 1.0268581229138365288;
constexpr double kMix2Entropy = 3.067344228094105;

MixtureSpec mixture_1d() {
  return MixtureSpec({0.3, 0.7}, {gaussian1(-1.0, 0.25), gaussian1(1.5, 1.44)});
}

MixtureSpec mixture_2d() {
  Matrix k1(2, 2), k2(2, 2);
  k1 << 1.0, 0.3, 0.3, 0.5;
  k2 << 0.6, -0.2, -0.2, 1.5;
  return MixtureSpec({0.4, 0.6}, {GaussianSpec(vec({-1.0, 0.5}), k1), GaussianSpec(vec({1.0, -0.5}), k2)});
}

TEST(RelativeEntropy, Examples) {
  const auto c = RelativeFunction::exponential(vec({0.0}), std::log(3.0));
  EXPECT_NEAR(relative_entropy(c).value, 0.0, 1e-14);
  EXPECT_NEAR(relative_entropy(RelativeFunction::exponential(vec({1.0}))).value, 0.5 * std::exp(0.5),
              1e-12);
  EXPECT_NEAR(relative_entropy(RelativeFunction::exponential(vec({2.0}))).value, 2.0 * std::exp(2.0),
              1e-11);
  QuadratureOptions q;
  EXPECT_NEAR(relative_entropy(RelativeFunction::exponential(vec({1.0})), q).value,
              0.82436063535006407342, 1e-12);
}

TEST(RelativeEntropy, QuadraturePathOnTestFunctions) {
  struct Case {
    const char* name;
    double mass, entropy, fisher, egrad;
  };
  const Case cases[] = {
      {"tanh", 1.0, 0.0507135892214451808, 0.121276500670740072, 0.302852754801079413},
      {"quad", 1.25, 0.0418912371869716434, 0.157261541423891054, 0.0},
      {"sin2", 2.0, 0.111579216215919479, 0.301602617242577911, 0.606530659712633424},
  };
  // tanh has poles at i pi / 2, so 64 Hermite nodes leave about 1e-9; the
  // reported error bar has to cover the distance to the reference.
  for (const auto& c : cases) {
    const auto m = gamma_moments(named_function(c.name, 1));
    const double bar = 2.0 * m.estimated_error + 1e-12;
    EXPECT_LE(m.estimated_error, 1e-8) << c.name;
    EXPECT_NEAR(m.mass, c.mass, bar) << c.name;
    EXPECT_NEAR(m.entropy, c.entropy, bar) << c.name;
    EXPECT_NEAR(m.fisher, c.fisher, bar) << c.name;
    EXPECT_NEAR(m.mean_gradient(0), c.egrad, bar) << c.name;
  }
}

TEST(RelativeEntropy, PathsAgreeOnExponentials) {
  Gen gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = RelativeFunction::exponential(gen.vector(1 + trial % 2, -1.5, 1.5), 0.3);
    const auto a = gamma_moments(f, {}, Path::Analytic);
    const auto q = gamma_moments(f, {}, Path::Quadrature);
    EXPECT_NEAR(a.entropy, q.entropy, 1e-8 * (1.0 + a.entropy));
    EXPECT_NEAR(a.fisher, q.fisher, 1e-8 * (1.0 + a.fisher));
    EXPECT_LT((a.mean_gradient - q.mean_gradient).norm(), 1e-8 * (1.0 + a.mean_gradient.norm()));
  }
  EXPECT_THROW(gamma_moments(named_function("tanh", 1), {}, Path::Analytic), Error);
}

TEST(RelativeEntropy, NonNegativeOnRandomFunctions) {
  Gen gen(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = probit_ridge(gen.vector(2, -1, 1), gen.uniform(-1, 1), gen.uniform(0.2, 2.0));
    const auto v = relative_entropy(f);
    EXPECT_GE(v.value, -v.estimated_error);
  }
}

TEST(RelativeEntropy, ZeroMass) {
  const GridField zero(vec({0.0}), vec({1.0}), {9}, std::vector<double>(9, 0.0));
  EXPECT_THROW(relative_entropy(zero), Error);
}

TEST(ShannonEntropy, ClosedForms) {
  const double h1 = 0.5 * std::log(kTwoPiE);
  EXPECT_NEAR(shannon_entropy(GaussianSpec::standard(1)).value, h1, 1e-15);
  EXPECT_NEAR(h1, 1.4189385332046727, 1e-15);
  EXPECT_NEAR(shannon_entropy(gaussian1(0, 4)).value, h1 + std::log(2.0), 1e-14);
  const GridField uniform(vec({0.0}), vec({1.0}), {65}, std::vector<double>(65, 1.0));
  EXPECT_NEAR(shannon_entropy(normalize(uniform)).value, 0.0, 1e-14);
}

TEST(ShannonEntropy, MixturesAgainstOracle) {
  const auto h1 = shannon_entropy(mixture_1d());
  EXPECT_NEAR(h1.value, kMix1Entropy, 1e-10);
  EXPECT_LE(h1.estimated_error, 1e-9);
  const auto h2 = shannon_entropy(mixture_2d());
  EXPECT_NEAR(h2.value, kMix2Entropy, 1e-9);
  EXPECT_NEAR(fisher_scalar(mixture_1d()).value, kMix1Fisher, 1e-10);
}

TEST(ShannonEntropy, GridAgreesWithClosedForm) {
  const Density g = gaussian1(0.3, 2.0);
  const auto grid = normalize(discretize(g));
  EXPECT_NEAR(shannon_entropy(grid).value, shannon_entropy(g).value, 1e-6);
  const Density m = mixture_1d();
  EXPECT_NEAR(shannon_entropy(normalize(discretize(m))).value, kMix1Entropy, 1e-6);
}

TEST(ShannonEntropy, TranslationAndScaling) {
  Gen gen(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const MixtureSpec m = gen.mixture(n, 3);
    const Vector shift = gen.vector(n, -3, 3);
    std::vector<GaussianSpec> moved;
    for (const auto& c : m.components()) moved.emplace_back(c.mean() + shift, c.cov());
    const MixtureSpec shifted(m.weights(), std::move(moved));
    const double h = shannon_entropy(m).value;
    EXPECT_NEAR(shannon_entropy(shifted).value, h, 1e-8);
    for (double alpha : {0.5, 2.0}) {
      // X / alpha loses n log alpha.
      EXPECT_NEAR(shannon_entropy(scale_family(m, alpha)).value, h - n * std::log(alpha), 1e-8);
    }
  }
}

TEST(EntropyPower, Examples) {
  for (int n : {1, 2, 3}) EXPECT_NEAR(entropy_power(GaussianSpec::standard(n)).value, 1.0, 1e-14);
  EXPECT_NEAR(entropy_power(gaussian1(0, 2.5)).value, 2.5, 1e-14);
  EXPECT_NEAR(entropy_power(diag2(1, 4)).value, 2.0, 1e-14);
  for (double h : {-3.0, 0.1, 2.7}) {
    for (int n : {1, 2}) {
      EXPECT_DOUBLE_EQ(entropy_power_from_entropy(h, n), std::exp(2.0 * h / n) / kTwoPiE);
    }
  }
}

TEST(Covariance, Examples) {
  Matrix k(2, 2);
  k << 2.0, 0.3, 0.3, 1.0;
  EXPECT_LT((covariance(GaussianSpec(vec({1, 2}), k)).value - k).norm(), 1e-15);
  const MixtureSpec sym({0.5, 0.5}, {gaussian1(-1, 1), gaussian1(1, 1)});
  EXPECT_NEAR(covariance(sym).value(0, 0), 2.0, 1e-14);
  const auto grid = normalize(discretize(GaussianSpec::standard(1)));
  EXPECT_NEAR(covariance(grid).value(0, 0), 1.0, 1e-6);
  EXPECT_NEAR(mean(sym)(0), 0.0, 1e-15);
}

TEST(FisherMatrix, Examples) {
  Matrix k(2, 2);
  k << 2.0, 0.3, 0.3, 1.0;
  EXPECT_LT((fisher_matrix(GaussianSpec(vec({1, 2}), k)).value - k.inverse()).norm(), 1e-12);
  EXPECT_LT((fisher_matrix(GaussianSpec::standard(2)).value - Matrix::Identity(2, 2)).norm(), 1e-14);
  EXPECT_NEAR(fisher_matrix(gaussian1(0, 4)).value(0, 0), 0.25, 1e-14);
  EXPECT_NEAR(fisher_scalar(GaussianSpec::standard(3)).value, 3.0, 1e-13);
  EXPECT_NEAR(fisher_scalar(gaussian1(0, 0.2)).value, 5.0, 1e-12);
  EXPECT_NEAR(fisher_scalar(diag2(1, 4)).value, 1.25, 1e-14);
}

TEST(FisherMatrix, GridFormsAgree) {
  for (const Density& d : {Density(mixture_1d()), Density(mixture_2d())}) {
    const auto grid = normalize(discretize(d));
    const Matrix log_form = fisher_matrix(grid).value;
    const Matrix sqrt_form = fisher_matrix_sqrt_form(grid).value;
    EXPECT_LT((log_form - sqrt_form).lpNorm<Eigen::Infinity>(), 1e-4);
    EXPECT_LT((log_form - fisher_matrix(d).value).lpNorm<Eigen::Infinity>(), 1e-4);
  }
}

TEST(Functionals, SymmetricPsdAndGaussianIdentities) {
  Gen gen(24);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const GaussianSpec g = gen.gaussian(n);
    const double N = entropy_power(g).value;
    const Matrix j = fisher_matrix(g).value;
    EXPECT_NEAR(N * std::pow(j.determinant(), 1.0 / n), 1.0, 1e-8);
    // N Tr J_m = n only without anisotropy; in general it is n times the
    // ratio of the arithmetic to the geometric mean of the spectrum of K^{-1}.
    const auto es = eigen_symmetric(g.cov());
    const double am = es.values.mean();
    const double gm = std::exp(es.values.array().log().mean());
    EXPECT_NEAR(N * j.trace(), n * (es.values.array().inverse().mean() * gm), 1e-8 * n);
    EXPECT_GE(N * j.trace(), n - 1e-8);
    const GaussianSpec iso(g.mean(), am * Matrix::Identity(n, n));
    EXPECT_NEAR(entropy_power(iso).value * fisher_scalar(iso).value, n, 1e-8 * n);
    if (n <= 2) {
      const MixtureSpec m = gen.mixture(n, 3);
      EXPECT_LE(psd_defect(covariance(m).value), 1e-10);
      EXPECT_LE(psd_defect(fisher_matrix(m).value), 1e-10);
    }
  }
}

}  // namespace
}  // namespace lsilab
