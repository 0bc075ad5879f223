#include <gtest/gtest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/density.hpp"
#include "core/error.hpp"
#include "core/functionals.hpp"
#include "test_support.hpp"

namespace lsilab {
namespace {

using testing::Gen;
using testing::gaussian1;
using testing::vec;

template <typename F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

TEST(GaussianSpec, RejectsAsymmetricAndSingular) {
  Matrix a(2, 2);
  a << 1.0, 0.5, 0.4, 1.0;
  EXPECT_EQ(code_of([&] { GaussianSpec(Vector::Zero(2), a); }), ErrorCode::InvalidArgument);
  Matrix s(2, 2);
  s << 1.0, 1.0, 1.0, 1.0;
  EXPECT_EQ(code_of([&] { GaussianSpec(Vector::Zero(2), s); }), ErrorCode::SingularCovariance);
  EXPECT_EQ(code_of([&] { GaussianSpec(Vector::Zero(3), Matrix::Identity(2, 2)); }),
            ErrorCode::DimensionMismatch);
}

TEST(MixtureSpec, Validation) {
  EXPECT_ANY_THROW(MixtureSpec({}, {}));
  EXPECT_ANY_THROW(MixtureSpec({0.5, 0.6}, {gaussian1(0, 1), gaussian1(1, 1)}));
  EXPECT_ANY_THROW(MixtureSpec({1.0}, {gaussian1(0, 1), gaussian1(1, 1)}));
  EXPECT_ANY_THROW(MixtureSpec({0.5, 0.5}, {gaussian1(0, 1), GaussianSpec::standard(2)}));
  EXPECT_NO_THROW(MixtureSpec({0.5, 0.5}, {gaussian1(0, 1), gaussian1(1, 1)}));
}

TEST(GridField, Validation) {
  const Vector lo = Vector::Constant(1, 0.0);
  const Vector hi = Vector::Constant(1, 1.0);
  EXPECT_ANY_THROW(GridField(lo, hi, {7}, std::vector<double>(7, 1.0)));
  EXPECT_ANY_THROW(GridField(lo, hi, {8}, std::vector<double>(9, 1.0)));
  std::vector<double> neg(8, 1.0);
  neg[3] = -1e-3;
  EXPECT_ANY_THROW(GridField(lo, hi, {8}, neg));
  EXPECT_NO_THROW(GridField(lo, hi, {8}, std::vector<double>(8, 1.0)));
}

TEST(Evaluate, Examples) {
  const Density g = GaussianSpec::standard(1);
  EXPECT_NEAR(evaluate(g, vec({0.0})), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_DOUBLE_EQ(evaluate(RelativeFunction::exponential(vec({0.0})), vec({3.7})), 1.0);
  EXPECT_DOUBLE_EQ(gradient(g, vec({0.0}))(0), 0.0);
  const auto e = RelativeFunction::exponential(vec({1.0}));
  EXPECT_DOUBLE_EQ(gradient(e, vec({0.0}))(0), 1.0);
  EXPECT_EQ(code_of([&] { evaluate(g, vec({0.0, 1.0})); }), ErrorCode::DimensionMismatch);
}

TEST(Evaluate, GridInterpolationAndGradient) {
  const int points = 257;
  std::vector<double> values(points);
  for (int i = 0; i < points; ++i) values[i] = std::exp(-1.0 + 2.0 * i / (points - 1));
  const GridField field(vec({-1.0}), vec({1.0}), {points}, values);
  const auto f = RelativeFunction::from_grid(field);
  EXPECT_NEAR(gradient(f, vec({0.0}))(0), 1.0, 1e-4);
  EXPECT_NEAR(evaluate(f, vec({0.3})), std::exp(0.3), 1e-4);
  EXPECT_EQ(code_of([&] { evaluate(f, vec({1.5})); }), ErrorCode::OutOfDomain);
}

TEST(Evaluate, AnalyticGradientsMatchFiniteDifferences) {
  Gen gen(11);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    const Density d = trial % 3 == 0 ? Density(gen.gaussian(n)) : Density(gen.mixture(n, 3));
    const Vector x = mean(d) + gen.vector(n, -1.5, 1.5);
    const Vector g = gradient(d, x);
    for (int i = 0; i < n; ++i) {
      Vector xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const double fd = (evaluate(d, xp) - evaluate(d, xm)) / (2.0 * h);
      EXPECT_LE(std::abs(fd - g(i)), 1e-5 * std::max(std::abs(g(i)), evaluate(d, x)))
          << "trial " << trial << " axis " << i;
    }
  }
}

TEST(Evaluate, NamedFunctionGradients) {
  const double h = 1e-6;
  for (const auto& name : named_function_list()) {
    for (int n : {1, 2}) {
      const auto f = named_function(name, n);
      const Vector x = n == 1 ? vec({0.37}) : vec({0.37, -0.8});
      const Vector g = f.gradient(x);
      for (int i = 0; i < n; ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        EXPECT_NEAR((f.value(xp) - f.value(xm)) / (2.0 * h), g(i), 1e-7) << name;
      }
    }
  }
}

TEST(Density, UnitMassUnderDefaultQuadrature) {
  Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    EXPECT_NEAR(total_mass(Density(gen.gaussian(n))), 1.0, 1e-6);
    EXPECT_NEAR(total_mass(Density(gen.mixture(n, 4))), 1.0, 1e-6);
  }
}

TEST(Discretize, NormalizeAndCoverage) {
  const Density g = GaussianSpec::standard(1);
  const GridField field = discretize(g);
  EXPECT_EQ(field.shape()[0], default_grid_points(1));
  const GridField unit = normalize(field);
  EXPECT_NEAR(unit.mass(), 1.0, 1e-14);
  const Box narrow{vec({-2.0}), vec({2.0})};
  EXPECT_EQ(code_of([&] { discretize(g, narrow, {129}); }), ErrorCode::InsufficientCoverage);
  const GridField zero(vec({0.0}), vec({1.0}), {8}, std::vector<double>(8, 0.0));
  EXPECT_EQ(code_of([&] { normalize(zero); }), ErrorCode::ZeroMass);
}

TEST(RelativeToPdf, Examples) {
  const auto one = relative_to_pdf(RelativeFunction::exponential(Vector::Zero(2)));
  ASSERT_TRUE(one.is_gaussian());
  EXPECT_LT(one.gaussian().mean().norm(), 1e-12);
  EXPECT_LT((one.gaussian().cov() - Matrix::Identity(2, 2)).norm(), 1e-12);
  // The same function without a closed form goes through the grid.
  const auto sampled = relative_to_pdf(named_function("one", 1));
  ASSERT_TRUE(sampled.is_grid());
  EXPECT_NEAR(covariance(sampled).value(0, 0), 1.0, 1e-6);
  EXPECT_NEAR(evaluate(sampled, vec({0.0})), 1.0 / std::sqrt(2.0 * kPi), 1e-6);
  for (double a : {1.0, 0.5}) {
    const auto d = relative_to_pdf(RelativeFunction::exponential(vec({a})));
    ASSERT_TRUE(d.is_gaussian());
    EXPECT_NEAR(d.gaussian().mean()(0), a, 1e-12);
    EXPECT_NEAR(d.gaussian().cov()(0, 0), 1.0, 1e-12);
  }
}

TEST(RelativeToPdf, RoundTripsGaussians) {
  Gen gen(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2;
    const GaussianSpec h = gen.gaussian(n);
    const auto back = relative_to_pdf(RelativeFunction::gaussian_ratio(Density(h)));
    ASSERT_TRUE(back.is_gaussian());
    EXPECT_LT((back.gaussian().mean() - h.mean()).lpNorm<Eigen::Infinity>(), 1e-8);
    EXPECT_LT((back.gaussian().cov() - h.cov()).lpNorm<Eigen::Infinity>(), 1e-8);
  }
}

TEST(RelativeToPdf, GridRouteRecoversGaussian) {
  const GaussianSpec h(vec({0.4}), Matrix::Constant(1, 1, 0.7));
  const auto ratio = RelativeFunction::gaussian_ratio(Density(h));
  const auto opaque = RelativeFunction::analytic(
      1, "ratio", [&](const Vector& x) { return ratio.value(x); },
      [&](const Vector& x) { return ratio.gradient(x); });
  const auto back = relative_to_pdf(opaque);
  ASSERT_TRUE(back.is_grid());
  EXPECT_NEAR(mean(back)(0), 0.4, 1e-6);
  EXPECT_NEAR(covariance(back).value(0, 0), 0.7, 1e-5);
}

TEST(RelativeToPdf, DivergentIntegral) {
  const auto wide = RelativeFunction::analytic(
      1, "exp(0.6x^2)", [](const Vector& x) { return std::exp(0.6 * x(0) * x(0)); },
      [](const Vector& x) { return Vector::Constant(1, 1.2 * x(0) * std::exp(0.6 * x(0) * x(0))); });
  EXPECT_EQ(code_of([&] { relative_to_pdf(wide); }), ErrorCode::DivergentIntegral);
}

}  // namespace
}  // namespace lsilab
