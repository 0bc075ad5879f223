#include <gtest/gtest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/error.hpp"
#include "core/isoperimetry.hpp"
#include "test_support.hpp"

namespace lsilab {
namespace {

using testing::Gen;
using testing::vec;

TEST(Cdf, AgainstReference) {
  struct Row {
    double x, phi;
  };
  const Row rows[] = {
      {-37.5, 4.6053530095819548438e-308}, {-20.0, 2.7536241186062336951e-89},
      {-8.0, 6.2209605742717841235e-16},   {-1.5, 0.066807201268858066004},
      {0.3, 0.61791142218895263307},       {2.0, 0.9772498680518207928},
      {8.0, 0.9999999999999993779},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(gaussian_cdf(r.x), r.phi, 1e-14) << r.x;
    // Rounding x / sqrt 2 costs about x^2 ulps of relative accuracy.
    EXPECT_NEAR(gaussian_cdf(r.x), r.phi, 1e-12 * r.phi) << r.x;
  }
  EXPECT_DOUBLE_EQ(gaussian_cdf(0.0), 0.5);
  EXPECT_NEAR(gaussian_cdf(1.959964), 0.975, 1e-6);
  for (double x : {0.1, 1.3, 4.0}) EXPECT_NEAR(gaussian_cdf(-x), 1.0 - gaussian_cdf(x), 1e-15);
}

TEST(Quantile, AgainstReference) {
  EXPECT_NEAR(gaussian_quantile(1e-300), -37.047096299361199237, 1e-12);
  EXPECT_NEAR(gaussian_quantile(1e-12), -7.0344838253011319326, 1e-12);
  EXPECT_NEAR(gaussian_quantile(0.025), -1.9599639845400542118, 1e-14);
  EXPECT_NEAR(gaussian_quantile(0.9), 1.2815515655446005935, 1e-14);
  EXPECT_NEAR(gaussian_quantile(1.0 - 1e-12), 7.0344869100478352057, 1e-7);
  for (double t : {0.0, 1.0, -0.1, 1.5}) {
    try {
      gaussian_quantile(t);
      FAIL() << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
  }
}

TEST(Quantile, RoundTrip) {
  Gen gen(61);
  for (int i = 0; i < 10000; ++i) {
    const double t = gen.uniform(1e-9, 1.0 - 1e-9);
    EXPECT_NEAR(gaussian_cdf(gaussian_quantile(t)), t, 1e-12);
  }
}

TEST(Profile, Values) {
  EXPECT_NEAR(isoperimetric_I(0.5), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_EQ(isoperimetric_I(0.0), 0.0);
  EXPECT_EQ(isoperimetric_I(1.0), 0.0);
  EXPECT_NEAR(isoperimetric_I(0.3), isoperimetric_I(0.7), 1e-15);
  EXPECT_NEAR(isoperimetric_I(0.1), 0.17549833193248681374, 1e-15);
  EXPECT_NEAR(isoperimetric_I(0.75), 0.31777657268410693399, 1e-15);
  EXPECT_THROW(isoperimetric_I(1.1), Error);
  IsoperimetricProfile profile;
  EXPECT_DOUBLE_EQ(profile(0.2), isoperimetric_I(0.2));
}

TEST(Profile, Concave) {
  const int m = 10000;
  double prev = isoperimetric_I(0.0);
  double cur = isoperimetric_I(1.0 / m);
  for (int i = 2; i <= m; ++i) {
    const double next = isoperimetric_I(static_cast<double>(i) / m);
    EXPECT_LE(next - 2.0 * cur + prev, 1e-8);
    prev = cur;
    cur = next;
  }
}

TEST(Bobkov, Examples) {
  const auto half = check_bobkov(RelativeFunction::analytic(
      1, "1/2", [](const Vector&) { return 0.5; }, [](const Vector&) { return Vector(Vector::Zero(1)); }));
  EXPECT_NEAR(half.lhs, 0.0, 1e-14);
  EXPECT_NEAR(half.rhs, 1.0 / std::sqrt(2.0 * kPi), 1e-12);
  EXPECT_TRUE(half.satisfied);

  // E phi(Y - 1) = phi(1/sqrt 2) / sqrt 2, mass Phi(-1/sqrt 2).
  const auto shifted = check_bobkov(halfspace_function(1, 1.0, 1.0));
  EXPECT_NEAR(shifted.lhs, 0.21969564473386122, 1e-9);
  EXPECT_NEAR(shifted.rhs, isoperimetric_I(gaussian_cdf(-1.0 / std::sqrt(2.0))), 1e-9);
  EXPECT_GT(shifted.slack, 0.0);
}

TEST(Bobkov, HalfspaceGapShrinks) {
  double last = 1.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    for (int n : {1, 2}) {
      const auto r = check_bobkov(halfspace_function(n, 0.0, eps));
      const double gap = (r.rhs - r.lhs) / r.rhs;
      EXPECT_GE(gap, -1e-7);
      if (n == 1) {
        EXPECT_LT(gap, last);
        last = gap;
      }
    }
  }
  EXPECT_LE(last, 0.02);
}

TEST(Bobkov, RandomRidges) {
  Gen gen(62);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    Vector u = gen.vector(n, -1, 1);
    if (u.norm() < 0.1) u(0) = 1.0;
    const double b = gen.uniform(-1.5, 1.5);
    const double s = gen.uniform(0.1, 2.0);
    const auto f = trial % 4 < 2 ? probit_ridge(u, b, s) : logistic_ridge(u, b, s);
    const auto r = check_bobkov(f);
    EXPECT_GE(r.slack, -1e-7) << trial;
  }
}

TEST(Bobkov, RejectsClosedFormFunctions) {
  EXPECT_THROW(check_bobkov(RelativeFunction::exponential(vec({1.0}))), Error);
}

TEST(Bobkov, RangeViolation) {
  try {
    const auto ridge = probit_ridge(vec({1.0}), 0.0, 1.0);
    check_bobkov(RelativeFunction::analytic(
        1, "2 ridge", [&](const Vector& x) { return 2.0 * ridge.value(x); },
        [&](const Vector& x) { return Vector(2.0 * ridge.gradient(x)); }));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeViolation);
  }
}

}  // namespace
}  // namespace lsilab
