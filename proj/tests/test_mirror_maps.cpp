#include <gtest/gtest.h>

#include "geomopt/mirror_maps.hpp"
#include "support.hpp"

using namespace geomopt;
using support::Gen;

namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

Matrix random_spd(Gen& g, Index d) {
  Matrix B(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) B(i, j) = g.normal();
  return B * B.transpose() + 0.5 * Matrix::Identity(d, d);
}

std::vector<MirrorMap> random_maps(Gen& g, Index d) {
  return {MirrorMap::euclidean(g.uniform_vec(d, 0.1, 10.0)), MirrorMap::full(random_spd(g, d)),
          MirrorMap::pnorm(g.uniform(1.05, 2.0)), MirrorMap::pnorm(log_dimension_exponent(d)),
          MirrorMap::pnorm(2.0)};
}

// Textbook p-norm potential, independent of the library implementation.
double pnorm_h(const Vector& x, double a) {
  const double n = support::pnorm(x, a);
  return n * n / (2.0 * (a - 1.0));
}

}  // namespace

TEST(GradH, Examples) {
  Gen g(1);
  const Vector t = g.gaussian(5);
  EXPECT_LE((MirrorMap::pnorm(2.0).grad(t) - t).norm(), 1e-15);
  EXPECT_EQ(MirrorMap::euclidean(v2(2, 3)).grad(v2(1, 1)), v2(2, 3));
  Vector e1 = Vector::Zero(3);
  e1[0] = 1;
  EXPECT_LE((MirrorMap::pnorm(1.5).grad(e1) - 2.0 * e1).norm(), 1e-14);
  const Vector fd =
      support::fd_gradient([](const Vector& x) { return pnorm_h(x, 1.5); }, e1, 1e-6);
  EXPECT_LE((fd - 2.0 * e1).norm(), 1e-6);
  EXPECT_EQ(MirrorMap::pnorm(1.3).grad(Vector::Zero(4)), Vector::Zero(4));
}

TEST(GradHStar, Examples) {
  Gen g(2);
  const Vector z = g.gaussian(5);
  EXPECT_LE((MirrorMap::pnorm(2.0).grad_star(z) - z).norm(), 1e-15);
  EXPECT_EQ(MirrorMap::euclidean(v2(2, 3)).grad_star(v2(2, 3)), v2(1, 1));
  EXPECT_EQ(MirrorMap::pnorm(1.3).grad_star(Vector::Zero(4)), Vector::Zero(4));
}

TEST(GradHStar, LogDimensionRoundtrip) {
  Gen g(3);
  const MirrorMap m = MirrorMap::pnorm(log_dimension_exponent(16));
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Vector t = g.mixed(16);
    worst = std::max(worst, support::rel_err(m.grad_star(m.grad(t)), t));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(GradHStar, RoundtripBothDirectionsAllKinds) {
  Gen g(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = g.integer(1, 12);
    for (const MirrorMap& m : random_maps(g, d)) {
      const Vector t = g.mixed(d), z = g.mixed(d);
      EXPECT_LT(support::rel_err(m.grad_star(m.grad(t)), t), 1e-8);
      EXPECT_LT(support::rel_err(m.grad(m.grad_star(z)), z), 1e-8);
    }
  }
}

TEST(GradH, MatchesFiniteDifferences) {
  Gen g(5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = g.integer(1, 8);
    for (const MirrorMap& m : random_maps(g, d)) {
      Vector t = g.gaussian(d);
      for (Index j = 0; j < d; ++j) {
        if (std::abs(t[j]) < 1e-2) t[j] = 0.1;  // keep the FD stencil away from the kinks of |θ_j|^{a-1}
      }
      const Vector fd = support::fd_gradient([&](const Vector& x) { return m.value(x); }, t);
      EXPECT_LT((fd - m.grad(t)).norm() / std::max(1.0, m.grad(t).norm()), 1e-4);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 500);
}

TEST(Value, PNormMatchesTextbookFormula) {
  Gen g(6);
  for (int i = 0; i < 50; ++i) {
    const double a = g.uniform(1.05, 2.0);
    const Vector t = g.gaussian(6);
    EXPECT_LE(support::rel_err(MirrorMap::pnorm(a).value(t), pnorm_h(t, a)), 1e-12);
  }
}

TEST(Bregman, Examples) {
  Gen g(7);
  const Vector x = g.gaussian(4);
  for (const MirrorMap& m : random_maps(g, 4)) EXPECT_NEAR(m.bregman(x, x), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(MirrorMap::euclidean(v2(1, 1)).bregman(v2(1, 0), v2(0, 0)), 0.5);
}

TEST(Bregman, QuadraticMapsAreHalfSquaredDistance) {
  Gen g(8);
  for (int i = 0; i < 50; ++i) {
    const Index d = g.integer(1, 6);
    const Vector lam = g.uniform_vec(d, 0.1, 5);
    const Matrix A = random_spd(g, d);
    const Vector x = g.gaussian(d), y = g.gaussian(d), diff = x - y;
    EXPECT_NEAR(MirrorMap::euclidean(lam).bregman(x, y), 0.5 * diff.dot(lam.cwiseProduct(diff)), 1e-12);
    EXPECT_NEAR(MirrorMap::full(A).bregman(x, y), 0.5 * diff.dot(A * diff), 1e-10);
  }
}

TEST(Bregman, PNormStrongConvexity) {
  Gen g(9);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const Index d = i < 200 ? 8 : g.integer(1, 16);
    const double a = i < 200 ? 1.5 : g.uniform(1.01, 2.0);
    const MirrorMap m = MirrorMap::pnorm(a);
    const Vector x = g.mixed(d), y = g.mixed(d);
    const double lhs = m.bregman(x, y);
    const double n = support::pnorm(x - y, a);
    if (lhs < 0.5 * n * n * (1 - 1e-9) - 1e-12) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Bregman, NonNegative) {
  Gen g(10);
  for (int i = 0; i < 300; ++i) {
    const Index d = g.integer(1, 8);
    for (const MirrorMap& m : random_maps(g, d)) EXPECT_GE(m.bregman(g.mixed(d), g.mixed(d)), -1e-12);
  }
}

TEST(DualNormSq, MatchesConjugateNorms) {
  Gen g(11);
  const Vector lam = g.uniform_vec(4, 0.5, 3);
  const Vector z = g.gaussian(4);
  EXPECT_NEAR(MirrorMap::euclidean(lam).dual_norm_sq(z), z.dot(z.cwiseQuotient(lam)), 1e-12);
  const double a = 1.4, as = a / (a - 1);
  EXPECT_NEAR(MirrorMap::pnorm(a).dual_norm_sq(z), std::pow(support::pnorm(z, as), 2), 1e-12);
  const Matrix A = random_spd(g, 4);
  EXPECT_NEAR(MirrorMap::full(A).dual_norm_sq(z), z.dot(A.inverse() * z), 1e-10);
}

TEST(Construction, RejectsInvalidMaps) {
  EXPECT_THROW(MirrorMap::euclidean(v2(1, 0)), std::invalid_argument);
  EXPECT_THROW(MirrorMap::euclidean(Vector()), std::invalid_argument);
  EXPECT_THROW(MirrorMap::pnorm(1.0), std::invalid_argument);
  EXPECT_THROW(MirrorMap::pnorm(2.5), std::invalid_argument);
  Matrix ns(2, 2);
  ns << 1, 0.5, 0, 1;
  EXPECT_THROW(MirrorMap::full(ns), std::invalid_argument);
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_THROW(MirrorMap::full(indefinite), std::invalid_argument);
}

TEST(LogDimensionExponent, Value) {
  EXPECT_DOUBLE_EQ(log_dimension_exponent(16), 1.0 + 1.0 / std::log(32.0));
  EXPECT_DOUBLE_EQ(log_dimension_exponent(1), 2.0);
  EXPECT_NO_THROW(MirrorMap::pnorm(log_dimension_exponent(1)));
}
