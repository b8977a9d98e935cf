#include <gtest/gtest.h>

#include <map>

#include "geomopt/adversaries.hpp"
#include "geomopt/optimizers.hpp"
#include "support.hpp"

using namespace geomopt;
using support::Gen;

namespace {

Exponent E(double p) { return Exponent::from_double(p); }

double quad(const Vector& c, const Vector& x) { return x.dot(c.cwiseProduct(x)); }

// max and min of Σ c_j x_j² over the ℓq unit sphere by angular/spherical grids.
std::pair<double, double> grid_extremes(const Vector& c, double q) {
  double hi = -1, lo = support::kInf;
  if (c.size() == 2) {
    for (const Vector& x : support::sphere_grid_2d(q, Vector::Ones(2), 20000)) {
      hi = std::max(hi, quad(c, x));
      lo = std::min(lo, quad(c, x));
    }
  } else {
    const int m = 600;
    for (int a = 0; a <= m; ++a) {
      for (int b = 0; b < 2 * m; ++b) {
        const double t = M_PI * a / m, f = M_PI * b / m;
        Vector x(3);
        x << std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t);
        x /= support::pnorm(x, q);
        hi = std::max(hi, quad(c, x));
        lo = std::min(lo, quad(c, x));
      }
    }
  }
  return {hi, lo};
}

// sup over the unit ℓp ball of regret, via the order-free identity
// ‖Σg‖_q + ½Σ‖g‖²_{Λ⁻¹} − ½‖Σg‖²_{Λ⁻¹} for θ ← θ − Λ⁻¹g from 0.
double regret_star(const std::vector<Vector>& gs, const Vector& lambda, double q) {
  Vector G = Vector::Zero(lambda.size());
  double s = 0;
  for (const Vector& g : gs) {
    G += g;
    s += quad(lambda.cwiseInverse(), g);
  }
  return support::pnorm(G, q) + 0.5 * s - 0.5 * quad(lambda.cwiseInverse(), G);
}

std::map<std::vector<double>, int> multiset(const std::vector<Vector>& gs) {
  std::map<std::vector<double>, int> m;
  for (const Vector& g : gs) ++m[std::vector<double>(g.data(), g.data() + g.size())];
  return m;
}

}  // namespace

TEST(ExtremalUv, Examples) {
  Vector c(2);
  c << 2, 1;
  ExtremalPair p = extremal_uv(c, E(2));
  EXPECT_EQ(p.u, Vector::Unit(2, 0));
  EXPECT_EQ(p.v, Vector::Unit(2, 1));

  p = extremal_uv(Vector::Ones(3), Exponent::infinity());
  EXPECT_EQ(p.u, Vector::Ones(3));
  EXPECT_EQ(p.v, Vector::Unit(3, 0));

  p = extremal_uv(Vector::Ones(2), E(4));
  EXPECT_NEAR(p.u[0], std::pow(2.0, -0.25), 1e-14);
  EXPECT_NEAR(p.u[1], std::pow(2.0, -0.25), 1e-14);
  EXPECT_NEAR(quad(Vector::Ones(2), p.u), std::sqrt(2.0), 1e-14);
  const auto [hi, lo] = grid_extremes(Vector::Ones(2), 4);
  EXPECT_NEAR(hi, std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(lo, 1.0, 1e-2);
}

TEST(ExtremalUv, MatchesGridOracle) {
  Gen g(1);
  for (int trial = 0; trial < 16; ++trial) {
    const Index d = trial % 2 ? 2 : 3;
    const Vector c = g.uniform_vec(d, 0.2, 4.0);
    const double q = std::vector<double>{2.0, 2.5, 3.0, 6.0, support::kInf}[trial % 5];
    const ExtremalPair p = extremal_uv(c, E(q));
    EXPECT_LE(support::pnorm(p.u, q), 1 + 1e-12);
    EXPECT_NEAR(support::pnorm(p.v, q), 1.0, 1e-12);
    const auto [hi, lo] = grid_extremes(c, std::isinf(q) ? 1e3 : q);
    EXPECT_NEAR(quad(c, p.u), hi, 1e-2 * std::max(1.0, hi)) << "trial " << trial;
    EXPECT_NEAR(quad(c, p.v), lo, 1e-2 * std::max(1.0, lo)) << "trial " << trial;
  }
}

TEST(ExtremalUv, RejectsSmallQ) {
  EXPECT_THROW(extremal_uv(Vector::Ones(2), E(1.5)), std::invalid_argument);
}

TEST(LpHardInstance, IdentityBoundExample) {
  const AdversarialInstance inst = lp_hard_instance(Vector::Ones(4), 1.0, 100);
  // ½·min{50, √200·2} = √200.
  EXPECT_NEAR(inst.certified_lower_bound, std::sqrt(200.0), 1e-12);
  const auto it = play(OptimizerSpec{FullEuclidean{MirrorMap::full(Matrix::Identity(4, 4)), 1.0},
                                     Vector::Zero(4)},
                       inst.gradients);
  EXPECT_GE(max_linear_regret(inst, it), inst.certified_lower_bound - 2);
}

TEST(LpHardInstance, OneDimensionalHandSimulation) {
  const AdversarialInstance inst = lp_hard_instance(Vector::Ones(1), 2.0, 4);
  ASSERT_EQ(inst.gradients.size(), 4u);
  const std::vector<double> expected{1, -1, 1, -1};  // u, −u, v, −v with u = v = e₁
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(inst.gradients[i][0], expected[i]);
  const auto it = play(OptimizerSpec{Ogd{1.0}, Vector::Zero(1)}, inst.gradients);
  const double measured = max_linear_regret(inst, it);
  // Plays 0, −1, 0, −1 against Σg = 0: regret 2, which is the order-free identity.
  EXPECT_DOUBLE_EQ(measured, 2.0);
  EXPECT_DOUBLE_EQ(measured, regret_star(inst.gradients, Vector::Ones(1), 2.0));
  const double delta = inst.delta_used;
  EXPECT_DOUBLE_EQ(delta, 0.5);
  EXPECT_GE(measured, (4.0 / 4.0) * (1.0 + delta * 1.0));
}

TEST(LpHardInstance, ScheduleCountsAndFeasibility) {
  Gen g(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = g.integer(1, 12), n = g.integer(4, 3000);
    const double p = std::vector<double>{1.0, 1.25, 1.5, 2.0}[trial % 4];
    const Vector lam = trial % 3 == 0 ? Vector::Ones(d) : g.uniform_vec(d, 0.1, 10.0);
    const AdversarialInstance inst = lp_hard_instance(lam, p, n);
    ASSERT_EQ(static_cast<Index>(inst.gradients.size()), n);
    const ScheduleCounts sc = schedule_counts(n, inst.delta_used);
    EXPECT_EQ(sc.u, n / 4);
    EXPECT_EQ(sc.minus_u, n / 4);
    EXPECT_EQ(sc.v, static_cast<Index>(std::floor(n / 4.0 * (1 + inst.delta_used))));
    EXPECT_EQ(sc.u + sc.minus_u + sc.v + sc.minus_v, n);
    const ExtremalPair uv = extremal_uv(lam.cwiseInverse(), E(p).conjugate());
    auto ms = multiset(inst.gradients);
    auto key = [](const Vector& x) { return std::vector<double>(x.data(), x.data() + x.size()); };
    if ((uv.u - uv.v).norm() > 0 && (uv.u + uv.v).norm() > 0) {
      EXPECT_EQ(ms[key(uv.u)], sc.u);
      EXPECT_EQ(ms[key(-uv.u)], sc.minus_u);
      EXPECT_EQ(ms[key(uv.v)], sc.v);
      EXPECT_EQ(ms[key(-uv.v)], sc.minus_v);
    }
    for (const Vector& x : inst.gradients) EXPECT_LE(inst.gradient_norm_of(x), 1 + 1e-12);
  }
}

TEST(LpHardInstance, CertificationAgainstTargetedMethod) {
  Gen g(3);
  for (Index d : {1, 2, 5, 16, 40}) {
    for (Index n : {16, 17, 100, 1023, 4096}) {
      for (double p : {1.0, 1.5, 2.0}) {
        for (int diag = 0; diag < 2; ++diag) {
          // Random Λ only for n divisible by 4: otherwise the u-block loses
          // ¼·uᵀΛ⁻¹u to rounding, which is unbounded as Λ shrinks.
          if (diag && n % 4 != 0) continue;
          const Vector lam = diag ? g.uniform_vec(d, 0.05, 20.0) : Vector::Ones(d);
          const AdversarialInstance inst = lp_hard_instance(lam, p, n);
          const auto it = play(OptimizerSpec{DiagScaled{lam}, Vector::Zero(d)}, inst.gradients);
          const double measured = max_linear_regret(inst, it);
          EXPECT_GE(measured, inst.certified_lower_bound - 2) << d << " " << n << " " << p;
          const double q = support::conj(p);
          EXPECT_NEAR(measured, regret_star(inst.gradients, lam, q), 1e-8 * (1 + measured));
        }
      }
    }
  }
}

TEST(LpHardInstance, GeneralMatrixIsHeuristic) {
  Gen g(4);
  Matrix B(3, 3);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) B(i, j) = g.normal();
  const Matrix A = B * B.transpose() + Matrix::Identity(3, 3);
  const AdversarialInstance inst = lp_hard_instance_general(A, 1.5, 64, 7);
  EXPECT_TRUE(inst.heuristic);
  EXPECT_EQ(inst.gradients.size(), 64u);
  for (const Vector& x : inst.gradients) EXPECT_LE(inst.gradient_norm_of(x), 1 + 1e-12);
  const auto it = play(OptimizerSpec{FullEuclidean{MirrorMap::full(A), 1.0}, Vector::Zero(3)},
                       inst.gradients);
  EXPECT_NEAR(max_linear_regret(inst, it), inst.certified_lower_bound, 1e-12);
  EXPECT_FALSE(lp_hard_instance(Vector::Ones(3), 1.5, 64).heuristic);
}

TEST(LpHardInstance, Errors) {
  EXPECT_THROW(lp_hard_instance(Vector::Ones(2), 1.0, 3), std::invalid_argument);
  EXPECT_THROW(lp_hard_instance(Vector::Ones(2), 2.5, 8), std::invalid_argument);
  EXPECT_THROW(lp_hard_instance(-Vector::Ones(2), 1.0, 8), std::invalid_argument);
}

TEST(WlpHardInstance, SmallStepsizeExample) {
  // ½·min{dn/(2‖β‖₁), √(2dn)/min β} = ½·min{4, √32} = 2.
  const AdversarialInstance inst = wlp_hard_instance(Vector::Ones(2), 1e-9, 8);
  EXPECT_DOUBLE_EQ(inst.certified_lower_bound, 2.0);
  const auto it = play(OptimizerSpec{Ogd{1e-9}, Vector::Zero(2)}, inst.gradients);
  EXPECT_GE(max_linear_regret(inst, it), inst.certified_lower_bound - 2);
}

TEST(WlpHardInstance, GradientsHaveUnitWeightedNorm) {
  Gen g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = g.integer(1, 30);
    const Vector beta = g.uniform_vec(d, 0.1, 10);
    const AdversarialInstance inst = wlp_hard_instance(beta, g.uniform(0, 2), g.integer(4, 500));
    for (const Vector& x : inst.gradients) {
      EXPECT_NEAR(beta.cwiseProduct(x).cwiseAbs().sum(), 1.0, 1e-12);
    }
  }
}

TEST(WlpHardInstance, CertificationAcrossStepsizes) {
  const Index d = 64, n = 4096;
  const Vector beta = Vector::LinSpaced(d, 1, d);
  const double target = 0.5 * std::min(d * n / (2.0 * beta.sum()), std::sqrt(2.0 * d * n));
  for (int k = 0; k < 20; ++k) {
    const double alpha = std::pow(10.0, -3.0 + 5.0 * k / 19.0);
    const AdversarialInstance inst = wlp_hard_instance(beta, alpha, n);
    const auto it = play(OptimizerSpec{Ogd{alpha}, Vector::Zero(d)}, inst.gradients);
    const double measured = max_linear_regret(inst, it);
    EXPECT_GE(measured, inst.certified_lower_bound - 2);
    EXPECT_GE(measured, target - 2);
  }
}

TEST(Rotate, IdentityAndPermutation) {
  const AdversarialInstance inst = lp_hard_instance(Vector::LinSpaced(3, 1, 3), 1.5, 40);
  const AdversarialInstance same = rotate(inst, Matrix::Identity(3, 3));
  for (std::size_t i = 0; i < inst.gradients.size(); ++i) EXPECT_EQ(same.gradients[i], inst.gradients[i]);
  EXPECT_EQ(same.certified_lower_bound, inst.certified_lower_bound);

  Matrix P = Matrix::Zero(3, 3);
  P(0, 2) = P(1, 0) = P(2, 1) = 1;
  const AdversarialInstance perm = rotate(inst, P);
  for (std::size_t i = 0; i < inst.gradients.size(); ++i) {
    EXPECT_EQ(perm.gradients[i][0], inst.gradients[i][2]);
    EXPECT_EQ(perm.gradients[i][1], inst.gradients[i][0]);
  }
  EXPECT_EQ(perm.certified_lower_bound, inst.certified_lower_bound);
  EXPECT_THROW(rotate(inst, 2 * Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST(Rotate, ConjugatedMethodReproducesTrajectory) {
  const Index d = 4;
  const Matrix U = random_rotation(d, 3);
  Gen g(6);
  const Vector lam = g.uniform_vec(d, 0.5, 3.0);
  const AdversarialInstance inst = lp_hard_instance(lam, 1.0, 200);
  const AdversarialInstance rot = rotate(inst, U);
  const auto a = play(OptimizerSpec{DiagScaled{lam}, Vector::Zero(d)}, inst.gradients);
  const Matrix A = U * lam.asDiagonal() * U.transpose();
  const auto b = play(OptimizerSpec{FullEuclidean{MirrorMap::full(0.5 * (A + A.transpose())), 1.0},
                                    Vector::Zero(d)},
                      rot.gradients);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE((U.transpose() * b[i] - a[i]).norm(), 1e-9);
  EXPECT_NEAR(max_linear_regret(rot, b), max_linear_regret(inst, a), 1e-8);
  for (const Vector& x : rot.gradients) EXPECT_LE(rot.gradient_norm_of(x), 1 + 1e-12);
}
