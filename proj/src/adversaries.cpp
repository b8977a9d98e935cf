#include "geomopt/adversaries.hpp"

#include <cmath>
#include <random>

#include "geomopt/optimizers.hpp"

namespace geomopt {

namespace {

Index argmin_first(const Vector& x) {
  Index best = 0;
  for (Index j = 1; j < x.size(); ++j)
    if (x[j] < x[best]) best = j;
  return best;
}

Index argmax_first(const Vector& x) {
  Index best = 0;
  for (Index j = 1; j < x.size(); ++j)
    if (x[j] > x[best]) best = j;
  return best;
}

void check_orthogonal(const Matrix& U) {
  if (U.rows() != U.cols()) throw std::invalid_argument("rotation must be square");
  const Matrix I = Matrix::Identity(U.rows(), U.cols());
  if ((U.transpose() * U - I).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("rotation is not orthogonal to 1e-10");
  }
}

std::vector<Vector> build_schedule(const Vector& u, const Vector& v, const ScheduleCounts& c) {
  std::vector<Vector> gs;
  gs.reserve(static_cast<std::size_t>(c.u + c.minus_u + c.v + c.minus_v));
  for (Index i = 0; i < c.u; ++i) gs.push_back(u);
  for (Index i = 0; i < c.minus_u; ++i) gs.push_back(-u);
  for (Index i = 0; i < c.v; ++i) gs.push_back(v);
  for (Index i = 0; i < c.minus_v; ++i) gs.push_back(-v);
  return gs;
}

Exponent check_p(double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    throw std::invalid_argument("ℓp adversary needs p in [1, 2], got " + std::to_string(p));
  }
  return Exponent::finite(p);
}

}  // namespace

Index AdversarialInstance::dimension() const { return comparator_set.dimension(); }

double AdversarialInstance::gradient_norm_of(const Vector& g) const {
  if (rotation) return gradient_norm(rotation->transpose() * g);
  return gradient_norm(g);
}

ExtremalPair extremal_uv(const Vector& c, Exponent q) {
  require_positive(c, "c");
  if (!q.at_least(2.0)) {
    throw std::invalid_argument("extremal_uv needs q >= 2, got " + q.to_string());
  }
  const Index d = c.size();
  ExtremalPair out{Vector::Zero(d), Vector::Zero(d)};
  out.v[argmin_first(c)] = 1.0;
  if (q.is_infinite()) {
    out.u = Vector::Ones(d);
  } else if (q.value() == 2.0) {
    out.u[argmax_first(c)] = 1.0;
  } else {
    const double cmax = c.maxCoeff();
    Vector w(d);
    for (Index j = 0; j < d; ++j) w[j] = std::pow(c[j] / cmax, 1.0 / (q.value() - 2.0));
    out.u = w / lp_norm(w, q);
  }
  return out;
}

ScheduleCounts schedule_counts(Index n, double delta) {
  if (n < 4) throw std::invalid_argument("adversarial schedule needs n >= 4");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("δ must lie in [0, 1]");
  ScheduleCounts c;
  const double quarter = static_cast<double>(n) / 4.0;
  c.u = n / 4;
  c.minus_u = n / 4;
  c.v = static_cast<Index>(std::floor(quarter * (1.0 + delta)));
  c.minus_v = n - c.u - c.minus_u - c.v;
  return c;
}

AdversarialInstance lp_hard_instance(const Vector& lambda, double p, Index n) {
  require_positive(lambda, "Λ");
  const Exponent ep = check_p(p);
  const Exponent q = ep.conjugate();
  if (n < 4) throw std::invalid_argument("ℓp adversary needs n >= 4");
  const Index d = lambda.size();
  const Vector c = lambda.cwiseInverse();
  const ExtremalPair uv = extremal_uv(c, q);
  const double nd = static_cast<double>(n);
  const double vq = lp_norm(uv.v, q);
  const double vAv = uv.v.dot(c.cwiseProduct(uv.v));
  const double uAu = uv.u.dot(c.cwiseProduct(uv.u));
  const double delta = std::min(1.0, 2.0 * vq / (nd * vAv));

  AdversarialInstance inst{build_schedule(uv.u, uv.v, schedule_counts(n, delta)),
                           SetDescriptor::lp_ball(ep, 1.0, d), NormDescriptor::lp(q),
                           0.0, 0.0, AdversaryFamily::Lp, 0.0, Vector(), false, std::nullopt};
  inst.delta_used = delta;
  inst.family = AdversaryFamily::Lp;
  inst.p = p;
  if ((lambda.array() == 1.0).all()) {
    const double dim_factor = std::pow(static_cast<double>(d), 0.5 - q.reciprocal());
    inst.certified_lower_bound = 0.5 * std::min(nd / 2.0, std::sqrt(2.0 * nd) * dim_factor);
  } else {
    inst.certified_lower_bound = nd / 4.0 * (uAu + std::min(1.0, 2.0 * vq / (nd * vAv)) * vq);
  }
  return inst;
}

AdversarialInstance lp_hard_instance_general(const Matrix& A, double p, Index n,
                                             std::uint64_t seed) {
  const MirrorMap map = MirrorMap::full(A);
  const Exponent ep = check_p(p);
  const Exponent q = ep.conjugate();
  if (n < 4) throw std::invalid_argument("ℓp adversary needs n >= 4");
  const Index d = A.rows();
  const Matrix B = A.llt().solve(Matrix::Identity(d, d));
  const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(B, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .maxCoeff();
  const double eta = 0.5 / lmax;
  constexpr int kRestarts = 32;
  constexpr int kIterations = 500;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto quad = [&](const Vector& x) { return x.dot(B * x); };
  Vector best_u, best_v;
  double best_u_val = -kInfinity, best_v_val = kInfinity;
  for (int r = 0; r < kRestarts; ++r) {
    Vector x(d), y(d);
    for (Index j = 0; j < d; ++j) x[j] = normal(rng);
    for (Index j = 0; j < d; ++j) y[j] = normal(rng);
    x /= lp_norm(x, q);
    y /= lp_norm(y, q);
    for (int it = 0; it < kIterations; ++it) {
      const Vector xs = x + eta * (B * x);
      x = xs / lp_norm(xs, q);
      const Vector ys = y - eta * (B * y);
      y = ys / lp_norm(ys, q);
    }
    if (quad(x) > best_u_val) {
      best_u_val = quad(x);
      best_u = x;
    }
    if (quad(y) < best_v_val) {
      best_v_val = quad(y);
      best_v = y;
    }
  }
  const double nd = static_cast<double>(n);
  const double delta = std::min(1.0, 2.0 * lp_norm(best_v, q) / (nd * best_v_val));
  AdversarialInstance inst{build_schedule(best_u, best_v, schedule_counts(n, delta)),
                           SetDescriptor::lp_ball(ep, 1.0, d), NormDescriptor::lp(q),
                           0.0, 0.0, AdversaryFamily::Lp, 0.0, Vector(), false, std::nullopt};
  inst.delta_used = delta;
  inst.family = AdversaryFamily::Lp;
  inst.p = p;
  inst.heuristic = true;
  const OptimizerSpec target{FullEuclidean{map, 1.0}, Vector::Zero(d)};
  inst.certified_lower_bound = max_linear_regret(inst, play(target, inst.gradients));
  return inst;
}

AdversarialInstance wlp_hard_instance(const Vector& beta, double alpha, Index n) {
  require_positive(beta, "β");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("stepsize α must be >= 0");
  }
  if (n < 4) throw std::invalid_argument("weighted adversary needs n >= 4");
  const Index d = beta.size();
  const Index k = argmin_first(beta);
  const double b1 = beta.sum();
  Vector u = Vector::Zero(d);
  u[k] = 1.0 / beta[k];
  const Vector v = Vector::Constant(d, 1.0 / b1);
  const double nd = static_cast<double>(n);
  const double v1 = v.sum();
  const double v2sq = v.squaredNorm();
  const double delta = alpha == 0.0 ? 1.0 : std::min(1.0, 2.0 * v1 / (nd * alpha * v2sq));

  AdversarialInstance inst{build_schedule(u, v, schedule_counts(n, delta)),
                           SetDescriptor::box(Vector::Ones(d)),
                           NormDescriptor::weighted(Exponent::finite(1.0), beta),
                           0.0, 0.0, AdversaryFamily::Lp, 0.0, Vector(), false, std::nullopt};
  inst.delta_used = delta;
  inst.family = AdversaryFamily::WeightedLp;
  inst.beta = beta;
  const double dd = static_cast<double>(d);
  inst.certified_lower_bound =
      0.5 * std::min(dd * nd / (2.0 * b1), std::sqrt(2.0 * dd * nd) / beta[k]);
  return inst;
}

AdversarialInstance rotate(const AdversarialInstance& instance, const Matrix& U) {
  check_orthogonal(U);
  if (U.rows() != instance.dimension()) {
    throw std::invalid_argument("rotation dimension does not match the instance");
  }
  AdversarialInstance out = instance;
  for (Vector& g : out.gradients) g = U * g;
  out.comparator_set = instance.comparator_set.rotated(U);
  out.rotation = instance.rotation ? Matrix(U * *instance.rotation) : U;
  return out;
}

double max_linear_regret(const AdversarialInstance& instance, const std::vector<Vector>& played) {
  if (played.size() != instance.gradients.size()) {
    throw std::invalid_argument("played iterates and gradients differ in length");
  }
  const Index d = instance.dimension();
  Vector G = Vector::Zero(d);
  double acc = 0.0;
  for (std::size_t i = 0; i < played.size(); ++i) {
    acc += instance.gradients[i].dot(played[i]);
    G += instance.gradients[i];
  }
  return acc - best_in_hindsight(instance.comparator_set, G).value;
}

}  // namespace geomopt
