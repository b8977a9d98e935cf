#include "geomopt/rates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace geomopt {

namespace {

const SetDescriptor& require_unrotated(const SetDescriptor& set, const char* op) {
  if (set.rotation()) throw UnsupportedError(std::string(op) + ": rotated sets are not supported");
  return set;
}

void require_qc_set(const SetDescriptor& set, const char* op) {
  if (!set.quadratically_convex()) {
    throw UnsupportedError(std::string(op) + ": the set is not quadratically convex");
  }
}

// sup_Θ ‖s ⊙ θ‖₂ over θ with at most k nonzero coordinates.
double sparse_sup_l2(const SetDescriptor& set, const Vector& s, Index k) {
  const Index d = set.dimension();
  k = std::clamp<Index>(k, 1, d);
  const Vector w = set.kind() == SetKind::WeightedLrBall ? set.weights() : Vector::Ones(d);
  const Vector c = set.kind() == SetKind::Box ? Vector(s.cwiseProduct(set.half_widths()))
                                              : Vector(s.cwiseQuotient(w));
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return c[a] > c[b]; });
  Vector top(k);
  for (Index i = 0; i < k; ++i) top[i] = c[order[static_cast<std::size_t>(i)]];
  if (set.kind() == SetKind::Box) return top.norm();
  return sup_scaled_norm(top, Exponent::finite(2.0), set.exponent(), set.radius());
}

}  // namespace

RateBound minimax_rate(const SetDescriptor& set, const NormDescriptor& norm, Index d, Index n) {
  if (d < 1 || n < 1) throw std::invalid_argument("d and n must be >= 1");
  if (set.dimension() != d) throw std::invalid_argument("set dimension does not match d");
  if (auto nd = norm.dimension(); nd && *nd != d) {
    throw std::invalid_argument("norm dimension does not match d");
  }
  const SetDescriptor base = set.unrotated();
  const double dd = static_cast<double>(d);
  const double sn = std::sqrt(static_cast<double>(n));
  RateBound out;

  const bool unit_lp = base.kind() == SetKind::LpBall && base.radius() == 1.0;
  const Exponent p = base.exponent();
  const Exponent r = norm.exponent();
  if (unit_lp && !norm.is_weighted() && p.at_least(2.0)) {
    double dim_factor = std::pow(dd, 0.5 - p.reciprocal());
    if (r.at_least(2.0) && !(r == Exponent::finite(2.0))) {
      dim_factor *= std::pow(dd, 0.5 - r.reciprocal());
      out.regime = "lp_ball_dense_gradients";
    } else {
      out.regime = "lp_ball_sparse_gradients";
    }
    out.upper = out.lower = std::min(1.0, dim_factor / sn);
    return out;
  }
  if (unit_lp && !norm.is_weighted() && !p.at_least(2.0) && r == p.conjugate()) {
    const double pv = p.value();
    if (pv <= 1.0 + 1.0 / std::log(2.0 * dd)) {
      out.upper = std::min(1.0, std::sqrt(std::log(2.0 * dd) / static_cast<double>(n)));
      out.regime = "lp_ball_near_l1";
    } else {
      out.upper = std::min(1.0, std::sqrt(1.0 / (static_cast<double>(n) * (pv - 1.0))));
      out.regime = "lp_ball_p_between_1_and_2";
    }
    out.lower = out.upper;
    return out;
  }
  if (!base.quadratically_convex()) {
    throw UnsupportedError(
        "minimax_rate: no catalog entry for a set that is not quadratically convex");
  }
  out.constants_included = true;
  if (norm.quadratically_convex()) {
    out.upper = support_value(base, norm) / sn;
    out.lower = out.upper / (8.0 * std::sqrt(std::log(3.0)));
    out.regime = "qc_set_qc_norm";
    return out;
  }
  const Vector inv_unit = norm.effective_weights(d).cwiseInverse();
  out.upper = sup_norm_over_set(base, inv_unit, Exponent::finite(2.0)) / sn;
  if (n >= 2 * d) {
    out.lower = out.upper / 16.0;
    out.regime = "qc_set_weighted_lr";
  } else {
    out.lower = 0.0;
    out.regime = "qc_set_weighted_lr_small_n";
  }
  return out;
}

double sparse_lower_bound(const SetDescriptor& set, const NormDescriptor& norm, Index n, Index k) {
  if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");
  const SetDescriptor& base = require_unrotated(set, "sparse_lower_bound");
  const Index d = base.dimension();
  Vector inv_unit(d);
  for (Index j = 0; j < d; ++j) inv_unit[j] = 1.0 / norm.unit_value(j);
  const double nl3 = static_cast<double>(n) * std::log(3.0);
  const double factor = std::max(0.0, 1.0 - static_cast<double>(k) / nl3);
  return factor * sparse_sup_l2(base, inv_unit, k) / (8.0 * std::sqrt(nl3));
}

Vector optimal_lambda(const SetDescriptor& set, const NormDescriptor& norm, Index n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const SetDescriptor& base = require_unrotated(set, "optimal_lambda");
  require_qc_set(base, "optimal_lambda");
  const Index d = base.dimension();
  const NormDescriptor hull = qhull(norm);
  const Vector beta = hull.effective_weights(d);
  const Exponent r = hull.exponent();
  const Vector theta = argsup_norm_over_set(base, beta.cwiseInverse(), r.conjugate());
  const Vector g = dual_attainer(theta.cwiseQuotient(beta), r).cwiseQuotient(beta);
  const double sn = std::sqrt(static_cast<double>(n));

  Vector lambda = Vector::Zero(d);
  bool frozen = false;
  for (Index j = 0; j < d; ++j) {
    if (theta[j] > 0.0) {
      lambda[j] = sn * g[j] / theta[j];
    } else {
      frozen = true;
    }
  }
  if (!frozen) return lambda;

  // θ*_j = 0 only happens for the tied ℓ2-ball case, where both suprema are
  // maxima over coordinates: sup_Θ Σλθ² = ρ² max λ_j/w_j², sup_g Σg²/λ =
  // max 1/(λ_j β_j²). Any λ_j in [1/(M₂β_j²), M₁w_j²] keeps both unchanged.
  if (base.kind() == SetKind::Box || !(base.exponent() == Exponent::finite(2.0)) ||
      !(r == Exponent::finite(2.0))) {
    throw std::logic_error("optimal_lambda: unexpected zero coordinate in the maximizer");
  }
  const Vector w = base.kind() == SetKind::WeightedLrBall ? base.weights() : Vector::Ones(d);
  double m1 = 0.0, m2 = 0.0;
  for (Index j = 0; j < d; ++j) {
    if (theta[j] <= 0.0) continue;
    m1 = std::max(m1, lambda[j] / (w[j] * w[j]));
    m2 = std::max(m2, 1.0 / (lambda[j] * beta[j] * beta[j]));
  }
  for (Index j = 0; j < d; ++j) {
    if (theta[j] > 0.0) continue;
    const double lo = 1.0 / (m2 * beta[j] * beta[j]);
    const double hi = m1 * w[j] * w[j];
    lambda[j] = std::sqrt(lo * hi);
  }
  return lambda;
}

double preconditioned_bound(const SetDescriptor& set, const NormDescriptor& norm,
                            const Vector& lambda, Index n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const SetDescriptor& base = require_unrotated(set, "preconditioned_bound");
  require_positive(lambda, "λ");
  require_same_dimension(lambda, Vector::Zero(base.dimension()), "λ");
  const Exponent two = Exponent::finite(2.0);
  const Vector root = lambda.cwiseSqrt();
  const double st = sup_norm_over_set(base, root, two);
  const double sg = sup_norm_over_set(norm_ball(qhull(norm), base.dimension()),
                                      root.cwiseInverse(), two);
  const double nd = static_cast<double>(n);
  return (st * st + nd * sg * sg) / (2.0 * nd);
}

namespace {

// Points of the boundary of an unrotated set with nonnegative coordinates, d <= 3.
std::vector<Vector> boundary_grid(const SetDescriptor& set, double h) {
  const Index d = set.dimension();
  std::vector<Vector> pts;
  if (d == 1) {
    const Vector one = Vector::Ones(1);
    pts.push_back(one / set.gauge(one));
    return pts;
  }
  const bool boxlike = set.kind() == SetKind::Box || set.exponent().is_infinite();
  if (boxlike) {
    Vector b;
    if (set.kind() == SetKind::Box) {
      b = set.half_widths();
    } else {
      const Vector w = set.kind() == SetKind::WeightedLrBall ? set.weights() : Vector::Ones(d);
      b = set.radius() * w.cwiseInverse();
    }
    const Index m = static_cast<Index>(std::ceil(1.0 / h)) + 1;
    auto t = [m](Index i) { return static_cast<double>(i) / static_cast<double>(m - 1); };
    for (Index face = 0; face < d; ++face) {
      if (d == 2) {
        for (Index i = 0; i < m; ++i) {
          Vector x = b;
          x[1 - face] *= t(i);
          pts.push_back(x);
        }
      } else {
        const Index o1 = (face + 1) % 3, o2 = (face + 2) % 3;
        for (Index i = 0; i < m; ++i) {
          for (Index k = 0; k < m; ++k) {
            Vector x = b;
            x[o1] *= t(i);
            x[o2] *= t(k);
            pts.push_back(x);
          }
        }
      }
    }
    return pts;
  }
  const double quarter = std::numbers::pi / 2.0;
  const Index m = static_cast<Index>(std::ceil(quarter / h)) + 1;
  auto ang = [&](Index i) { return quarter * static_cast<double>(i) / static_cast<double>(m - 1); };
  for (Index i = 0; i < m; ++i) {
    if (d == 2) {
      Vector dir(2);
      dir << std::cos(ang(i)), std::sin(ang(i));
      pts.push_back(dir / set.gauge(dir));
    } else {
      for (Index k = 0; k < m; ++k) {
        Vector dir(3);
        dir << std::cos(ang(i)) * std::cos(ang(k)), std::sin(ang(i)) * std::cos(ang(k)),
            std::sin(ang(k));
        pts.push_back(dir / set.gauge(dir));
      }
    }
  }
  return pts;
}

Matrix squares(const std::vector<Vector>& pts, Index d) {
  Matrix out(static_cast<Index>(pts.size()), d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.row(static_cast<Index>(i)) = pts[i].cwiseProduct(pts[i]).transpose();
  }
  return out;
}

constexpr double kLogSpan = 13.815510557964274;  // log(1e6)

}  // namespace

SaddleValues saddle_bruteforce(const SetDescriptor& set, const NormDescriptor& norm, Index n,
                               double grid_resolution) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(grid_resolution > 0.0 && grid_resolution < 1.0)) {
    throw std::invalid_argument("grid_resolution must lie in (0, 1)");
  }
  const SetDescriptor& base = require_unrotated(set, "saddle_bruteforce");
  const Index d = base.dimension();
  if (d > 3) throw std::invalid_argument("saddle_bruteforce supports d <= 3");
  const double h = grid_resolution;
  const double nd = static_cast<double>(n);
  const double center = 0.5 * std::log(nd);

  const Matrix T = squares(boundary_grid(base, h), d);
  const Matrix W = squares(boundary_grid(norm_ball(qhull(norm), d), h), d);

  // inf over a log-λ grid, refined around the incumbent until the step is below h/10.
  auto objective = [&](const Vector& x) {
    const Vector lam = x.array().exp();
    return (T * lam).maxCoeff() + nd * (W * lam.cwiseInverse()).maxCoeff();
  };
  const Index per_dim = d == 1 ? 201 : (d == 2 ? 41 : 11);
  Vector c = Vector::Constant(d, center);
  double half = kLogSpan;
  double best = kInfinity;
  for (;;) {
    const double step = 2.0 * half / static_cast<double>(per_dim - 1);
    Index combos = 1;
    for (Index j = 0; j < d; ++j) combos *= per_dim;
    Vector best_x = c;
    for (Index idx = 0; idx < combos; ++idx) {
      Vector x(d);
      Index rem = idx;
      for (Index j = 0; j < d; ++j) {
        x[j] = c[j] - half + step * static_cast<double>(rem % per_dim);
        rem /= per_dim;
      }
      const double v = objective(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    c = best_x;
    if (step <= h / 10.0) break;
    half = 2.0 * step;
  }

  // sup over grid pairs of the per-coordinate inf over λ ∈ √n·exp(hℤ), |k| <= K.
  const Index K = static_cast<Index>(std::ceil(kLogSpan / h));
  const double lam_min = std::exp(center - h * static_cast<double>(K));
  const double lam_max = std::exp(center + h * static_cast<double>(K));
  auto inner = [&](double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    if (a == 0.0) return b / lam_max;
    if (b == 0.0) return a * lam_min;
    const double k = (0.5 * std::log(b / a) - center) / h;
    double out = kInfinity;
    for (double kk : {std::floor(k), std::ceil(k)}) {
      kk = std::clamp(kk, -static_cast<double>(K), static_cast<double>(K));
      const double lam = std::exp(center + h * kk);
      out = std::min(out, a * lam + b / lam);
    }
    return out;
  };
  double sup_inf = 0.0;
  for (Index i = 0; i < T.rows(); ++i) {
    for (Index k = 0; k < W.rows(); ++k) {
      double acc = 0.0;
      for (Index j = 0; j < d; ++j) acc += inner(T(i, j), nd * W(k, j));
      sup_inf = std::max(sup_inf, acc);
    }
  }
  SaddleValues out;
  out.inf_sup = best;
  out.sup_inf = sup_inf;
  out.tolerance = 2.0 * h * std::max(best, sup_inf);
  return out;
}

std::vector<Vector> gv_packing(Index d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("gv_packing needs d >= 1");
  const double target_real = std::ceil(std::exp(static_cast<double>(d) / 8.0));
  if (target_real > static_cast<double>(1 << 16)) {
    throw std::invalid_argument("gv_packing: target size e^{d/8} is too large to construct");
  }
  const auto target = static_cast<std::size_t>(target_real);
  // ℓ1 distance between sign vectors is twice the Hamming distance.
  auto far_enough = [d](Index ham) { return 4 * ham >= d; };

  if (d <= 20) {
    std::vector<std::uint32_t> kept;
    const std::uint32_t total = 1u << d;
    for (std::uint32_t code = 0; code < total && kept.size() < target; ++code) {
      bool ok = true;
      for (std::uint32_t other : kept) {
        if (!far_enough(std::popcount(code ^ other))) {
          ok = false;
          break;
        }
      }
      if (ok) kept.push_back(code);
    }
    if (kept.size() < target) throw std::runtime_error("gv_packing: greedy scan fell short");
    std::vector<Vector> out;
    for (std::uint32_t code : kept) {
      Vector v(d);
      for (Index j = 0; j < d; ++j) v[j] = ((code >> j) & 1u) ? -1.0 : 1.0;
      out.push_back(v);
    }
    return out;
  }

  for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
    std::mt19937_64 rng(seed + attempt);
    std::vector<Vector> kept;
    const std::size_t budget = 1000 * target;
    for (std::size_t draw = 0; draw < budget && kept.size() < target; ++draw) {
      Vector v(d);
      for (Index j = 0; j < d; ++j) v[j] = (rng() >> 63) ? -1.0 : 1.0;
      bool ok = true;
      for (const Vector& u : kept) {
        if (!far_enough((v.array() != u.array()).count())) {
          ok = false;
          break;
        }
      }
      if (ok) kept.push_back(std::move(v));
    }
    if (kept.size() >= target) return kept;
  }
  throw std::runtime_error("gv_packing: random sampling fell short after 10 attempts");
}

SeparationKl separation_and_kl(Exponent p, Index d, double delta, Index hamming_distance) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("δ must lie in [0, 1/2]");
  if (hamming_distance < 0 || hamming_distance > d) {
    throw std::invalid_argument("Hamming distance must lie in [0, d]");
  }
  const double e = p.conjugate().reciprocal();
  const double dd = static_cast<double>(d);
  const double rest = static_cast<double>(d - hamming_distance);
  // ‖v + v'‖_{p*} = 2 (d − ham)^{1/p*}, which is 0 when v' = −v even for p* = ∞.
  const double rest_term = rest == 0.0 ? 0.0 : std::pow(rest, e);
  SeparationKl out;
  out.separation = 2.0 * delta / dd * (std::pow(dd, e) - rest_term);
  out.kl = delta == 0.0 ? 0.0 : delta * std::log((1.0 + delta) / (1.0 - delta));
  return out;
}

}  // namespace geomopt
