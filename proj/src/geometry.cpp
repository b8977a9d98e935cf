#include "geomopt/geometry.hpp"

#include <cmath>
#include <random>

namespace geomopt {

namespace {

void check_weights(const Vector& w, const char* what) { require_positive(w, what); }

void check_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("set radius must be positive and finite");
  }
}

// Exponent m with 1/m = max(0, 1/t - 1/p).
Exponent holder_gap(Exponent t, Exponent p) {
  const double inv = t.reciprocal() - p.reciprocal();
  if (inv <= 0.0) return Exponent::infinity();
  return Exponent::finite(1.0 / inv);
}

}  // namespace

Vector dual_attainer(const Vector& z, Exponent p) {
  Vector psi = Vector::Zero(z.size());
  if (z.size() == 0 || z.cwiseAbs().maxCoeff() == 0.0) return psi;
  const Exponent q = p.conjugate();
  if (q.is_infinite()) {
    Index k = 0;
    z.cwiseAbs().maxCoeff(&k);  // first maximal index
    psi[k] = sign_zero(z[k]);
    return psi;
  }
  if (p.is_infinite()) {
    for (Index j = 0; j < z.size(); ++j) psi[j] = sign_zero(z[j]);
    return psi;
  }
  const double zq = lp_norm(z, q);
  const double e = q.value() - 1.0;
  for (Index j = 0; j < z.size(); ++j) {
    psi[j] = sign_zero(z[j]) * std::pow(std::abs(z[j]) / zq, e);
  }
  return psi;
}

// ---------------------------------------------------------------------------
// NormDescriptor

NormDescriptor NormDescriptor::lp(Exponent p) { return NormDescriptor(NormKind::Lp, p, Vector()); }

NormDescriptor NormDescriptor::weighted(Exponent r, Vector beta) {
  check_weights(beta, "norm weights");
  return NormDescriptor(NormKind::WeightedLr, r, std::move(beta));
}

Vector NormDescriptor::effective_weights(Index d) const {
  if (!is_weighted()) return Vector::Ones(d);
  if (weights_.size() != d) {
    throw std::invalid_argument("norm weights have dimension " + std::to_string(weights_.size()) +
                                ", expected " + std::to_string(d));
  }
  return weights_;
}

std::optional<Index> NormDescriptor::dimension() const {
  if (is_weighted()) return weights_.size();
  return std::nullopt;
}

double NormDescriptor::operator()(const Vector& x) const {
  if (!is_weighted()) return lp_norm(x, exponent_);
  require_same_dimension(weights_, x, "weighted norm");
  return lp_norm(weights_.cwiseProduct(x), exponent_);
}

double NormDescriptor::unit_value(Index j) const { return is_weighted() ? weights_[j] : 1.0; }

NormDescriptor NormDescriptor::dual() const {
  if (!is_weighted()) return lp(exponent_.conjugate());
  return NormDescriptor(NormKind::WeightedLr, exponent_.conjugate(), weights_.cwiseInverse());
}

bool NormDescriptor::operator==(const NormDescriptor& other) const {
  if (kind_ != other.kind_ || !(exponent_ == other.exponent_)) return false;
  return weights_.size() == other.weights_.size() && weights_ == other.weights_;
}

double dual_norm(const NormDescriptor& norm, const Vector& x) { return norm.dual()(x); }

NormDescriptor qhull(const NormDescriptor& norm) {
  if (norm.quadratically_convex()) return norm;
  const Exponent two = Exponent::finite(2.0);
  if (norm.is_weighted()) return NormDescriptor::weighted(two, norm.weights());
  return NormDescriptor::lp(two);
}

// ---------------------------------------------------------------------------
// SetDescriptor

SetDescriptor SetDescriptor::lp_ball(Exponent p, double radius, Index d) {
  check_radius(radius);
  if (d < 1) throw std::invalid_argument("set dimension must be >= 1");
  SetDescriptor s;
  s.kind_ = SetKind::LpBall;
  s.dim_ = d;
  s.exponent_ = p;
  s.radius_ = radius;
  return s;
}

SetDescriptor SetDescriptor::weighted_ball(Exponent r, Vector weights, double radius) {
  check_radius(radius);
  check_weights(weights, "set weights");
  SetDescriptor s;
  s.kind_ = SetKind::WeightedLrBall;
  s.dim_ = weights.size();
  s.exponent_ = r;
  s.radius_ = radius;
  s.weights_ = std::move(weights);
  return s;
}

SetDescriptor SetDescriptor::box(Vector half_widths) {
  check_weights(half_widths, "box half-widths");
  SetDescriptor s;
  s.kind_ = SetKind::Box;
  s.dim_ = half_widths.size();
  s.exponent_ = Exponent::infinity();
  s.half_widths_ = std::move(half_widths);
  return s;
}

double SetDescriptor::gauge(const Vector& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) +
                                ", set has " + std::to_string(dim_));
  }
  switch (kind_) {
    case SetKind::Box:
      return x.cwiseAbs().cwiseQuotient(half_widths_).maxCoeff();
    case SetKind::LpBall:
      return lp_norm(x, exponent_) / radius_;
    case SetKind::WeightedLrBall:
      return lp_norm(weights_.cwiseProduct(x), exponent_) / radius_;
  }
  return kInfinity;
}

bool SetDescriptor::contains(const Vector& x) const {
  const double g = rotation_ ? gauge(rotation_->transpose() * x) : gauge(x);
  return g <= 1.0 + kMembershipTolerance;
}

bool SetDescriptor::quadratically_convex() const {
  return kind_ == SetKind::Box || exponent_.at_least(2.0);
}

SetDescriptor SetDescriptor::rotated(const Matrix& U) const {
  if (U.rows() != dim_ || U.cols() != dim_) {
    throw std::invalid_argument("rotation must be a d x d matrix");
  }
  const double err = (U.transpose() * U - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw std::invalid_argument("rotation is not orthogonal (UᵀU != I)");
  SetDescriptor s = *this;
  s.rotation_ = rotation_ ? Matrix(U * *rotation_) : U;
  return s;
}

SetDescriptor SetDescriptor::unrotated() const {
  SetDescriptor s = *this;
  s.rotation_.reset();
  return s;
}

bool SetDescriptor::operator==(const SetDescriptor& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_ || !(exponent_ == other.exponent_) ||
      radius_ != other.radius_) {
    return false;
  }
  if (weights_.size() != other.weights_.size() || weights_ != other.weights_) return false;
  if (half_widths_.size() != other.half_widths_.size() || half_widths_ != other.half_widths_) {
    return false;
  }
  if (rotation_.has_value() != other.rotation_.has_value()) return false;
  return !rotation_ || *rotation_ == *other.rotation_;
}

SetDescriptor norm_ball(const NormDescriptor& norm, Index d) {
  if (norm.is_weighted()) {
    return SetDescriptor::weighted_ball(norm.exponent(), norm.effective_weights(d), 1.0);
  }
  return SetDescriptor::lp_ball(norm.exponent(), 1.0, d);
}

// ---------------------------------------------------------------------------
// Suprema over sets

double sup_scaled_norm(const Vector& s, Exponent t, Exponent p, double radius) {
  return radius * lp_norm(s, holder_gap(t, p));
}

double sup_norm_over_set(const SetDescriptor& set, const Vector& s, Exponent t) {
  require_same_dimension(s, Vector::Zero(set.dimension()), "scale vector");
  switch (set.kind()) {
    case SetKind::Box:
      return lp_norm(s.cwiseProduct(set.half_widths()), t);
    case SetKind::LpBall:
      return sup_scaled_norm(s, t, set.exponent(), set.radius());
    case SetKind::WeightedLrBall:
      return sup_scaled_norm(s.cwiseQuotient(set.weights()), t, set.exponent(), set.radius());
  }
  return kInfinity;
}

Vector argsup_norm_over_set(const SetDescriptor& set, const Vector& s, Exponent t) {
  require_same_dimension(s, Vector::Zero(set.dimension()), "scale vector");
  if (set.kind() == SetKind::Box) return set.half_widths();

  const Index d = set.dimension();
  const Vector w = set.kind() == SetKind::WeightedLrBall ? set.weights() : Vector::Ones(d);
  const Vector c = s.cwiseQuotient(w);
  const Exponent p = set.exponent();
  const double rho = set.radius();
  const Exponent m = holder_gap(t, p);
  Vector phi = Vector::Zero(d);

  if (!m.is_infinite()) {
    if (p.is_infinite()) {
      phi.setConstant(rho);
    } else {
      // Hölder equality: |φ_j|^p ∝ c_j^m.
      const double e = m.value() / p.value();
      for (Index j = 0; j < d; ++j) phi[j] = std::pow(c[j] / c.maxCoeff(), e);
      phi *= rho / lp_norm(phi, p);
    }
  } else {
    const double cmax = c.maxCoeff();
    if (t == p) {
      Index ties = 0;
      for (Index j = 0; j < d; ++j) ties += (c[j] == cmax);
      const double value = rho / std::pow(static_cast<double>(ties), p.reciprocal());
      for (Index j = 0; j < d; ++j) {
        if (c[j] == cmax) phi[j] = value;
      }
    } else {
      Index k = 0;
      c.maxCoeff(&k);
      phi[k] = rho;
    }
  }
  return phi.cwiseQuotient(w);
}

double support_value(const SetDescriptor& set, const NormDescriptor& norm) {
  if (set.rotation()) throw UnsupportedError("support_value: rotated sets are not in the catalog");
  if (!set.quadratically_convex() && !norm.quadratically_convex()) {
    throw UnsupportedError(
        "support_value: neither the set nor the gradient norm is quadratically convex");
  }
  const Index d = set.dimension();
  const NormDescriptor hull = qhull(norm);
  const Vector scale = hull.effective_weights(d).cwiseInverse();
  return sup_norm_over_set(set, scale, hull.exponent().conjugate());
}

// ---------------------------------------------------------------------------
// Linear minimization

Comparator best_in_hindsight(const SetDescriptor& set, const Vector& G) {
  require_finite(G, "gradient sum");
  if (G.size() != set.dimension()) {
    throw std::invalid_argument("best_in_hindsight: gradient sum has wrong dimension");
  }
  if (set.rotation()) {
    const Matrix& U = *set.rotation();
    Comparator c = best_in_hindsight(set.unrotated(), U.transpose() * G);
    c.theta = U * c.theta;
    return c;
  }

  if (set.kind() == SetKind::Box) {
    const Vector& a = set.half_widths();
    Vector theta(G.size());
    for (Index j = 0; j < G.size(); ++j) theta[j] = -a[j] * sign_zero(G[j]);
    return {theta, -a.cwiseProduct(G.cwiseAbs()).sum()};
  }

  const Vector w =
      set.kind() == SetKind::WeightedLrBall ? set.weights() : Vector::Ones(set.dimension());
  const Vector H = G.cwiseQuotient(w);
  const double value = -set.radius() * lp_norm(H, set.exponent().conjugate());
  const Vector phi = -set.radius() * dual_attainer(H, set.exponent());
  return {phi.cwiseQuotient(w), value};
}

Vector retract(const SetDescriptor& set, const Vector& x) {
  if (set.rotation()) {
    const Matrix& U = *set.rotation();
    return U * retract(set.unrotated(), U.transpose() * x);
  }
  if (set.kind() == SetKind::Box) {
    const Vector& a = set.half_widths();
    return x.cwiseMax(-a).cwiseMin(a);
  }
  const double g = set.gauge(x);
  return g <= 1.0 ? x : Vector(x / g);
}

Matrix random_rotation(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix M(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) M(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  }
  return Q;
}

}  // namespace geomopt
