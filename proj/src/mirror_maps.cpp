#include "geomopt/mirror_maps.hpp"

#include <algorithm>
#include <cmath>

namespace geomopt {

namespace {

// sign(x_j)·‖x‖_e·(|x_j|/‖x‖_e)^{e−1}, i.e. the gradient of ½‖x‖_e² evaluated
// without forming |x_j|^{e−1} and ‖x‖^{2−e} separately.
Vector half_sq_norm_grad(const Vector& x, Exponent e) {
  Vector out = Vector::Zero(x.size());
  const double nrm = lp_norm(x, e);
  if (nrm == 0.0) return out;
  if (e.is_infinite()) {
    throw UnsupportedError("p-norm map requires a finite exponent");
  }
  const double pw = e.value() - 1.0;
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0) continue;
    out[j] = sign_zero(x[j]) * nrm * std::pow(std::abs(x[j]) / nrm, pw);
  }
  return out;
}

const char* kind_name(MirrorMap::Kind k) {
  switch (k) {
    case MirrorMap::Kind::Euclidean: return "Euclidean";
    case MirrorMap::Kind::FullEuclidean: return "FullEuclidean";
    case MirrorMap::Kind::PNorm: return "PNorm";
  }
  return "?";
}

}  // namespace

MirrorMap MirrorMap::euclidean(Vector lambda) {
  require_positive(lambda, "Euclidean map Λ");
  return MirrorMap(Diagonal{std::move(lambda)});
}

MirrorMap MirrorMap::full(Matrix A) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw std::invalid_argument("FullEuclidean map needs a non-empty square matrix");
  }
  if (!A.allFinite()) throw std::invalid_argument("FullEuclidean map has non-finite entries");
  const double scale = A.cwiseAbs().maxCoeff();
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("FullEuclidean map must be symmetric");
  }
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("FullEuclidean map is not positive definite");
  }
  return MirrorMap(Full{std::move(A), std::move(llt)});
}

MirrorMap MirrorMap::pnorm(double a) {
  if (!(a > 1.0 && a <= 2.0)) {
    throw std::invalid_argument("p-norm map exponent must lie in (1, 2], got " + std::to_string(a));
  }
  return MirrorMap(PNorm{a});
}

MirrorMap::Kind MirrorMap::kind() const {
  return static_cast<Kind>(storage_.index());
}

Index MirrorMap::dimension() const {
  if (auto* d = std::get_if<Diagonal>(&storage_)) return d->lambda.size();
  if (auto* f = std::get_if<Full>(&storage_)) return f->A.rows();
  return 0;
}

namespace {
void check_dim(const MirrorMap& m, const Vector& x) {
  if (m.dimension() != 0 && x.size() != m.dimension()) {
    throw std::invalid_argument("mirror map dimension " + std::to_string(m.dimension()) +
                                " does not match vector of size " + std::to_string(x.size()));
  }
}
}  // namespace

double MirrorMap::value(const Vector& theta) const {
  check_dim(*this, theta);
  if (auto* d = std::get_if<Diagonal>(&storage_)) {
    return 0.5 * theta.dot(d->lambda.cwiseProduct(theta));
  }
  if (auto* f = std::get_if<Full>(&storage_)) return 0.5 * theta.dot(f->A * theta);
  const double a = std::get<PNorm>(storage_).a;
  const double nrm = lp_norm(theta, Exponent::finite(a));
  return nrm * nrm / (2.0 * (a - 1.0));
}

Vector MirrorMap::grad(const Vector& theta) const {
  check_dim(*this, theta);
  require_finite(theta, "θ");
  if (auto* d = std::get_if<Diagonal>(&storage_)) return d->lambda.cwiseProduct(theta);
  if (auto* f = std::get_if<Full>(&storage_)) return f->A * theta;
  const double a = std::get<PNorm>(storage_).a;
  return half_sq_norm_grad(theta, Exponent::finite(a)) / (a - 1.0);
}

Vector MirrorMap::grad_star(const Vector& z) const {
  check_dim(*this, z);
  require_finite(z, "z");
  if (auto* d = std::get_if<Diagonal>(&storage_)) return z.cwiseQuotient(d->lambda);
  if (auto* f = std::get_if<Full>(&storage_)) return f->llt.solve(z);
  const double a = std::get<PNorm>(storage_).a;
  return (a - 1.0) * half_sq_norm_grad(z, Exponent::finite(a).conjugate());
}

double MirrorMap::bregman(const Vector& x, const Vector& y) const {
  require_same_dimension(x, y, "bregman");
  check_dim(*this, x);
  const Vector diff = x - y;
  if (auto* d = std::get_if<Diagonal>(&storage_)) {
    return 0.5 * diff.dot(d->lambda.cwiseProduct(diff));
  }
  if (auto* f = std::get_if<Full>(&storage_)) return 0.5 * diff.dot(f->A * diff);
  return value(x) - value(y) - grad(y).dot(diff);
}

double MirrorMap::dual_norm_sq(const Vector& z) const {
  check_dim(*this, z);
  if (auto* d = std::get_if<Diagonal>(&storage_)) return z.dot(z.cwiseQuotient(d->lambda));
  if (auto* f = std::get_if<Full>(&storage_)) return z.dot(f->llt.solve(z));
  const double a = std::get<PNorm>(storage_).a;
  const double nrm = lp_norm(z, Exponent::finite(a).conjugate());
  return nrm * nrm;
}

const Vector& MirrorMap::diagonal() const {
  if (auto* d = std::get_if<Diagonal>(&storage_)) return d->lambda;
  throw std::invalid_argument(std::string("diagonal() called on a ") + kind_name(kind()) + " map");
}

const Matrix& MirrorMap::matrix() const {
  if (auto* f = std::get_if<Full>(&storage_)) return f->A;
  throw std::invalid_argument(std::string("matrix() called on a ") + kind_name(kind()) + " map");
}

double MirrorMap::pnorm_exponent() const {
  if (auto* p = std::get_if<PNorm>(&storage_)) return p->a;
  throw std::invalid_argument(std::string("pnorm_exponent() called on a ") + kind_name(kind()) +
                              " map");
}

double log_dimension_exponent(Index d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  return std::min(2.0, 1.0 + 1.0 / std::log(2.0 * static_cast<double>(d)));
}

}  // namespace geomopt
