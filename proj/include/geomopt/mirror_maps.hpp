#pragma once

#include <variant>

#include "geomopt/types.hpp"

namespace geomopt {

/// Distance generating function h for mirror descent and dual averaging.
///
///   Euclidean(Λ):      h(θ) = ½ θᵀ diag(Λ) θ
///   FullEuclidean(A):  h(θ) = ½ θᵀ A θ, A symmetric positive definite
///   PNorm(a):          h(θ) = ‖θ‖_a² / (2(a − 1)), a ∈ (1, 2]
///
/// Each h is 1-strongly convex with respect to a norm whose dual is exposed as
/// dual_norm_sq(): zᵀΛ⁻¹z, zᵀA⁻¹z and ‖z‖²_{a*} respectively. Maps are
/// immutable once built; FullEuclidean factorizes A at construction.
class MirrorMap {
 public:
  enum class Kind { Euclidean, FullEuclidean, PNorm };

  static MirrorMap euclidean(Vector lambda);
  static MirrorMap full(Matrix A);
  static MirrorMap pnorm(double a);

  Kind kind() const;
  /// Dimension; 0 for PNorm, which applies to any d.
  Index dimension() const;

  double value(const Vector& theta) const;
  Vector grad(const Vector& theta) const;
  /// Inverse of grad (the gradient of the convex conjugate h*).
  Vector grad_star(const Vector& z) const;
  /// B_h(x, y) = h(x) − h(y) − ∇h(y)ᵀ(x − y).
  double bregman(const Vector& x, const Vector& y) const;
  double dual_norm_sq(const Vector& z) const;

  /// Λ for Euclidean, A for FullEuclidean (as a dense matrix), exponent for PNorm.
  const Vector& diagonal() const;
  const Matrix& matrix() const;
  double pnorm_exponent() const;

 private:
  struct Diagonal {
    Vector lambda;
  };
  struct Full {
    Matrix A;
    Eigen::LLT<Matrix> llt;
  };
  struct PNorm {
    double a;
  };
  using Storage = std::variant<Diagonal, Full, PNorm>;

  explicit MirrorMap(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

/// a = 1 + 1/log(2d), the exponent under which p-norm mirror descent matches the
/// ℓ1/ℓ∞ geometry up to constants. Capped at 2, which only binds for d = 1.
double log_dimension_exponent(Index d);

}  // namespace geomopt
