#pragma once

#include <optional>

#include "geomopt/types.hpp"

namespace geomopt {

enum class NormKind { Lp, WeightedLr };

/// A gradient norm γ: either ‖g‖_p, or ‖β ⊙ g‖_r with β > 0.
class NormDescriptor {
 public:
  static NormDescriptor lp(Exponent p);
  static NormDescriptor weighted(Exponent r, Vector beta);

  NormKind kind() const { return kind_; }
  Exponent exponent() const { return exponent_; }
  bool is_weighted() const { return kind_ == NormKind::WeightedLr; }
  /// β; empty for the unweighted kind.
  const Vector& weights() const { return weights_; }
  /// Weight vector at dimension d (ones for the unweighted kind).
  Vector effective_weights(Index d) const;
  /// Dimension for weighted norms, nullopt for ℓp which applies to any d.
  std::optional<Index> dimension() const;

  double operator()(const Vector& x) const;
  /// γ(e_j).
  double unit_value(Index j) const;
  /// The unit ball of γ is quadratically convex iff the exponent is >= 2.
  bool quadratically_convex() const { return exponent_.at_least(2.0); }
  /// γ* as a descriptor: ℓp -> ℓp*, ‖β⊙·‖_r -> ‖(1/β)⊙·‖_r*.
  NormDescriptor dual() const;

  bool operator==(const NormDescriptor& other) const;

 private:
  NormDescriptor(NormKind kind, Exponent exponent, Vector weights)
      : kind_(kind), exponent_(exponent), weights_(std::move(weights)) {}
  NormKind kind_;
  Exponent exponent_;
  Vector weights_;
};

/// γ*(x). Throws on dimension mismatch for weighted norms.
double dual_norm(const NormDescriptor& norm, const Vector& x);

/// A maximizer of ⟨z, ψ⟩ over ‖ψ‖_p <= 1. For p = 1 the first index of
/// maximal |z_j| is used.
Vector dual_attainer(const Vector& z, Exponent p);

/// The norm whose unit ball is the quadratic convex hull of norm's unit ball.
NormDescriptor qhull(const NormDescriptor& norm);

enum class SetKind { LpBall, WeightedLrBall, Box };

/// Orthosymmetric constraint set Θ: {‖θ‖_p ≤ ρ}, {‖w⊙θ‖_r ≤ ρ} or ∏[-a_j, a_j],
/// optionally rotated (Θ = U Θ₀).
class SetDescriptor {
 public:
  static SetDescriptor lp_ball(Exponent p, double radius, Index d);
  static SetDescriptor weighted_ball(Exponent r, Vector weights, double radius);
  static SetDescriptor box(Vector half_widths);

  SetKind kind() const { return kind_; }
  Index dimension() const { return dim_; }
  Exponent exponent() const { return exponent_; }
  double radius() const { return radius_; }
  /// w for weighted balls, empty otherwise.
  const Vector& weights() const { return weights_; }
  /// a for boxes, empty otherwise.
  const Vector& half_widths() const { return half_widths_; }
  const std::optional<Matrix>& rotation() const { return rotation_; }

  /// Gauge of the unrotated set: Θ₀ = {x : gauge(x) <= 1}.
  double gauge(const Vector& x) const;
  /// Membership with relative tolerance 1e-12 (rotation applied).
  bool contains(const Vector& x) const;
  bool quadratically_convex() const;
  /// Tags the set as UΘ. U must be orthogonal to 1e-10.
  SetDescriptor rotated(const Matrix& U) const;
  /// The same set with any rotation dropped.
  SetDescriptor unrotated() const;

  bool operator==(const SetDescriptor& other) const;

 private:
  SetDescriptor() : exponent_(Exponent::infinity()) {}
  SetKind kind_ = SetKind::Box;
  Index dim_ = 0;
  Exponent exponent_;
  double radius_ = 1.0;
  Vector weights_;
  Vector half_widths_;
  std::optional<Matrix> rotation_;
};

inline constexpr double kMembershipTolerance = 1e-12;

/// Unit ball {g : γ(g) <= 1} of a norm, as a set at dimension d.
SetDescriptor norm_ball(const NormDescriptor& norm, Index d);

/// sup_{‖φ‖_p <= radius} ‖s ⊙ φ‖_t for s > 0.
double sup_scaled_norm(const Vector& s, Exponent t, Exponent p, double radius);

/// sup_{θ ∈ Θ} ‖s ⊙ θ‖_t (Θ unrotated).
double sup_norm_over_set(const SetDescriptor& set, const Vector& s, Exponent t);

/// A maximizer of ‖s ⊙ θ‖_t over Θ, with non-negative entries. When the
/// maximizers form a sphere piece (t = p = 2 and several minimal weights) the
/// mass is spread evenly over the tied coordinates.
Vector argsup_norm_over_set(const SetDescriptor& set, const Vector& s, Exponent t);

/// sup over θ ∈ Θ and g ∈ QHull(B_γ(0,1)) of θᵀg, i.e. sup_Θ qhull(γ)*(θ).
double support_value(const SetDescriptor& set, const NormDescriptor& norm);

struct Comparator {
  Vector theta;
  double value;
};

/// argmin/min over θ ∈ Θ of ⟨G, θ⟩. Ties go to the lowest coordinate index.
Comparator best_in_hindsight(const SetDescriptor& set, const Vector& G);

/// A feasible point: x itself if x ∈ Θ, otherwise the radial retraction onto
/// the boundary (balls) or the coordinate clip (boxes).
Vector retract(const SetDescriptor& set, const Vector& x);

/// An orthogonal matrix drawn from the Haar measure (QR of a Gaussian matrix).
Matrix random_rotation(Index d, std::uint64_t seed);

}  // namespace geomopt
