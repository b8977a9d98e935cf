#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomopt/geometry.hpp"

namespace geomopt {

enum class AdversaryFamily { Lp, WeightedLp };

/// A fixed gradient sequence that forces large regret on methods of linear
/// type, together with the regret value it certifies.
struct AdversarialInstance {
  std::vector<Vector> gradients;
  SetDescriptor comparator_set;
  NormDescriptor gradient_norm;
  double certified_lower_bound = 0.0;
  double delta_used = 0.0;
  AdversaryFamily family = AdversaryFamily::Lp;
  /// p for the ℓp family.
  double p = 0.0;
  /// β for the weighted family.
  Vector beta;
  /// Set when u, v came from numerical search instead of closed forms; the
  /// bound is then the measured regret of the targeted method.
  bool heuristic = false;
  /// Accumulated rotation U; gradients are U g₀ and γ is read as γ(Uᵀ g).
  std::optional<Matrix> rotation;

  Index dimension() const;
  /// γ(g), accounting for rotation.
  double gradient_norm_of(const Vector& g) const;
};

struct ExtremalPair {
  Vector u;
  Vector v;
};

/// u ∈ argmax_{‖x‖_q<=1} Σ c_j x_j², v ∈ argmin_{‖x‖_q=1} Σ c_j x_j² for c > 0,
/// q >= 2. Ties go to the lowest index.
ExtremalPair extremal_uv(const Vector& c, Exponent q);

/// Counts for the four blocks u, −u, v, −v (in that order).
struct ScheduleCounts {
  Index u = 0;
  Index minus_u = 0;
  Index v = 0;
  Index minus_v = 0;
};

/// ⌊n/4⌋, ⌊n/4⌋, ⌊(n/4)(1+δ)⌋ and the remainder.
ScheduleCounts schedule_counts(Index n, double delta);

/// Lower-bound sequence against θ ← θ − Λ⁻¹ g over the unit ℓp ball with
/// ‖g‖_q <= 1, p ∈ [1, 2], q = p*. d = Λ.size(), n >= 4.
AdversarialInstance lp_hard_instance(const Vector& lambda, double p, Index n);

/// Same construction for a general positive definite A; u and v are found by
/// projected ascent/descent on the ℓq sphere with 32 restarts, and the bound is
/// the measured regret of θ ← θ − A⁻¹g.
AdversarialInstance lp_hard_instance_general(const Matrix& A, double p, Index n,
                                             std::uint64_t seed);

/// Lower-bound sequence against OGD(α) over Box(1) with ‖β⊙g‖₁ <= 1.
/// α = 0 selects δ = 1.
AdversarialInstance wlp_hard_instance(const Vector& beta, double alpha, Index n);

/// g ↦ U g and Θ ↦ UΘ. U must be orthogonal to 1e-10.
AdversarialInstance rotate(const AdversarialInstance& instance, const Matrix& U);

/// sup_{θ ∈ Θ} Σ ⟨g_i, θ_i − θ⟩ for the given played iterates.
double max_linear_regret(const AdversarialInstance& instance, const std::vector<Vector>& played);

}  // namespace geomopt
