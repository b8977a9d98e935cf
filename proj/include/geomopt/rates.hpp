#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "geomopt/geometry.hpp"

namespace geomopt {

/// ζ(2).
inline constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

/// Two-sided minimax rate. Without constants (constants_included = false) the
/// bounds hold up to universal factors and lower == upper.
struct RateBound {
  double lower = 0.0;
  double upper = 0.0;
  std::string regime;
  bool constants_included = false;
};

/// Catalog lookup, in order:
///   unit ℓp ball, p >= 2, with ℓr gradients      1 ∧ d^{1/2−1/p} (d^{1/2−1/r} if r > 2) / √n
///   unit ℓp ball, p in [1, 2], with ℓ_{p*}        1 ∧ √(log(2d)/n) or 1 ∧ √(1/(n(p−1)))
///   quadratically convex Θ and γ                   [1/(8√log 3), 1] · sup_Θ γ*(θ)/√n
///   quadratically convex Θ, (weighted) ℓr, r < 2   [1/16, 1] · sup_Θ ‖θ/γ(e·)‖₂/√n, n >= 2d
/// Rotated sets are looked up through their unrotated version. Throws
/// UnsupportedError outside the catalog.
RateBound minimax_rate(const SetDescriptor& set, const NormDescriptor& norm, Index d, Index n);

/// (1/(8√(n log 3))) (1 − k/(n log 3)) sup_{θ∈Θ, ‖θ‖₀<=k} ‖θ/γ(e·)‖₂, clipped at 0.
double sparse_lower_bound(const SetDescriptor& set, const NormDescriptor& norm, Index n, Index k);

/// The saddle-point diagonal scaling λ* for quadratically convex Θ:
/// λ*_j = √n |g*_j| / |θ*_j| with (θ*, g*) maximizing θᵀg over Θ × QHull(B_γ).
/// Coordinates with θ*_j = 0 get a finite value that leaves both suprema unchanged.
Vector optimal_lambda(const SetDescriptor& set, const NormDescriptor& norm, Index n);

/// (1/(2n)) [sup_Θ Σ λ_j θ_j² + n sup_{g ∈ QHull(B_γ)} Σ g_j²/λ_j].
double preconditioned_bound(const SetDescriptor& set, const NormDescriptor& norm,
                            const Vector& lambda, Index n);

struct SaddleValues {
  double inf_sup = 0.0;
  double sup_inf = 0.0;
  /// 2 · grid_resolution · max(inf_sup, sup_inf).
  double tolerance = 0.0;
};

/// Grid evaluation of inf_λ sup_{θ,g} and sup_{θ,g} inf_λ of
/// Σ λ_j θ_j² + n Σ g_j²/λ_j over Θ × QHull(B_γ), d <= 3.
SaddleValues saddle_bruteforce(const SetDescriptor& set, const NormDescriptor& norm, Index n,
                               double grid_resolution);

/// Greedy subset of {±1}^d with pairwise ℓ1 distance >= d/2 and size >= ⌈e^{d/8}⌉.
/// Lexicographic scan for d <= 20, seeded random sampling (10 attempts) above.
std::vector<Vector> gv_packing(Index d, std::uint64_t seed = 0);

struct SeparationKl {
  double separation = 0.0;
  double kl = 0.0;
};

/// sep = 2(δ/d)[d^{1/p*} − (d − ham)^{1/p*}], kl = δ log((1+δ)/(1−δ)).
SeparationKl separation_and_kl(Exponent p, Index d, double delta, Index hamming_distance);

}  // namespace geomopt
