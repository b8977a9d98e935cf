#pragma once

#include <cstdint>

#include "geomopt/geometry.hpp"

namespace geomopt {

enum class StochasticKind { SparseCoord, DenseSign, RectAbs, OneDim };

/// A family member P_v from the stochastic lower-bound constructions.
///
///   SparseCoord: X = ±v_j e_j w.p. (1 ± δ)/(2d), F = θᵀx, Θ = ℓp ball.
///   DenseSign:   X_j = ±v_j w.p. (1 ± δ)/2 independently, F = η θᵀx, Θ = ℓp ball.
///   RectAbs:     X = ±v_j e_j w.p. p_j (1 ± δ_j)/2,
///                F = Σ_j |x_j| |θ_j − a_j x_j| / γ(e_j), Θ = Box(a).
///   OneDim:      X = ±v w.p. (1 ± δ)/2, F = |θ − x|, Θ = [−1, 1].
struct StochasticInstance {
  StochasticKind kind = StochasticKind::SparseCoord;
  /// Sign vector v ∈ {±1}^d (size 1 for OneDim).
  Vector v;
  /// δ per coordinate for RectAbs, a single entry otherwise.
  Vector delta;
  /// Coordinate probabilities (RectAbs).
  Vector p_weights;
  /// Box half-widths (RectAbs).
  Vector a;
  /// Loss scale (DenseSign).
  double eta = 1.0;
  NormDescriptor gamma = NormDescriptor::lp(Exponent::finite(2.0));
  SetDescriptor comparator_set = SetDescriptor::box(Vector::Ones(1));

  Index dimension() const { return v.size(); }
};

StochasticInstance sparse_coord(const Vector& v, double delta, Exponent p, Exponent r);
/// eta <= 0 selects the default d^{−1/r}.
StochasticInstance dense_sign(const Vector& v, double delta, Exponent p, Exponent r,
                              double eta = 0.0);
/// Empty p_weights selects p_j ∝ (a_j/γ(e_j))².
StochasticInstance rect_abs(const Vector& v, const Vector& delta, const Vector& a,
                            const NormDescriptor& gamma, const Vector& p_weights = Vector());
StochasticInstance one_dim(double v, double delta);

/// Throws std::invalid_argument when an invariant fails.
void validate(const StochasticInstance& inst);

/// Draw i of the stream keyed by seed; independent of evaluation order.
Vector sample(const StochasticInstance& inst, std::uint64_t seed, std::uint64_t i);

double loss(const StochasticInstance& inst, const Vector& theta, const Vector& x);

/// A member of ∂_θ F(θ, x), with sign(0) = +1 for the absolute-value kinds.
Vector subgradient(const StochasticInstance& inst, const Vector& theta, const Vector& x);

/// f_P(θ) = E F(θ, X).
double population_value(const StochasticInstance& inst, const Vector& theta);
/// inf over Θ of f_P.
double population_infimum(const StochasticInstance& inst);
/// f_P(θ) − inf_Θ f_P.
double population_gap(const StochasticInstance& inst, const Vector& theta);
/// A minimizer of f_P over Θ.
Vector population_minimizer(const StochasticInstance& inst);

/// Σ_j p_j a_j δ_j / γ(e_j) · 1{sign(θ_j) ≠ v_j}, sign(0) = 0 (RectAbs only).
double hamming_separation(const StochasticInstance& inst, const Vector& theta);

/// δ used by the sparse construction at sample size n: min(½, √(d/(48n))).
double sparse_minimax_delta(Index d, Index n);
/// δ used by the dense construction: min(½, 1/√(48n)).
double dense_minimax_delta(Index n);
/// δ used by the one-dimensional construction: min(½, 1/√(6n)).
double one_dim_minimax_delta(Index n);

}  // namespace geomopt
