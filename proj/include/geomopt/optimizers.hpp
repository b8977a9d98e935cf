#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geomopt/geometry.hpp"
#include "geomopt/mirror_maps.hpp"

namespace geomopt {

/// θ ← θ − α g.
struct Ogd {
  double alpha;
};

/// θ ← θ − Λ⁻¹ g (the stepsize is folded into Λ).
struct DiagScaled {
  Vector lambda;
};

/// θ ← θ − α A⁻¹ g. `map` must be a FullEuclidean map.
struct FullEuclidean {
  MirrorMap map;
  double alpha;
};

/// Mirror descent with h = ‖·‖_a²/(2(a−1)): θ ← ∇h*(∇h(θ) − α g).
struct PNormMd {
  double a;
  double alpha;
};

/// Stepsize α_k for dual averaging, k = number of gradients seen (k >= 1).
using StepSchedule = std::function<double(Index)>;

/// θ_{k+1} = ∇h*(∇h(θ₀) − α_k Σ_{i<=k} g_i). Constant α unless `schedule` is set.
struct DualAveraging {
  MirrorMap map;
  double alpha;
  StepSchedule schedule;
};

/// Diagonal AdaGrad: S += g², θ ← θ − η g / (ε + √S).
/// With `box` set, the iterate is clipped to ∏[-box_j, box_j] after each step,
/// which is the diag(√S)-projection onto a box.
struct AdaGradDiag {
  double eta;
  double eps = 1e-12;
  std::optional<Vector> box;
};

using Algorithm = std::variant<Ogd, DiagScaled, FullEuclidean, PNormMd, DualAveraging, AdaGradDiag>;

struct OptimizerSpec {
  Algorithm algorithm;
  Vector theta0;
};

/// Short identifier, e.g. "ogd", "pnorm_md".
std::string algorithm_name(const Algorithm& alg);

/// Throws std::invalid_argument when stepsizes, Λ, a or dimensions are invalid.
void validate(const OptimizerSpec& spec);

struct OptimizerState {
  Vector theta;
  /// ∇h(θ) for PNormMd; Σg for DualAveraging; empty otherwise.
  Vector dual;
  /// Σ g² per coordinate (AdaGrad); empty otherwise.
  Vector sq_sum;
  Index k = 0;
};

OptimizerState initial_state(const OptimizerSpec& spec);

/// One update. The point played at this step is state.theta (pre-update).
OptimizerState step(const OptimizerSpec& spec, const OptimizerState& state, const Vector& g);

/// θ_1, ..., θ_n: the iterates played against gs.
std::vector<Vector> play(const OptimizerSpec& spec, const std::vector<Vector>& gs);

/// Σ ⟨g_i, θ_i − θ⟩.
double linear_regret(const std::vector<Vector>& played, const std::vector<Vector>& gs,
                     const Vector& theta);

/// Running sums of ⟨g_i, θ_i − θ⟩, one entry per step.
std::vector<double> cumulative_linear_regret(const std::vector<Vector>& played,
                                             const std::vector<Vector>& gs, const Vector& theta);

struct MatchedMap {
  MirrorMap map;
  double alpha;
};

/// The (h, α) pair for which the optimizer is mirror descent/dual averaging.
/// AdaGrad and scheduled dual averaging have no fixed pair and throw.
MatchedMap matching_map(const OptimizerSpec& spec);

/// B_h(θ, θ₀)/α + (α/2) Σ ‖g_i‖*².
double md_regret_bound(const MirrorMap& map, double alpha, const Vector& theta,
                       const Vector& theta0, const std::vector<Vector>& gs);

/// 2√2 Σ_j √(Σ_i g_ij²).
double adagrad_bound(const std::vector<Vector>& gs);

/// α = sup_Θ ‖θ − θ₀‖_a / (√(n(a−1)) · sup_{γ(g)<=1} ‖g‖_{a*}).
/// Nonzero θ₀ is supported for boxes only.
double pnorm_default_stepsize(const SetDescriptor& set, const NormDescriptor& norm, double a,
                              Index n, const Vector& theta0);

/// The regret bound attained with the default stepsize:
/// sup‖θ − θ₀‖_a · sup‖g‖_{a*} · √n / √(a−1).
double pnorm_default_regret_bound(const SetDescriptor& set, const NormDescriptor& norm, double a,
                                  Index n, const Vector& theta0);

}  // namespace geomopt
