#include "geomopt/optimizers.hpp"

#include <cmath>

namespace geomopt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_stepsize(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument(std::string(what) + " must be a positive finite number");
  }
}

void require_map_dim(const MirrorMap& map, Index d) {
  if (map.dimension() != 0 && map.dimension() != d) {
    throw std::invalid_argument("mirror map dimension does not match θ₀");
  }
}

double schedule_at(const DualAveraging& da, Index k) {
  if (!da.schedule) return da.alpha;
  const double a = da.schedule(k);
  require_stepsize(a, "dual averaging schedule value");
  return a;
}

}  // namespace

std::string algorithm_name(const Algorithm& alg) {
  return std::visit(Overloaded{
                        [](const Ogd&) { return std::string("ogd"); },
                        [](const DiagScaled&) { return std::string("diag_scaled"); },
                        [](const FullEuclidean&) { return std::string("full_euclidean"); },
                        [](const PNormMd&) { return std::string("pnorm_md"); },
                        [](const DualAveraging&) { return std::string("dual_averaging"); },
                        [](const AdaGradDiag&) { return std::string("adagrad"); },
                    },
                    alg);
}

void validate(const OptimizerSpec& spec) {
  require_finite(spec.theta0, "θ₀");
  if (spec.theta0.size() == 0) throw std::invalid_argument("θ₀ is empty");
  const Index d = spec.theta0.size();
  std::visit(Overloaded{
                 [](const Ogd& o) { require_stepsize(o.alpha, "OGD α"); },
                 [&](const DiagScaled& o) {
                   require_positive(o.lambda, "Λ");
                   require_same_dimension(o.lambda, spec.theta0, "Λ vs θ₀");
                 },
                 [&](const FullEuclidean& o) {
                   require_stepsize(o.alpha, "FullEuclidean α");
                   if (o.map.kind() != MirrorMap::Kind::FullEuclidean) {
                     throw std::invalid_argument("FullEuclidean optimizer needs a FullEuclidean map");
                   }
                   require_map_dim(o.map, d);
                 },
                 [](const PNormMd& o) {
                   require_stepsize(o.alpha, "p-norm α");
                   MirrorMap::pnorm(o.a);
                 },
                 [&](const DualAveraging& o) {
                   if (!o.schedule) require_stepsize(o.alpha, "dual averaging α");
                   require_map_dim(o.map, d);
                 },
                 [&](const AdaGradDiag& o) {
                   require_stepsize(o.eta, "AdaGrad η");
                   if (!(o.eps >= 0.0) || !std::isfinite(o.eps)) {
                     throw std::invalid_argument("AdaGrad ε must be >= 0");
                   }
                   if (o.box) {
                     require_positive(*o.box, "AdaGrad box");
                     require_same_dimension(*o.box, spec.theta0, "AdaGrad box vs θ₀");
                   }
                 },
             },
             spec.algorithm);
}

OptimizerState initial_state(const OptimizerSpec& spec) {
  validate(spec);
  OptimizerState s;
  s.theta = spec.theta0;
  const Index d = spec.theta0.size();
  std::visit(Overloaded{
                 [&](const PNormMd& o) { s.dual = MirrorMap::pnorm(o.a).grad(spec.theta0); },
                 [&](const DualAveraging&) { s.dual = Vector::Zero(d); },
                 [&](const AdaGradDiag& o) {
                   s.sq_sum = Vector::Zero(d);
                   if (o.box) s.theta = s.theta.cwiseMax(-*o.box).cwiseMin(*o.box);
                 },
                 [](const auto&) {},
             },
             spec.algorithm);
  return s;
}

OptimizerState step(const OptimizerSpec& spec, const OptimizerState& state, const Vector& g) {
  require_same_dimension(g, state.theta, "gradient");
  if (g.hasNaN()) throw std::invalid_argument("gradient contains NaN");
  require_finite(g, "gradient");
  OptimizerState next = state;
  next.k = state.k + 1;
  std::visit(Overloaded{
                 [&](const Ogd& o) { next.theta -= o.alpha * g; },
                 [&](const DiagScaled& o) { next.theta -= g.cwiseQuotient(o.lambda); },
                 [&](const FullEuclidean& o) { next.theta -= o.alpha * o.map.grad_star(g); },
                 [&](const PNormMd& o) {
                   const MirrorMap h = MirrorMap::pnorm(o.a);
                   next.dual -= o.alpha * g;
                   next.theta = h.grad_star(next.dual);
                 },
                 [&](const DualAveraging& o) {
                   next.dual += g;
                   const double a = schedule_at(o, next.k);
                   next.theta = o.map.grad_star(o.map.grad(spec.theta0) - a * next.dual);
                 },
                 [&](const AdaGradDiag& o) {
                   next.sq_sum += g.cwiseProduct(g);
                   for (Index j = 0; j < g.size(); ++j) {
                     if (g[j] == 0.0) continue;
                     next.theta[j] -= o.eta * g[j] / (o.eps + std::sqrt(next.sq_sum[j]));
                   }
                   if (o.box) next.theta = next.theta.cwiseMax(-*o.box).cwiseMin(*o.box);
                 },
             },
             spec.algorithm);
  if (!next.theta.allFinite()) throw std::runtime_error("optimizer iterate became non-finite");
  return next;
}

std::vector<Vector> play(const OptimizerSpec& spec, const std::vector<Vector>& gs) {
  std::vector<Vector> played;
  played.reserve(gs.size());
  OptimizerState s = initial_state(spec);
  for (const Vector& g : gs) {
    played.push_back(s.theta);
    s = step(spec, s, g);
  }
  return played;
}

double linear_regret(const std::vector<Vector>& played, const std::vector<Vector>& gs,
                     const Vector& theta) {
  const auto c = cumulative_linear_regret(played, gs, theta);
  return c.empty() ? 0.0 : c.back();
}

std::vector<double> cumulative_linear_regret(const std::vector<Vector>& played,
                                             const std::vector<Vector>& gs, const Vector& theta) {
  if (played.size() != gs.size()) {
    throw std::invalid_argument("played iterates and gradients differ in length");
  }
  std::vector<double> out;
  out.reserve(gs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    acc += gs[i].dot(played[i] - theta);
    out.push_back(acc);
  }
  return out;
}

MatchedMap matching_map(const OptimizerSpec& spec) {
  const Index d = spec.theta0.size();
  return std::visit(
      Overloaded{
          [d](const Ogd& o) {
            return MatchedMap{MirrorMap::euclidean(Vector::Ones(d)), o.alpha};
          },
          [](const DiagScaled& o) { return MatchedMap{MirrorMap::euclidean(o.lambda), 1.0}; },
          [](const FullEuclidean& o) { return MatchedMap{o.map, o.alpha}; },
          [](const PNormMd& o) { return MatchedMap{MirrorMap::pnorm(o.a), o.alpha}; },
          [](const DualAveraging& o) -> MatchedMap {
            if (o.schedule) {
              throw UnsupportedError("scheduled dual averaging has no constant-stepsize bound");
            }
            return MatchedMap{o.map, o.alpha};
          },
          [](const AdaGradDiag&) -> MatchedMap {
            throw UnsupportedError("AdaGrad has no fixed mirror map; use adagrad_bound");
          },
      },
      spec.algorithm);
}

double md_regret_bound(const MirrorMap& map, double alpha, const Vector& theta,
                       const Vector& theta0, const std::vector<Vector>& gs) {
  require_stepsize(alpha, "α");
  double sq = 0.0;
  for (const Vector& g : gs) sq += map.dual_norm_sq(g);
  return map.bregman(theta, theta0) / alpha + 0.5 * alpha * sq;
}

double adagrad_bound(const std::vector<Vector>& gs) {
  if (gs.empty()) return 0.0;
  Vector s = Vector::Zero(gs.front().size());
  for (const Vector& g : gs) {
    require_same_dimension(g, s, "adagrad_bound");
    s += g.cwiseProduct(g);
  }
  return 2.0 * std::sqrt(2.0) * s.cwiseSqrt().sum();
}

namespace {

struct PNormScales {
  double diameter;  // sup_Θ ‖θ − θ₀‖_a
  double grad;      // sup_{γ(g)<=1} ‖g‖_{a*}
};

PNormScales pnorm_scales(const SetDescriptor& set, const NormDescriptor& norm, double a,
                         const Vector& theta0) {
  MirrorMap::pnorm(a);
  if (set.rotation()) throw UnsupportedError("p-norm stepsize: rotated sets are not supported");
  const Index d = set.dimension();
  if (theta0.size() != d) throw std::invalid_argument("θ₀ dimension does not match the set");
  const Exponent ea = Exponent::finite(a);
  const Vector ones = Vector::Ones(d);
  double diameter = 0.0;
  if (theta0.isZero(0.0)) {
    diameter = sup_norm_over_set(set, ones, ea);
  } else if (set.kind() == SetKind::Box) {
    diameter = lp_norm(set.half_widths() + theta0.cwiseAbs(), ea);
  } else {
    throw UnsupportedError("p-norm stepsize: nonzero θ₀ is supported for boxes only");
  }
  const double grad = sup_norm_over_set(norm_ball(norm, d), ones, ea.conjugate());
  return {diameter, grad};
}

}  // namespace

double pnorm_default_stepsize(const SetDescriptor& set, const NormDescriptor& norm, double a,
                              Index n, const Vector& theta0) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const PNormScales s = pnorm_scales(set, norm, a, theta0);
  if (s.diameter == 0.0) throw std::invalid_argument("set has zero diameter");
  return s.diameter / (std::sqrt(static_cast<double>(n) * (a - 1.0)) * s.grad);
}

double pnorm_default_regret_bound(const SetDescriptor& set, const NormDescriptor& norm, double a,
                                  Index n, const Vector& theta0) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const PNormScales s = pnorm_scales(set, norm, a, theta0);
  return s.diameter * s.grad * std::sqrt(static_cast<double>(n) / (a - 1.0));
}

}  // namespace geomopt
