#include "geomopt/stochastic.hpp"

#include <cmath>
#include <random>

namespace geomopt {

namespace {

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    engine_.seed(seq);
  }
  /// Uniform on [0, 1) from the top 53 bits; identical on every platform.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

void require_signs(const Vector& v) {
  if (v.size() == 0) throw std::invalid_argument("sign vector v is empty");
  for (Index j = 0; j < v.size(); ++j) {
    if (v[j] != 1.0 && v[j] != -1.0) throw std::invalid_argument("v must have entries ±1");
  }
}

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("δ must lie in [0, 1/2], got " + std::to_string(delta));
  }
}

Vector unit_values(const NormDescriptor& gamma, Index d) {
  Vector out(d);
  for (Index j = 0; j < d; ++j) out[j] = gamma.unit_value(j);
  return out;
}

// Index drawn from the cumulative weights; the last index absorbs rounding.
Index draw_index(const Vector& w, double u) {
  double acc = 0.0;
  for (Index j = 0; j + 1 < w.size(); ++j) {
    acc += w[j];
    if (u < acc) return j;
  }
  return w.size() - 1;
}

}  // namespace

StochasticInstance sparse_coord(const Vector& v, double delta, Exponent p, Exponent r) {
  StochasticInstance inst;
  inst.kind = StochasticKind::SparseCoord;
  inst.v = v;
  inst.delta = Vector::Constant(1, delta);
  inst.gamma = NormDescriptor::lp(r);
  inst.comparator_set = SetDescriptor::lp_ball(p, 1.0, v.size());
  validate(inst);
  return inst;
}

StochasticInstance dense_sign(const Vector& v, double delta, Exponent p, Exponent r, double eta) {
  StochasticInstance inst;
  inst.kind = StochasticKind::DenseSign;
  inst.v = v;
  inst.delta = Vector::Constant(1, delta);
  inst.gamma = NormDescriptor::lp(r);
  inst.comparator_set = SetDescriptor::lp_ball(p, 1.0, v.size());
  inst.eta = eta > 0.0 ? eta : std::pow(static_cast<double>(v.size()), -r.reciprocal());
  validate(inst);
  return inst;
}

StochasticInstance rect_abs(const Vector& v, const Vector& delta, const Vector& a,
                            const NormDescriptor& gamma, const Vector& p_weights) {
  StochasticInstance inst;
  inst.kind = StochasticKind::RectAbs;
  inst.v = v;
  inst.delta = delta;
  inst.a = a;
  inst.gamma = gamma;
  require_positive(a, "box half-widths a");
  inst.comparator_set = SetDescriptor::box(a);
  if (p_weights.size() == 0) {
    const Vector ratio = a.cwiseQuotient(unit_values(gamma, a.size()));
    inst.p_weights = ratio.cwiseProduct(ratio) / ratio.squaredNorm();
  } else {
    inst.p_weights = p_weights;
  }
  validate(inst);
  return inst;
}

StochasticInstance one_dim(double v, double delta) {
  StochasticInstance inst;
  inst.kind = StochasticKind::OneDim;
  inst.v = Vector::Constant(1, v);
  inst.delta = Vector::Constant(1, delta);
  inst.gamma = NormDescriptor::lp(Exponent::finite(1.0));
  inst.comparator_set = SetDescriptor::box(Vector::Ones(1));
  validate(inst);
  return inst;
}

void validate(const StochasticInstance& inst) {
  require_signs(inst.v);
  const Index d = inst.dimension();
  if (inst.comparator_set.dimension() != d) {
    throw std::invalid_argument("comparator set dimension does not match v");
  }
  if (inst.kind == StochasticKind::RectAbs) {
    require_same_dimension(inst.delta, inst.v, "δ vs v");
    require_same_dimension(inst.a, inst.v, "a vs v");
    require_same_dimension(inst.p_weights, inst.v, "p_weights vs v");
    require_finite(inst.p_weights, "p_weights");
    if ((inst.p_weights.array() < 0.0).any() || std::abs(inst.p_weights.sum() - 1.0) > 1e-12) {
      throw std::invalid_argument("p_weights must be nonnegative and sum to 1");
    }
    if (auto dim = inst.gamma.dimension(); dim && *dim != d) {
      throw std::invalid_argument("γ dimension does not match v");
    }
  } else if (inst.delta.size() != 1) {
    throw std::invalid_argument("δ must be a scalar for this instance kind");
  }
  for (Index j = 0; j < inst.delta.size(); ++j) require_delta(inst.delta[j]);
  if (inst.kind == StochasticKind::OneDim && d != 1) {
    throw std::invalid_argument("one-dimensional instance needs d = 1");
  }
  if (inst.kind == StochasticKind::DenseSign) {
    if (!(inst.eta > 0.0) || !std::isfinite(inst.eta)) throw std::invalid_argument("η must be > 0");
    // γ(ηx) = η d^{1/r} for x ∈ {±1}^d.
    if (inst.eta * inst.gamma(Vector::Ones(d)) > 1.0 + 1e-12) {
      throw std::invalid_argument("η too large: realizable gradients would leave the γ unit ball");
    }
  }
}

Vector sample(const StochasticInstance& inst, std::uint64_t seed, std::uint64_t i) {
  Stream s(seed, i);
  const Index d = inst.dimension();
  Vector x = Vector::Zero(d);
  switch (inst.kind) {
    case StochasticKind::SparseCoord: {
      const Index j = std::min<Index>(d - 1, static_cast<Index>(s.uniform() * static_cast<double>(d)));
      const double sgn = s.uniform() < (1.0 + inst.delta[0]) / 2.0 ? 1.0 : -1.0;
      x[j] = sgn * inst.v[j];
      break;
    }
    case StochasticKind::DenseSign:
      for (Index j = 0; j < d; ++j) {
        x[j] = (s.uniform() < (1.0 + inst.delta[0]) / 2.0 ? 1.0 : -1.0) * inst.v[j];
      }
      break;
    case StochasticKind::RectAbs: {
      const Index j = draw_index(inst.p_weights, s.uniform());
      const double sgn = s.uniform() < (1.0 + inst.delta[j]) / 2.0 ? 1.0 : -1.0;
      x[j] = sgn * inst.v[j];
      break;
    }
    case StochasticKind::OneDim:
      x[0] = (s.uniform() < (1.0 + inst.delta[0]) / 2.0 ? 1.0 : -1.0) * inst.v[0];
      break;
  }
  return x;
}

double loss(const StochasticInstance& inst, const Vector& theta, const Vector& x) {
  require_same_dimension(theta, inst.v, "θ");
  require_same_dimension(x, inst.v, "x");
  switch (inst.kind) {
    case StochasticKind::SparseCoord: return theta.dot(x);
    case StochasticKind::DenseSign: return inst.eta * theta.dot(x);
    case StochasticKind::RectAbs: {
      double acc = 0.0;
      for (Index j = 0; j < x.size(); ++j) {
        if (x[j] == 0.0) continue;
        acc += std::abs(x[j]) * std::abs(theta[j] - inst.a[j] * x[j]) / inst.gamma.unit_value(j);
      }
      return acc;
    }
    case StochasticKind::OneDim: return std::abs(theta[0] - x[0]);
  }
  return 0.0;
}

Vector subgradient(const StochasticInstance& inst, const Vector& theta, const Vector& x) {
  require_same_dimension(theta, inst.v, "θ");
  require_same_dimension(x, inst.v, "x");
  switch (inst.kind) {
    case StochasticKind::SparseCoord: return x;
    case StochasticKind::DenseSign: return inst.eta * x;
    case StochasticKind::RectAbs: {
      Vector g = Vector::Zero(x.size());
      for (Index j = 0; j < x.size(); ++j) {
        if (x[j] == 0.0) continue;
        g[j] = std::abs(x[j]) / inst.gamma.unit_value(j) * sign_plus(theta[j] - inst.a[j] * x[j]);
      }
      return g;
    }
    case StochasticKind::OneDim: return Vector::Constant(1, sign_plus(theta[0] - x[0]));
  }
  return Vector();
}

double population_value(const StochasticInstance& inst, const Vector& theta) {
  require_same_dimension(theta, inst.v, "θ");
  const double d = static_cast<double>(inst.dimension());
  switch (inst.kind) {
    case StochasticKind::SparseCoord: return inst.delta[0] / d * theta.dot(inst.v);
    case StochasticKind::DenseSign: return inst.eta * inst.delta[0] * theta.dot(inst.v);
    case StochasticKind::RectAbs: {
      double acc = 0.0;
      for (Index j = 0; j < theta.size(); ++j) {
        const double av = inst.a[j] * inst.v[j];
        const double dj = inst.delta[j];
        acc += inst.p_weights[j] / inst.gamma.unit_value(j) *
               ((1.0 + dj) / 2.0 * std::abs(theta[j] - av) + (1.0 - dj) / 2.0 * std::abs(theta[j] + av));
      }
      return acc;
    }
    case StochasticKind::OneDim: {
      const double dl = inst.delta[0];
      const double v = inst.v[0];
      return (1.0 + dl) / 2.0 * std::abs(theta[0] - v) + (1.0 - dl) / 2.0 * std::abs(theta[0] + v);
    }
  }
  return 0.0;
}

double population_infimum(const StochasticInstance& inst) {
  const double d = static_cast<double>(inst.dimension());
  const Exponent pstar = inst.comparator_set.exponent().conjugate();
  switch (inst.kind) {
    case StochasticKind::SparseCoord:
      return -inst.delta[0] / d * inst.comparator_set.radius() * lp_norm(inst.v, pstar);
    case StochasticKind::DenseSign:
      return -inst.eta * inst.delta[0] * inst.comparator_set.radius() * lp_norm(inst.v, pstar);
    case StochasticKind::RectAbs: {
      double acc = 0.0;
      for (Index j = 0; j < inst.v.size(); ++j) {
        acc += inst.p_weights[j] * inst.a[j] * (1.0 - inst.delta[j]) / inst.gamma.unit_value(j);
      }
      return acc;
    }
    case StochasticKind::OneDim: return 1.0 - inst.delta[0];
  }
  return 0.0;
}

double population_gap(const StochasticInstance& inst, const Vector& theta) {
  require_finite(theta, "θ");
  return population_value(inst, theta) - population_infimum(inst);
}

Vector population_minimizer(const StochasticInstance& inst) {
  switch (inst.kind) {
    case StochasticKind::SparseCoord:
    case StochasticKind::DenseSign:
      return best_in_hindsight(inst.comparator_set, inst.v).theta;
    case StochasticKind::RectAbs: return inst.a.cwiseProduct(inst.v);
    case StochasticKind::OneDim: return inst.v;
  }
  return Vector();
}

double hamming_separation(const StochasticInstance& inst, const Vector& theta) {
  if (inst.kind != StochasticKind::RectAbs) {
    throw UnsupportedError("Hamming separation is defined for the rectangle instance only");
  }
  require_same_dimension(theta, inst.v, "θ");
  double acc = 0.0;
  for (Index j = 0; j < theta.size(); ++j) {
    if (sign_zero(theta[j]) != inst.v[j]) {
      acc += inst.p_weights[j] * inst.a[j] * inst.delta[j] / inst.gamma.unit_value(j);
    }
  }
  return acc;
}

double sparse_minimax_delta(Index d, Index n) {
  if (d < 1 || n < 1) throw std::invalid_argument("d and n must be >= 1");
  return std::min(0.5, std::sqrt(static_cast<double>(d) / (48.0 * static_cast<double>(n))));
}

double dense_minimax_delta(Index n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return std::min(0.5, 1.0 / std::sqrt(48.0 * static_cast<double>(n)));
}

double one_dim_minimax_delta(Index n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return std::min(0.5, 1.0 / std::sqrt(6.0 * static_cast<double>(n)));
}

}  // namespace geomopt
