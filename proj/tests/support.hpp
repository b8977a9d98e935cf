#pragma once

// Hand-rolled generators and independent numeric oracles for the test suites.
// Oracles re-derive values from first principles (loops, grids, finite
// differences) and never call the library routine they are checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "geomopt/geometry.hpp"

namespace support {

using geomopt::Index;
using geomopt::Matrix;
using geomopt::Vector;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
  bool coin() { return uniform() < 0.5; }

  Vector gaussian(Index d) {
    Vector x(d);
    for (Index j = 0; j < d; ++j) x[j] = normal();
    return x;
  }
  Vector uniform_vec(Index d, double lo, double hi) {
    Vector x(d);
    for (Index j = 0; j < d; ++j) x[j] = uniform(lo, hi);
    return x;
  }
  Vector signs(Index d) {
    Vector x(d);
    for (Index j = 0; j < d; ++j) x[j] = coin() ? 1.0 : -1.0;
    return x;
  }
  /// Heavy-tailed scale mix so tests see both tiny and large coordinates.
  Vector mixed(Index d) {
    Vector x = gaussian(d);
    for (Index j = 0; j < d; ++j) {
      x[j] *= std::pow(10.0, uniform(-2.0, 1.0));
      if (uniform() < 0.1) x[j] = 0.0;
    }
    return x;
  }
  /// An exponent drawn from a menu that includes 1, 2 and infinity.
  double exponent() {
    static const double menu[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 7.5, kInf};
    return menu[integer(0, 7)];
  }
  double exponent_at_least_two() {
    static const double menu[] = {2.0, 2.5, 3.0, 4.0, 8.0, kInf};
    return menu[integer(0, 5)];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// ‖x‖_p by the textbook sum (no scaling tricks).
inline double pnorm(const Vector& x, double p) {
  if (std::isinf(p)) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  double s = 0.0;
  for (Index j = 0; j < x.size(); ++j) s += std::pow(std::abs(x[j]), p);
  return std::pow(s, 1.0 / p);
}

inline double conj(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

/// Gauge of an unrotated set computed from its raw parameters.
inline double gauge(const geomopt::SetDescriptor& s, const Vector& x) {
  using geomopt::SetKind;
  switch (s.kind()) {
    case SetKind::LpBall:
      return pnorm(x, s.exponent().value()) / s.radius();
    case SetKind::WeightedLrBall:
      return pnorm(s.weights().cwiseProduct(x), s.exponent().value()) / s.radius();
    case SetKind::Box:
      return x.cwiseAbs().cwiseQuotient(s.half_widths()).maxCoeff();
  }
  return kInf;
}

/// A random point of an unrotated set; with boundary = true it lies on the boundary.
inline Vector feasible_point(Gen& g, const geomopt::SetDescriptor& s, bool boundary = false) {
  Vector x = g.mixed(s.dimension());
  if (x.cwiseAbs().maxCoeff() == 0.0) x[0] = 1.0;
  const double r = boundary ? 1.0 : std::pow(g.uniform(), 0.5);
  return x * (r / gauge(s, x));
}

/// A random g with γ(g) <= 1.
inline Vector in_norm_ball(Gen& g, const geomopt::NormDescriptor& n, Index d) {
  Vector x = g.mixed(d);
  if (x.cwiseAbs().maxCoeff() == 0.0) x[0] = 1.0;
  const Vector w = n.effective_weights(d);
  return x * (g.uniform() / pnorm(w.cwiseProduct(x), n.exponent().value()));
}

/// Points of the 2-d unit sphere of the gauge g(x) = ‖w ⊙ x‖_p, on an angular grid.
inline std::vector<Vector> sphere_grid_2d(double p, const Vector& w, int m) {
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * M_PI * k / m;
    Vector u(2);
    u << std::cos(t), std::sin(t);
    pts.push_back(u / pnorm(w.cwiseProduct(u), p));
  }
  return pts;
}

/// Central finite-difference gradient.
template <class F>
Vector fd_gradient(F&& f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    Vector a = x, b = x;
    a[j] += h;
    b[j] -= h;
    g[j] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_err(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max({1e-300, a.norm(), b.norm()});
}

/// Σ ⟨g_i, θ_i − θ⟩ for θ_{i+1} = θ_i − M⁻¹g_i from θ_1 = θ0, by direct simulation.
inline double linear_method_regret(const Matrix& Minv, const std::vector<Vector>& gs,
                                   const Vector& theta0, const Vector& theta) {
  Vector t = theta0;
  double r = 0.0;
  for (const Vector& g : gs) {
    r += g.dot(t - theta);
    t -= Minv * g;
  }
  return r;
}

/// inf over the unrotated set of ⟨G, θ⟩ by vertex/norm duality from raw parameters.
inline double min_linear(const geomopt::SetDescriptor& s, const Vector& G) {
  using geomopt::SetKind;
  switch (s.kind()) {
    case SetKind::LpBall:
      return -s.radius() * pnorm(G, conj(s.exponent().value()));
    case SetKind::WeightedLrBall:
      return -s.radius() * pnorm(G.cwiseQuotient(s.weights()), conj(s.exponent().value()));
    case SetKind::Box:
      return -s.half_widths().dot(G.cwiseAbs());
  }
  return 0.0;
}

inline int popcount_distance(const Vector& a, const Vector& b) {
  int c = 0;
  for (Index j = 0; j < a.size(); ++j) c += a[j] != b[j];
  return c;
}

}  // namespace support
