#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace geomopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when an (operation, descriptor) combination has no exact closed form
/// in the catalog. We reject instead of approximating.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A norm exponent in [1, ∞]. Infinity is a distinct state rather than a large
/// float so power computations never overflow.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(1.0, true); }
  /// Accepts +inf as infinity, otherwise behaves like finite().
  static Exponent from_double(double p);

  bool is_infinite() const { return infinite_; }
  double value() const { return infinite_ ? kInfinity : p_; }
  /// 1/p, with 1/∞ = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }
  /// Hölder conjugate p* with 1/p + 1/p* = 1.
  Exponent conjugate() const;

  bool operator==(const Exponent& other) const {
    return infinite_ == other.infinite_ && (infinite_ || p_ == other.p_);
  }
  bool at_least(double q) const { return infinite_ || p_ >= q; }

  std::string to_string() const;

 private:
  Exponent(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

/// ‖x‖_p, scaled by max|x_j| so large exponents do not overflow.
double lp_norm(const Vector& x, Exponent p);

/// sign(x) with sign(0) = +1.
inline double sign_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// sign(x) with sign(0) = 0.
inline double sign_zero(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Throws std::invalid_argument naming `what` when x has NaN/Inf entries.
void require_finite(const Vector& x, const char* what);

/// Throws std::invalid_argument when x has a non-positive entry.
void require_positive(const Vector& x, const char* what);

void require_same_dimension(const Vector& a, const Vector& b, const char* what);

}  // namespace geomopt
