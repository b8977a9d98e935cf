#include "geomopt/types.hpp"

#include <cmath>
#include <sstream>

namespace geomopt {

Exponent Exponent::finite(double p) {
  if (!(p >= 1.0) || std::isnan(p)) {
    throw std::invalid_argument("norm exponent must be >= 1, got " + std::to_string(p));
  }
  if (std::isinf(p)) return infinity();
  return Exponent(p, false);
}

Exponent Exponent::from_double(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  return finite(p);
}

Exponent Exponent::conjugate() const {
  if (infinite_) return finite(1.0);
  if (p_ == 1.0) return infinity();
  return finite(p_ / (p_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

double lp_norm(const Vector& x, Exponent p) {
  if (x.size() == 0) return 0.0;
  const double scale = x.cwiseAbs().maxCoeff();
  if (p.is_infinite() || scale == 0.0) return scale;
  const double q = p.value();
  if (q == 1.0) return x.cwiseAbs().sum();
  if (q == 2.0) return scale * (x / scale).norm();
  double acc = 0.0;
  for (Index j = 0; j < x.size(); ++j) acc += std::pow(std::abs(x[j]) / scale, q);
  return scale * std::pow(acc, 1.0 / q);
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

void require_positive(const Vector& x, const char* what) {
  require_finite(x, what);
  if (x.size() == 0) throw std::invalid_argument(std::string(what) + " is empty");
  if ((x.array() <= 0.0).any()) {
    throw std::invalid_argument(std::string(what) + " must be strictly positive");
  }
}

void require_same_dimension(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace geomopt
