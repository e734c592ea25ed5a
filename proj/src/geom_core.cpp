#include "hypdisc/geom_core.hpp"

#include <cmath>
#include <string>

#include "hypdisc/errors.hpp"

namespace hypdisc {

HPoint::HPoint(Vec v, double t) : v_(std::move(v)), t_(t) {
  if (!(t_ > 0.0) || !std::isfinite(t_)) {
    throw DomainError("HPoint height must be positive and finite, got " + std::to_string(t_));
  }
  if (v_.size() < 1) throw DomainError("HPoint needs n >= 2");
}

const Vec& BoundaryPoint::coords() const {
  if (infinite_) throw DomainError("coords() of the point at infinity");
  return v_;
}

void require_same_dimension(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

double hyperbolic_distance(const HPoint& x, const HPoint& y) {
  require_same_dimension(x.dimension(), y.dimension());
  const double dv2 = (x.v() - y.v()).squaredNorm();
  const double dt = x.t() - y.t();
  const double chord = std::sqrt(dv2 + dt * dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(x.t()) * std::sqrt(y.t())));
}

HPoint vertical_point(const Vec& v, double s) {
  if (!(s > 0.0)) throw DomainError("vertical_point height must be positive");
  return HPoint(v, s);
}

}  // namespace hypdisc
