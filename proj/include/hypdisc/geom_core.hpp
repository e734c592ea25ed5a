#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace hypdisc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A point (v, t) of the upper half-space model of H^n, v in R^{n-1}, t > 0.
class HPoint {
 public:
  HPoint(Vec v, double t);

  const Vec& v() const { return v_; }
  double t() const { return t_; }
  // n, the dimension of the hyperbolic space (one more than v's length).
  std::size_t dimension() const { return static_cast<std::size_t>(v_.size()) + 1; }

 private:
  Vec v_;
  double t_;
};

// A point of the extended boundary R^{n-1} u {inf}.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity() { return BoundaryPoint(); }
  static BoundaryPoint finite(Vec v) { return BoundaryPoint(std::move(v)); }

  bool is_infinity() const { return infinite_; }
  // Precondition: !is_infinity().
  const Vec& coords() const;

 private:
  BoundaryPoint() : infinite_(true) {}
  explicit BoundaryPoint(Vec v) : infinite_(false), v_(std::move(v)) {}

  bool infinite_;
  Vec v_;
};

// Hyperbolic distance, evaluated as 2 asinh(|x - y| / (2 sqrt(t_x t_y)))
// which is exact for the closed form cosh rho = 1 + |x-y|^2 / (2 t_x t_y)
// and has no cancellation for nearby points.
double hyperbolic_distance(const HPoint& x, const HPoint& y);

// The point at height s above the boundary point v.
HPoint vertical_point(const Vec& v, double s);

void require_same_dimension(std::size_t expected, std::size_t actual);

}  // namespace hypdisc
