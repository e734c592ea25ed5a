#pragma once

#include <cstdint>
#include <vector>

#include "hypdisc/geom_core.hpp"
#include "hypdisc/moebius.hpp"
#include "hypdisc/rotation_number.hpp"

namespace hypdisc {

inline constexpr std::uint64_t kDefaultIndexBudget = 100'000'000;

// c(eps) = 1 / sqrt(2 cosh eps - 2): a point (v, t) is moved less than eps
// by g^i exactly when t > c(eps) |g^i(v) - v|.
double c_epsilon(double epsilon);

// eps = asinh(1) for n = 2 and 0.1 otherwise. The criterion needs eps below
// the Margulis constant of H^n, which is not known in general; callers
// should treat eps as a stated hypothesis.
double default_epsilon(std::size_t n);

struct MargulisParams {
  double epsilon;
  double c;

  static MargulisParams from_epsilon(double epsilon) { return {epsilon, c_epsilon(epsilon)}; }
};

enum class ScrewKind { PureTranslation, RationalScrew, IrrationalScrew };
const char* to_string(ScrewKind kind);

// An invariant plane (or, for the eigenvalue -1, line) of the rotational part
// on which it acts by the rotation 2 pi * turn.
struct RotationPlane {
  Mat basis;  // orthonormal columns, 1 or 2 of them
  RotationNumber turn;
};

// A parabolic isometry fixing inf, (v, t) -> (A v + a_0, t), kept in normal
// form about a shifted origin b:
//
//   g(v) = A (v - b) + a + b,   A a = a,
//
// so that a lies in the fixed space E = ker(A - I). The rotational part is
// stored both as the matrix A and as its invariant planes with exact
// rotation numbers; displacement norms are evaluated from the planes.
class ScrewTranslation {
 public:
  // Conjugates v -> A v + a by a translation into normal form. Throws
  // NotParabolic if a has no component along E (the map then has a finite
  // fixed point) and DomainError if A is not in SO(n-1).
  static ScrewTranslation normalize(const Mat& rotation, const Vec& translation);

  // Builds the map directly from its invariant planes. The columns of all
  // plane bases must be orthonormal; translation must be orthogonal to all
  // planes.
  static ScrewTranslation from_planes(std::size_t boundary_dim, std::vector<RotationPlane> planes,
                                      const Vec& translation, const Vec& origin);

  std::size_t dimension() const { return boundary_dimension() + 1; }
  std::size_t boundary_dimension() const { return static_cast<std::size_t>(a_.size()); }
  const Mat& rotation() const { return A_; }
  const Vec& translation() const { return a_; }
  const Vec& origin() const { return b_; }
  const Mat& axis_basis() const { return E_; }
  const std::vector<RotationPlane>& planes() const { return planes_; }
  ScrewKind kind() const { return kind_; }
  // Order of A for pure and rational screws; 0 for irrational ones.
  std::uint64_t order() const { return order_; }

  Vec apply(const Vec& v) const;
  MoebiusWord to_word() const;

  // The E-perp component of v - b; its norm is the distance of v to the
  // axis b + E.
  Vec perpendicular_part(const Vec& v) const;
  double axis_distance(const Vec& v) const { return perpendicular_part(v).norm(); }
  // |projection of v - b on each plane|^2.
  std::vector<double> plane_weights(const Vec& v) const;

  // tau o g o tau^{-1} with tau(v) = v + shift.
  ScrewTranslation conjugated_by_translation(const Vec& shift) const;

 private:
  ScrewTranslation() = default;
  void classify();

  Mat A_;
  Vec a_;
  Vec b_;
  Mat E_;
  std::vector<RotationPlane> planes_;
  ScrewKind kind_ = ScrewKind::PureTranslation;
  std::uint64_t order_ = 1;
};

struct BoundaryEvaluation {
  double value = 0.0;                  // the minimum found
  std::uint64_t attained_index = 0;    // smallest minimizing i
  std::uint64_t truncation_index = 0;  // last index examined
  bool exact = false;                  // true when the tail bound proved the minimum
};

// u_{g,i}(v) = c(eps) |g^i(v) - v| = c (|(A^i - I) w_perp|^2 + i^2 |a|^2)^{1/2}.
double u_i(const ScrewTranslation& g, const MargulisParams& params, const Vec& v, std::uint64_t i);

// B_g(v) = inf_i u_{g,i}(v). Since u_{g,i} >= c i |a|, the search stops at
// the first i with c i |a| >= current minimum, which proves the minimum.
// If the index budget runs out first the result is an upper bound with
// exact = false.
BoundaryEvaluation boundary_function(const ScrewTranslation& g, const MargulisParams& params,
                                     const Vec& v, std::uint64_t budget = kDefaultIndexBudget);

// Radial envelope: sup of u_{g,i} over points at distance r from the axis,
// c (|A^i - I|^2 r^2 + i^2 |a|^2)^{1/2} with the operator norm on E-perp.
double u_tilde(const ScrewTranslation& g, const MargulisParams& params, double r, std::uint64_t i);
BoundaryEvaluation boundary_tilde(const ScrewTranslation& g, const MargulisParams& params, double r,
                                  std::uint64_t budget = kDefaultIndexBudget);

// min_i (u_{g,i}(v1) u_{g,i}(v2))^{1/2} with the same tail bound.
BoundaryEvaluation iterate_geometric_mean(const ScrewTranslation& g, const MargulisParams& params,
                                          const Vec& v1, const Vec& v2,
                                          std::uint64_t budget = kDefaultIndexBudget);

struct Membership {
  bool inside = false;  // t > B_g(v)
  double margin = 0.0;  // t - B_g(v)
  BoundaryEvaluation boundary;
};

// Membership in T_g = {(v, t) : t > B_g(v)}. With an inexact boundary value
// (an upper bound) a positive margin still proves membership.
Membership in_margulis_region(const ScrewTranslation& g, const MargulisParams& params,
                              const HPoint& x, std::uint64_t budget = kDefaultIndexBudget);

}  // namespace hypdisc
