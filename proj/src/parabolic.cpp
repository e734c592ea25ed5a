#include "hypdisc/parabolic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "hypdisc/errors.hpp"

namespace hypdisc {

namespace {

constexpr double kKernelThreshold = 1e-10;
constexpr double kRotationTolerance = 1e-12;
constexpr std::uint64_t kMaxRationalDenominator = 1'000'000;

double sin_pi(double x) { return std::sin(std::numbers::pi * x); }

Mat plane_rotation(const RotationPlane& plane) {
  if (plane.basis.cols() == 1) return Mat::Constant(1, 1, -1.0);
  const double x = plane.turn.value();
  const double c = std::cos(2.0 * std::numbers::pi * x);
  const double s = std::sin(2.0 * std::numbers::pi * x);
  Mat r(2, 2);
  r << c, -s, s, c;
  return r;
}

// Orthonormal basis of the orthogonal complement of the column span of B.
Mat orthogonal_complement(const Mat& basis, Eigen::Index dim) {
  if (basis.cols() == 0) return Mat::Identity(dim, dim);
  Eigen::JacobiSVD<Mat> svd(basis.transpose(), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim - basis.cols());
}

// Shared infimum search over i = 1, 2, ...: score(i) is the displacement
// measure in units of c(eps) and is bounded below by i * a_norm, which ends
// the search.
template <class Score>
BoundaryEvaluation minimize_over_iterates(double c, double a_norm, std::uint64_t budget,
                                          Score&& score) {
  BoundaryEvaluation out;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 1;; ++i) {
    if (static_cast<double>(i) * a_norm >= best) {
      out.exact = true;
      out.truncation_index = i - 1;
      break;
    }
    if (i > budget) {
      out.exact = false;
      out.truncation_index = i - 1;
      break;
    }
    const double s = score(i);
    if (s < best) {
      best = s;
      out.attained_index = i;
    }
  }
  out.value = c * best;
  return out;
}

class PlaneOrbits {
 public:
  explicit PlaneOrbits(const std::vector<RotationPlane>& planes) {
    for (const auto& p : planes) orbits_.push_back(p.turn.orbit());
    distances_.resize(orbits_.size());
  }
  // Advances to the next iterate and returns ||i alpha_j|| for each plane.
  const std::vector<double>& next() {
    for (std::size_t j = 0; j < orbits_.size(); ++j) distances_[j] = orbits_[j].next();
    return distances_;
  }

 private:
  std::vector<RotationNumber::Orbit> orbits_;
  std::vector<double> distances_;
};

double rotational_sq(const std::vector<double>& distances, const std::vector<double>& weights) {
  double sum = 0.0;
  for (std::size_t j = 0; j < distances.size(); ++j) {
    const double s = sin_pi(distances[j]);
    sum += 4.0 * s * s * weights[j];
  }
  return sum;
}

double max_rotational_sq(const std::vector<double>& distances) {
  double m = 0.0;
  for (double d : distances) {
    const double s = sin_pi(d);
    m = std::max(m, 4.0 * s * s);
  }
  return m;
}

void check_point_dimension(const ScrewTranslation& g, const Vec& v) {
  require_same_dimension(g.boundary_dimension(), static_cast<std::size_t>(v.size()));
}

}  // namespace

double c_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive and finite");
  }
  // 2 cosh(eps) - 2 = 4 sinh^2(eps / 2), without cancellation for small eps.
  return 1.0 / (2.0 * std::sinh(0.5 * epsilon));
}

double default_epsilon(std::size_t n) { return n == 2 ? std::asinh(1.0) : 0.1; }

const char* to_string(ScrewKind kind) {
  switch (kind) {
    case ScrewKind::PureTranslation:
      return "PureTranslation";
    case ScrewKind::RationalScrew:
      return "RationalScrew";
    case ScrewKind::IrrationalScrew:
      return "IrrationalScrew";
  }
  return "?";
}

ScrewTranslation ScrewTranslation::normalize(const Mat& rotation, const Vec& translation) {
  const Eigen::Index m = translation.size();
  if (m < 1) throw DomainError("translation vector must be nonempty");
  if (rotation.rows() != m || rotation.cols() != m) {
    throw DimensionMismatch(static_cast<std::size_t>(m), static_cast<std::size_t>(rotation.rows()));
  }
  if (!((rotation.transpose() * rotation - Mat::Identity(m, m)).norm() <= kRotationTolerance)) {
    throw DomainError("rotational part is not orthogonal to 1e-12");
  }
  if (!(rotation.determinant() > 0.0)) throw DomainError("rotational part has determinant -1");
  if (!(translation.norm() > 0.0)) throw NotParabolic("translation part is zero");

  const Mat shifted = rotation - Mat::Identity(m, m);
  Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < m && sigma(rank) >= kKernelThreshold) ++rank;
  const Mat perp = svd.matrixV().leftCols(rank);
  const Mat axis = svd.matrixV().rightCols(m - rank);

  const Vec a_axis = axis * (axis.transpose() * translation);
  if (!(a_axis.norm() > kKernelThreshold * std::max(1.0, translation.norm()))) {
    throw NotParabolic("translation has no component along the fixed space of A; the map has a "
                       "finite fixed point");
  }
  const Vec a_perp = translation - a_axis;

  ScrewTranslation g;
  g.A_ = rotation;
  g.a_ = a_axis;
  g.E_ = axis;
  g.b_ = Vec::Zero(m);
  if (rank > 0) {
    const Mat restricted = perp.transpose() * rotation * perp;
    const Vec y = (restricted - Mat::Identity(rank, rank)).partialPivLu().solve(-(perp.transpose() * a_perp));
    g.b_ = perp * y;

    Eigen::RealSchur<Mat> schur(restricted);
    const Mat& t = schur.matrixT();
    const Mat& u = schur.matrixU();
    for (Eigen::Index k = 0; k < rank;) {
      RotationPlane plane;
      if (k + 1 < rank && t(k + 1, k) != 0.0) {
        const double cos_part = 0.5 * (t(k, k) + t(k + 1, k + 1));
        const double sin_part = std::sqrt(std::max(0.0, -t(k, k + 1) * t(k + 1, k)));
        const double turn = std::atan2(sin_part, cos_part) / (2.0 * std::numbers::pi);
        plane.basis = perp * u.middleCols(k, 2);
        const auto snapped = detect_rational(turn, kMaxRationalDenominator, kRotationTolerance);
        plane.turn = snapped ? *snapped : RotationNumber::from_double(turn);
        k += 2;
      } else {
        if (!(std::abs(t(k, k) + 1.0) < 1e-8)) {
          throw DomainError("unexpected real eigenvalue in the rotational part");
        }
        plane.basis = perp * u.col(k);
        plane.turn = RotationNumber(1, 2);
        k += 1;
      }
      g.planes_.push_back(std::move(plane));
    }
  }
  g.classify();
  if (!((g.A_ * g.a_ - g.a_).norm() <= 1e-10 * std::max(1.0, g.a_.norm()))) {
    throw Error("normalization failed: A a != a");
  }
  return g;
}

ScrewTranslation ScrewTranslation::from_planes(std::size_t boundary_dim,
                                               std::vector<RotationPlane> planes,
                                               const Vec& translation, const Vec& origin) {
  const auto m = static_cast<Eigen::Index>(boundary_dim);
  require_same_dimension(boundary_dim, static_cast<std::size_t>(translation.size()));
  require_same_dimension(boundary_dim, static_cast<std::size_t>(origin.size()));

  Eigen::Index cols = 0;
  for (const auto& p : planes) {
    if (p.basis.rows() != m) throw DimensionMismatch(boundary_dim, static_cast<std::size_t>(p.basis.rows()));
    if (p.basis.cols() == 1 && !p.turn.is_half()) {
      throw DomainError("a one-dimensional invariant line must carry the half turn");
    }
    if (p.basis.cols() != 1 && p.basis.cols() != 2) throw DomainError("planes have 1 or 2 basis columns");
    if (p.turn.is_zero()) throw DomainError("a rotation plane with zero turn belongs to the fixed space");
    cols += p.basis.cols();
  }
  Mat all(m, cols);
  for (Eigen::Index k = 0; const auto& p : planes) {
    all.middleCols(k, p.basis.cols()) = p.basis;
    k += p.basis.cols();
  }
  if (!((all.transpose() * all - Mat::Identity(cols, cols)).norm() <= 1e-10)) {
    throw DomainError("plane bases are not orthonormal");
  }
  if (!(translation.norm() > 0.0)) throw NotParabolic("translation part is zero");
  if (cols > 0 && !((all.transpose() * translation).norm() <= 1e-10 * translation.norm())) {
    throw DomainError("translation must be orthogonal to the rotation planes");
  }

  ScrewTranslation g;
  g.E_ = orthogonal_complement(all, m);
  g.A_ = g.E_ * g.E_.transpose();
  for (const auto& p : planes) g.A_ += p.basis * plane_rotation(p) * p.basis.transpose();
  g.a_ = translation;
  g.b_ = origin;
  g.planes_ = std::move(planes);
  g.classify();
  return g;
}

void ScrewTranslation::classify() {
  if (planes_.empty()) {
    kind_ = ScrewKind::PureTranslation;
    order_ = 1;
    return;
  }
  std::uint64_t order = 1;
  for (const auto& p : planes_) {
    if (p.turn.denominator() > kMaxRationalDenominator) {
      kind_ = ScrewKind::IrrationalScrew;
      order_ = 0;
      return;
    }
    order = std::lcm(order, p.turn.denominator().convert_to<std::uint64_t>());
  }
  kind_ = ScrewKind::RationalScrew;
  order_ = order;
}

Vec ScrewTranslation::apply(const Vec& v) const {
  require_same_dimension(boundary_dimension(), static_cast<std::size_t>(v.size()));
  return A_ * (v - b_) + a_ + b_;
}

MoebiusWord ScrewTranslation::to_word() const {
  return MoebiusWord(boundary_dimension(),
                     {Translation{a_ + b_}, Orthogonal{A_}, Translation{-b_}});
}

Vec ScrewTranslation::perpendicular_part(const Vec& v) const {
  require_same_dimension(boundary_dimension(), static_cast<std::size_t>(v.size()));
  const Vec w = v - b_;
  return w - E_ * (E_.transpose() * w);
}

std::vector<double> ScrewTranslation::plane_weights(const Vec& v) const {
  require_same_dimension(boundary_dimension(), static_cast<std::size_t>(v.size()));
  const Vec w = v - b_;
  std::vector<double> out;
  out.reserve(planes_.size());
  for (const auto& p : planes_) out.push_back((p.basis.transpose() * w).squaredNorm());
  return out;
}

ScrewTranslation ScrewTranslation::conjugated_by_translation(const Vec& shift) const {
  require_same_dimension(boundary_dimension(), static_cast<std::size_t>(shift.size()));
  ScrewTranslation g = *this;
  g.b_ = b_ + shift;
  return g;
}

double u_i(const ScrewTranslation& g, const MargulisParams& params, const Vec& v, std::uint64_t i) {
  check_point_dimension(g, v);
  if (i == 0) throw DomainError("iterate index must be positive");
  const auto weights = g.plane_weights(v);
  std::vector<double> distances;
  for (const auto& p : g.planes()) distances.push_back(p.turn.distance_to_integer(i));
  const double along = static_cast<double>(i) * g.translation().norm();
  return params.c * std::sqrt(rotational_sq(distances, weights) + along * along);
}

BoundaryEvaluation boundary_function(const ScrewTranslation& g, const MargulisParams& params,
                                     const Vec& v, std::uint64_t budget) {
  check_point_dimension(g, v);
  const auto weights = g.plane_weights(v);
  const double a_norm = g.translation().norm();
  PlaneOrbits orbits(g.planes());
  return minimize_over_iterates(params.c, a_norm, budget, [&](std::uint64_t i) {
    const double along = static_cast<double>(i) * a_norm;
    return std::sqrt(rotational_sq(orbits.next(), weights) + along * along);
  });
}

double u_tilde(const ScrewTranslation& g, const MargulisParams& params, double r, std::uint64_t i) {
  if (!(r >= 0.0)) throw DomainError("radius must be nonnegative");
  if (i == 0) throw DomainError("iterate index must be positive");
  std::vector<double> distances;
  for (const auto& p : g.planes()) distances.push_back(p.turn.distance_to_integer(i));
  const double along = static_cast<double>(i) * g.translation().norm();
  return params.c * std::sqrt(max_rotational_sq(distances) * r * r + along * along);
}

BoundaryEvaluation boundary_tilde(const ScrewTranslation& g, const MargulisParams& params, double r,
                                  std::uint64_t budget) {
  if (!(r >= 0.0)) throw DomainError("radius must be nonnegative");
  const double a_norm = g.translation().norm();
  PlaneOrbits orbits(g.planes());
  return minimize_over_iterates(params.c, a_norm, budget, [&](std::uint64_t i) {
    const double along = static_cast<double>(i) * a_norm;
    return std::sqrt(max_rotational_sq(orbits.next()) * r * r + along * along);
  });
}

BoundaryEvaluation iterate_geometric_mean(const ScrewTranslation& g, const MargulisParams& params,
                                          const Vec& v1, const Vec& v2, std::uint64_t budget) {
  check_point_dimension(g, v1);
  check_point_dimension(g, v2);
  const auto w1 = g.plane_weights(v1);
  const auto w2 = g.plane_weights(v2);
  const double a_norm = g.translation().norm();
  PlaneOrbits orbits(g.planes());
  return minimize_over_iterates(params.c, a_norm, budget, [&](std::uint64_t i) {
    const auto& d = orbits.next();
    const double along2 = std::pow(static_cast<double>(i) * a_norm, 2);
    return std::sqrt(std::sqrt(rotational_sq(d, w1) + along2) * std::sqrt(rotational_sq(d, w2) + along2));
  });
}

Membership in_margulis_region(const ScrewTranslation& g, const MargulisParams& params,
                              const HPoint& x, std::uint64_t budget) {
  require_same_dimension(g.dimension(), x.dimension());
  Membership m;
  m.boundary = boundary_function(g, params, x.v(), budget);
  m.margin = x.t() - m.boundary.value;
  m.inside = m.margin > 0.0;
  return m;
}

}  // namespace hypdisc
