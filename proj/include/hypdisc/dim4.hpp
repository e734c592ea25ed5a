#pragma once

#include <cstdint>
#include <vector>

#include "hypdisc/moebius.hpp"
#include "hypdisc/parabolic.hpp"
#include "hypdisc/rotation_number.hpp"

namespace hypdisc {

// The screw translation (r, theta, z, t) -> (r, theta + 2 pi alpha, z + 1, t)
// of H^4, with axis the z-axis of R^3.
class CylScrew {
 public:
  // alpha is reduced mod 1 and must not be 0.
  explicit CylScrew(RotationNumber alpha);

  const RotationNumber& alpha() const { return alpha_; }
  const ScrewTranslation& screw() const { return screw_; }
  // The complete expansion of the (exact, rational) rotation number.
  const ContinuedFraction& expansion() const { return expansion_; }

 private:
  RotationNumber alpha_;
  ScrewTranslation screw_;
  ContinuedFraction expansion_;
};

struct CylEvaluation {
  BoundaryEvaluation eval;
  // Whether the minimizing index is a continued fraction denominator q_k.
  bool convergent_denominator = false;
};

// B_g(r) = c(eps) min_i (4 sin^2(pi i alpha) r^2 + i^2)^{1/2}; in H^4 the
// boundary function only depends on the distance r to the axis.
CylEvaluation cyl_boundary(const CylScrew& g, const MargulisParams& params, double r,
                           std::uint64_t budget = kDefaultIndexBudget);

// n log-spaced values from lo to hi inclusive (n = 1 gives {lo}).
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct SlopeEstimate {
  double exponent = 0.0;   // least-squares slope of log B against log r
  double intercept = 0.0;
  double residual = 0.0;   // RMS of the log-log residuals
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t samples = 0;
  double max_ratio = 0.0;  // max over the grid of B(r) / sqrt(r)
  double max_ratio_at = 0.0;
  bool exact = true;       // every sample closed its tail bound
};

// Requires r_min >= 100 and samples >= 8.
SlopeEstimate slope_estimate(const CylScrew& g, const MargulisParams& params, double r_min,
                             double r_max, std::size_t samples,
                             std::uint64_t budget = kDefaultIndexBudget);

struct LocalSlopeOptions {
  std::size_t samples_per_decade = 20;
  double window_decades = 0.5;
  std::size_t stride = 2;  // samples between consecutive window starts
  double flag_below = 0.1;
};

struct LocalSlope {
  double r_lo;
  double r_hi;
  double slope;
  bool flagged;  // slope < flag_below: a slow-growth window
};

// Least-squares slopes of log B over sliding sub-windows of [r_lo, r_hi].
std::vector<LocalSlope> local_slopes(const CylScrew& g, const MargulisParams& params, double r_lo,
                                     double r_hi, const LocalSlopeOptions& options = {},
                                     std::uint64_t budget = kDefaultIndexBudget);

// local_slopes for alpha = sum_{k <= k_max} 10^{-k!}, k_max in {3, 4, 5}.
std::vector<LocalSlope> liouville_demo(int k_max, const MargulisParams& params, double r_lo,
                                       double r_hi, const LocalSlopeOptions& options = {},
                                       std::uint64_t budget = kDefaultIndexBudget);

// h = eta o gamma on R^3 with a = (r, 0, 0): gamma(x, y, z) = (-x + 2r, y, z)
// and eta the inversion in S(a, r^{2/3}). h swaps inf and a and its
// isometric sphere is S(a, r^{2/3}).
struct Counterexample {
  CylScrew g;
  MoebiusWord h;
  Vec a;
};

Counterexample counterexample(const RotationNumber& alpha, double r);
MoebiusWord counterexample_map(double r);

}  // namespace hypdisc
