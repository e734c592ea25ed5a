#include "hypdisc/dim4.hpp"

#include <cmath>

#include "hypdisc/errors.hpp"

namespace hypdisc {

namespace {

ScrewTranslation cylindrical_screw(const RotationNumber& alpha) {
  Mat plane = Mat::Zero(3, 2);
  plane(0, 0) = 1.0;
  plane(1, 1) = 1.0;
  Vec axis = Vec::Zero(3);
  axis(2) = 1.0;
  return ScrewTranslation::from_planes(3, {RotationPlane{plane, alpha}}, axis, Vec::Zero(3));
}

const RotationNumber& nonzero(const RotationNumber& alpha) {
  if (alpha.is_zero()) {
    throw DomainError("rotation number must lie strictly between 0 and 1 (0 is a pure translation)");
  }
  return alpha;
}

struct Fit {
  double slope;
  double intercept;
  double rms;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  Fit f{sxy / sxx, 0.0, 0.0};
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - (f.intercept + f.slope * x[k]);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

CylScrew::CylScrew(RotationNumber alpha)
    : alpha_(nonzero(alpha)),
      screw_(cylindrical_screw(alpha_)),
      expansion_(continued_fraction(alpha_, 1u << 16)) {}

CylEvaluation cyl_boundary(const CylScrew& g, const MargulisParams& params, double r,
                           std::uint64_t budget) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radius must be nonnegative");
  CylEvaluation out;
  out.eval = boundary_tilde(g.screw(), params, r, budget);
  out.convergent_denominator = g.expansion().is_convergent_denominator(BigInt(out.eval.attained_index));
  return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("log_spaced needs 0 < lo <= hi");
  if (n == 0) throw DomainError("log_spaced needs at least one sample");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double step = (std::log10(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::pow(10.0, a + step * static_cast<double>(k));
  out.front() = lo;
  out.back() = hi;
  return out;
}

SlopeEstimate slope_estimate(const CylScrew& g, const MargulisParams& params, double r_min,
                             double r_max, std::size_t samples, std::uint64_t budget) {
  if (!(r_min >= 100.0)) throw DomainError("slope_estimate needs r_min >= 1e2");
  if (!(r_max > r_min)) throw DomainError("slope_estimate needs r_max > r_min");
  if (samples < 8) throw DomainError("slope_estimate needs at least 8 samples");

  SlopeEstimate est;
  est.r_min = r_min;
  est.r_max = r_max;
  est.samples = samples;
  std::vector<double> xs, ys;
  for (double r : log_spaced(r_min, r_max, samples)) {
    const CylEvaluation e = cyl_boundary(g, params, r, budget);
    est.exact = est.exact && e.eval.exact;
    xs.push_back(std::log(r));
    ys.push_back(std::log(e.eval.value));
    const double ratio = e.eval.value / std::sqrt(r);
    if (ratio > est.max_ratio) {
      est.max_ratio = ratio;
      est.max_ratio_at = r;
    }
  }
  const Fit fit = least_squares(xs, ys);
  est.exponent = fit.slope;
  est.intercept = fit.intercept;
  est.residual = fit.rms;
  return est;
}

std::vector<LocalSlope> local_slopes(const CylScrew& g, const MargulisParams& params, double r_lo,
                                     double r_hi, const LocalSlopeOptions& options,
                                     std::uint64_t budget) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw DomainError("local_slopes needs 0 < r_lo < r_hi");
  if (options.samples_per_decade < 2 || options.stride < 1 || !(options.window_decades > 0.0)) {
    throw DomainError("bad local slope options");
  }
  const double decades = std::log10(r_hi / r_lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(options.samples_per_decade))) + 1;
  const auto window = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::lround(options.window_decades *
                                              static_cast<double>(options.samples_per_decade))) + 1);
  if (window > n) throw DomainError("window wider than the sampled range");

  const std::vector<double> rs = log_spaced(r_lo, r_hi, n);
  std::vector<double> xs, ys;
  for (double r : rs) {
    const CylEvaluation e = cyl_boundary(g, params, r, budget);
    if (!e.eval.exact) throw BudgetExceeded("boundary evaluation exceeded the index budget");
    xs.push_back(std::log(r));
    ys.push_back(std::log(e.eval.value));
  }

  std::vector<LocalSlope> out;
  for (std::size_t start = 0; start + window <= n; start += options.stride) {
    const std::vector<double> wx(xs.begin() + static_cast<std::ptrdiff_t>(start),
                                 xs.begin() + static_cast<std::ptrdiff_t>(start + window));
    const std::vector<double> wy(ys.begin() + static_cast<std::ptrdiff_t>(start),
                                 ys.begin() + static_cast<std::ptrdiff_t>(start + window));
    const double slope = least_squares(wx, wy).slope;
    out.push_back({rs[start], rs[start + window - 1], slope, slope < options.flag_below});
  }
  return out;
}

std::vector<LocalSlope> liouville_demo(int k_max, const MargulisParams& params, double r_lo,
                                       double r_hi, const LocalSlopeOptions& options,
                                       std::uint64_t budget) {
  if (k_max < 3 || k_max > 5) throw DomainError("liouville_demo supports k_max in {3, 4, 5}");
  return local_slopes(CylScrew(RotationNumber::liouville(k_max)), params, r_lo, r_hi, options,
                      budget);
}

MoebiusWord counterexample_map(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("counterexample needs r > 0");
  Vec a = Vec::Zero(3);
  a(0) = r;
  Mat flip = Mat::Identity(3, 3);
  flip(0, 0) = -1.0;
  const MoebiusWord gamma(3, {Translation{2.0 * a}, Orthogonal{flip}});
  const double cube_root = std::cbrt(r);
  const MoebiusWord eta = MoebiusWord::sphere_inversion(a, cube_root * cube_root);
  return compose(eta, gamma);
}

Counterexample counterexample(const RotationNumber& alpha, double r) {
  MoebiusWord h = counterexample_map(r);
  Vec a = Vec::Zero(3);
  a(0) = r;
  return Counterexample{CylScrew(alpha), std::move(h), std::move(a)};
}

}  // namespace hypdisc
