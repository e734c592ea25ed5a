#include "hypdisc/criterion.hpp"

#include <algorithm>
#include <cmath>

#include "hypdisc/errors.hpp"

namespace hypdisc {

namespace {

void check_pair(const ScrewTranslation& g, const MoebiusWord& h) {
  require_same_dimension(g.boundary_dimension(), h.boundary_dimension());
}

Verdict exceeds(double radius, double threshold) {
  return radius > threshold * (1.0 + kCertificateGuard) ? Verdict::NonDiscrete
                                                        : Verdict::Inconclusive;
}

}  // namespace

const char* to_string(Verdict v) {
  return v == Verdict::NonDiscrete ? "NonDiscrete" : "Inconclusive";
}

Certificate certify(const ScrewTranslation& g, const MoebiusWord& h, const MargulisParams& params,
                    std::uint64_t budget) {
  check_pair(g, h);
  Certificate cert;
  cert.epsilon = params.epsilon;
  cert.sphere = isometric_sphere(h);
  cert.radius = cert.sphere.radius;
  cert.center_eval = boundary_function(g, params, cert.sphere.center, budget);
  cert.cocenter_eval = boundary_function(g, params, cert.sphere.cocenter, budget);
  cert.b_center = cert.center_eval.value;
  cert.b_cocenter = cert.cocenter_eval.value;
  cert.threshold = std::sqrt(cert.b_center * cert.b_cocenter);
  cert.slack = cert.radius - cert.threshold;

  const Verdict raw = exceeds(cert.radius, cert.threshold);
  const bool exact = cert.center_eval.exact && cert.cocenter_eval.exact;
  // Inexact values are upper bounds on B_g, which can only make a violation
  // harder to see; a violation found with them stands.
  if (!exact && raw == Verdict::Inconclusive) {
    throw InexactBoundary("boundary function hit the index budget before the tail bound closed");
  }
  if (raw == Verdict::Inconclusive) return cert;

  // The vertical segment over v_h between heights B_g(v_h) and R_h lies in
  // T_g and h maps (v_h, s) to (v_{h^-1}, R^2 / s). Take s slightly above
  // B_g(v_h) so that both ends sit strictly inside T_g.
  const double ratio = cert.radius * cert.radius / (cert.b_center * cert.b_cocenter);
  const double delta = std::min(0.5 * (ratio - 1.0), 0.1);
  const HPoint x = vertical_point(cert.sphere.center, cert.b_center * (1.0 + delta));
  if (verify_witness(g, h, params, x, budget)) {
    cert.verdict = Verdict::NonDiscrete;
    cert.witness = x;
  }
  return cert;
}

bool verify_witness(const ScrewTranslation& g, const MoebiusWord& h, const MargulisParams& params,
                    const HPoint& x, std::uint64_t budget) {
  check_pair(g, h);
  const Membership here = in_margulis_region(g, params, x, budget);
  if (!here.inside) return false;
  const Membership there = in_margulis_region(g, params, apply_upper(h, x), budget);
  return there.inside;
}

ComparisonReport waterman_report(const ScrewTranslation& g, const MoebiusWord& h,
                                 const MargulisParams& params, std::uint64_t budget) {
  check_pair(g, h);
  ComparisonReport rep;
  const IsometricSphere sphere = isometric_sphere(h);
  rep.radius = sphere.radius;

  const auto b_center = boundary_function(g, params, sphere.center, budget);
  const auto b_cocenter = boundary_function(g, params, sphere.cocenter, budget);
  rep.our_threshold = std::sqrt(b_center.value * b_cocenter.value);

  const double move_center = (g.apply(sphere.center) - sphere.center).norm();
  const double move_cocenter = (g.apply(sphere.cocenter) - sphere.cocenter).norm();
  rep.waterman_threshold = kWatermanConstant * std::sqrt(move_center * move_cocenter);

  rep.iterated_eval = iterate_geometric_mean(g, params, sphere.center, sphere.cocenter, budget);
  rep.iterated_threshold = kWatermanConstant / params.c * rep.iterated_eval.value;

  rep.our_verdict = exceeds(rep.radius, rep.our_threshold);
  if (!(b_center.exact && b_cocenter.exact) && rep.our_verdict == Verdict::Inconclusive) {
    throw InexactBoundary("boundary function hit the index budget before the tail bound closed");
  }
  rep.waterman_verdict = exceeds(rep.radius, rep.waterman_threshold);
  rep.iterated_verdict = exceeds(rep.radius, rep.iterated_threshold);
  return rep;
}

std::vector<SlackRow> asymptotic_slack(const ScrewTranslation& g,
                                       const std::function<MoebiusWord(double)>& family,
                                       const MargulisParams& params,
                                       const std::vector<double>& parameters,
                                       std::uint64_t budget) {
  std::vector<SlackRow> rows;
  rows.reserve(parameters.size());
  for (double r : parameters) {
    const MoebiusWord h = family(r);
    const ComparisonReport rep = waterman_report(g, h, params, budget);
    const IsometricSphere sphere = isometric_sphere(h);
    SlackRow row{};
    row.parameter = r;
    row.r_center = g.axis_distance(sphere.center);
    row.r_cocenter = g.axis_distance(sphere.cocenter);
    row.radius = rep.radius;
    row.our_threshold = rep.our_threshold;
    row.waterman_threshold = rep.waterman_threshold;
    const double scale = std::sqrt(row.r_center * row.r_cocenter);
    row.radius_ratio = row.radius / scale;
    row.our_ratio = row.our_threshold / scale;
    row.waterman_ratio = row.waterman_threshold / scale;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hypdisc
