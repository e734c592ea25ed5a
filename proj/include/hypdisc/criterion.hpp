#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hypdisc/geom_core.hpp"
#include "hypdisc/moebius.hpp"
#include "hypdisc/parabolic.hpp"

namespace hypdisc {

enum class Verdict { NonDiscrete, Inconclusive };
const char* to_string(Verdict v);

// Relative guard on the strict inequality R_h > threshold.
inline constexpr double kCertificateGuard = 1e-9;
// Waterman's K_g lies in [1, 2]; the top of the interval never over-claims.
inline constexpr double kWatermanConstant = 2.0;

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  IsometricSphere sphere;
  double radius = 0.0;      // R_h
  double b_center = 0.0;    // B_g(v_h)
  double b_cocenter = 0.0;  // B_g(v_{h^-1})
  BoundaryEvaluation center_eval;
  BoundaryEvaluation cocenter_eval;
  double threshold = 0.0;  // sqrt(b_center * b_cocenter)
  double slack = 0.0;      // radius - threshold
  double epsilon = 0.0;
  // A point x with x in T_g and h(x) in T_g. Present iff NonDiscrete.
  std::optional<HPoint> witness;
};

// If <g, h> is discrete then R_h <= (B_g(v_h) B_g(v_{h^-1}))^{1/2}. A
// violation beyond the guard band yields NonDiscrete together with a witness
// point on the vertical line over v_h that h maps back into T_g.
//
// Throws FixesInfinity if h(inf) = inf, and InexactBoundary if a boundary
// value hit the index budget and its upper bound does not already certify.
Certificate certify(const ScrewTranslation& g, const MoebiusWord& h, const MargulisParams& params,
                    std::uint64_t budget = kDefaultIndexBudget);

// Recomputes from scratch that x and h(x) both lie in T_g with positive
// margin, i.e. that h(T_g) meets T_g.
bool verify_witness(const ScrewTranslation& g, const MoebiusWord& h, const MargulisParams& params,
                    const HPoint& x, std::uint64_t budget = kDefaultIndexBudget);

struct ComparisonReport {
  double radius = 0.0;
  double our_threshold = 0.0;
  // K_g |g(v_h) - v_h|^{1/2} |g(v_{h^-1}) - v_{h^-1}|^{1/2} with K_g = 2.
  double waterman_threshold = 0.0;
  // (2 / c) min_i (u_i(v_h) u_i(v_{h^-1}))^{1/2}: Waterman applied to every
  // iterate. Reported only; Waterman's inequality assumes A near the identity.
  double iterated_threshold = 0.0;
  BoundaryEvaluation iterated_eval;
  Verdict our_verdict = Verdict::Inconclusive;
  Verdict waterman_verdict = Verdict::Inconclusive;
  Verdict iterated_verdict = Verdict::Inconclusive;
};

ComparisonReport waterman_report(const ScrewTranslation& g, const MoebiusWord& h,
                                 const MargulisParams& params,
                                 std::uint64_t budget = kDefaultIndexBudget);

struct SlackRow {
  double parameter;
  double r_center;    // distance of v_h to the axis
  double r_cocenter;  // distance of v_{h^-1} to the axis
  double radius;
  double our_threshold;
  double waterman_threshold;
  double radius_ratio;    // R_h / sqrt(r_h r_{h^-1})
  double our_ratio;       // our_threshold / sqrt(r_h r_{h^-1})
  double waterman_ratio;  // waterman_threshold / sqrt(r_h r_{h^-1})
};

// Evaluates a one-parameter family h(r) and tabulates how R_h and both
// thresholds scale against sqrt(r_h r_{h^-1}).
std::vector<SlackRow> asymptotic_slack(const ScrewTranslation& g,
                                       const std::function<MoebiusWord(double)>& family,
                                       const MargulisParams& params,
                                       const std::vector<double>& parameters,
                                       std::uint64_t budget = kDefaultIndexBudget);

}  // namespace hypdisc
