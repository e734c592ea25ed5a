#include "hypdisc/cli/commands.hpp"

#include <fmt/format.h>

#include <ostream>
#include <sstream>

#include "hypdisc/criterion.hpp"

namespace hypdisc::cli {

using nlohmann::json;

namespace {

std::string num(double x) { return fmt::format("{}", x); }

std::string vec_text(const Vec& v) {
  std::string out = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? ", " : "") + num(v(k));
  return out + ")";
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Vec vec_from(const json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  return v;
}

json eval_json(const BoundaryEvaluation& e) {
  return {{"value", e.value},
          {"attained_index", e.attained_index},
          {"truncation_index", e.truncation_index},
          {"exact", e.exact}};
}

MargulisParams params_for(std::optional<double> epsilon) {
  const double eps = epsilon.value_or(default_epsilon(4));
  if (!(eps > 0.0) || !std::isfinite(eps)) throw SpecError("epsilon must be positive");
  return MargulisParams::from_epsilon(eps);
}

CylScrew cyl_for(const AlphaInput& alpha) {
  try {
    return CylScrew(resolve_alpha(alpha));
  } catch (const DomainError& e) {
    throw SpecError(std::string("alpha: ") + e.what());
  }
}

std::string alpha_text(const AlphaInput& alpha) {
  if (const auto* x = std::get_if<double>(&alpha)) return num(*x);
  return std::get<std::string>(alpha);
}

}  // namespace

json certificate_document(const JobSpec& job) {
  const ScrewTranslation g = build_parabolic(job);
  const MoebiusWord h = build_h(job);
  const MargulisParams params = MargulisParams::from_epsilon(job.epsilon);
  const Certificate cert = certify(g, h, params, job.command.budget);
  const ComparisonReport rep = waterman_report(g, h, params, job.command.budget);

  json doc;
  doc["job"] = to_json(job);
  doc["epsilon"] = job.epsilon;
  doc["c_epsilon"] = params.c;
  doc["assumption"] = kEpsilonCaveat;
  doc["parabolic"] = {{"kind", to_string(g.kind())},
                      {"order", g.order()},
                      {"translation", vec_json(g.translation())},
                      {"origin", vec_json(g.origin())}};
  doc["verdict"] = to_string(cert.verdict);
  doc["R_h"] = cert.radius;
  doc["center"] = vec_json(cert.sphere.center);
  doc["cocenter"] = vec_json(cert.sphere.cocenter);
  doc["B_center"] = eval_json(cert.center_eval);
  doc["B_cocenter"] = eval_json(cert.cocenter_eval);
  doc["threshold"] = cert.threshold;
  doc["slack"] = cert.slack;
  doc["witness"] = cert.witness ? json{{"v", vec_json(cert.witness->v())}, {"t", cert.witness->t()}}
                                : json(nullptr);
  doc["waterman"] = {{"K", kWatermanConstant},
                     {"threshold", rep.waterman_threshold},
                     {"verdict", to_string(rep.waterman_verdict)}};
  doc["iterated"] = {{"threshold", rep.iterated_threshold},
                     {"attained_index", rep.iterated_eval.attained_index},
                     {"verdict", to_string(rep.iterated_verdict)},
                     {"label", "heuristic comparison"}};
  return doc;
}

void print_certificate(const json& doc, std::ostream& out) {
  out << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  out << "epsilon: " << num(doc["epsilon"].get<double>()) << "  (c = " << num(doc["c_epsilon"].get<double>())
      << ")\n";
  out << doc["assumption"].get<std::string>() << "\n";
  out << "parabolic: " << doc["parabolic"]["kind"].get<std::string>();
  if (doc["parabolic"]["order"].get<std::uint64_t>() > 1) {
    out << " of order " << doc["parabolic"]["order"].get<std::uint64_t>();
  }
  out << ", |a| = " << num(vec_from(doc["parabolic"]["translation"]).norm()) << "\n";
  out << "R_h: " << num(doc["R_h"].get<double>()) << "\n";
  out << "v_h: " << vec_text(vec_from(doc["center"])) << "\n";
  out << "v_h^-1: " << vec_text(vec_from(doc["cocenter"])) << "\n";
  for (const char* key : {"B_center", "B_cocenter"}) {
    const json& e = doc[key];
    out << key << ": " << num(e["value"].get<double>()) << "  (i* = " << e["attained_index"].get<std::uint64_t>()
        << ", searched to " << e["truncation_index"].get<std::uint64_t>()
        << (e["exact"].get<bool>() ? ", exact" : ", upper bound") << ")\n";
  }
  out << "threshold (ours): " << num(doc["threshold"].get<double>()) << "\n";
  out << "slack R_h - threshold: " << num(doc["slack"].get<double>()) << "\n";
  out << "threshold (Waterman, K = " << num(doc["waterman"]["K"].get<double>())
      << "): " << num(doc["waterman"]["threshold"].get<double>()) << "  -> "
      << doc["waterman"]["verdict"].get<std::string>() << "\n";
  out << "threshold (iterated Waterman, heuristic comparison): "
      << num(doc["iterated"]["threshold"].get<double>()) << "  -> "
      << doc["iterated"]["verdict"].get<std::string>() << "\n";
  if (doc["witness"].is_null()) {
    out << "witness: none\n";
  } else {
    out << "witness: v = " << vec_text(vec_from(doc["witness"]["v"]))
        << ", t = " << num(doc["witness"]["t"].get<double>()) << "\n";
  }
}

WitnessCheck check_certificate(const json& cert, const std::optional<JobSpec>& job) {
  if (!cert.is_object()) throw SpecError("certificate must be a JSON object");
  JobSpec resolved;
  if (job) {
    resolved = *job;
  } else {
    if (!cert.contains("job")) throw SpecError("certificate embeds no job; pass the job file");
    resolved = parse_job(cert["job"]);
  }
  WitnessCheck out;
  if (!cert.contains("witness") || cert["witness"].is_null()) return out;
  const json& w = cert["witness"];
  if (!w.is_object() || !w.contains("v") || !w.contains("t") || !w["v"].is_array() || !w["t"].is_number()) {
    throw SpecError("malformed witness");
  }
  out.present = true;
  const ScrewTranslation g = build_parabolic(resolved);
  const MoebiusWord h = build_h(resolved);
  const MargulisParams params = MargulisParams::from_epsilon(resolved.epsilon);
  if (static_cast<std::size_t>(w["v"].size()) + 1 != resolved.dimension) {
    throw SpecError("witness dimension does not match the job");
  }
  const HPoint x(vec_from(w["v"]), w["t"].get<double>());
  out.verified = verify_witness(g, h, params, x, resolved.command.budget);
  out.margin_x = in_margulis_region(g, params, x, resolved.command.budget).margin;
  out.margin_hx = in_margulis_region(g, params, apply_upper(h, x), resolved.command.budget).margin;
  return out;
}

JobSpec gallery_job(const std::string& name, double r, const AlphaInput& alpha,
                    std::optional<double> epsilon, std::uint64_t budget) {
  if (name != "paper-example") throw SpecError("unknown gallery entry '" + name + "'");
  if (!(r > 0.0) || !std::isfinite(r)) throw SpecError("gallery needs r > 0");
  JobSpec job;
  job.dimension = 4;
  job.epsilon = params_for(epsilon).epsilon;
  job.parabolic = CylindricalParabolic{alpha};
  job.h = counterexample_map(r).primitives();
  job.command.budget = budget;
  job.command.basepoint = HPoint(Vec::Zero(3), 1.0);
  build_parabolic(job);
  return job;
}

bool write_boundary_csv(const BoundaryArgs& args, std::ostream& out) {
  if (!(args.r_min >= 0.0) || !(args.r_max >= args.r_min) || !std::isfinite(args.r_max)) {
    throw SpecError("boundary needs 0 <= r_min <= r_max");
  }
  if (args.samples == 0) throw SpecError("boundary needs at least one sample");
  if (args.r_min == 0.0 && args.samples > 1) throw SpecError("log-spaced radii need r_min > 0");
  if (args.samples > 1 && args.r_min == args.r_max) throw SpecError("r_min = r_max needs samples = 1");
  const CylScrew g = cyl_for(args.alpha);
  const MargulisParams params = params_for(args.epsilon);
  const std::vector<double> radii =
      args.samples == 1 ? std::vector<double>{args.r_min} : log_spaced(args.r_min, args.r_max, args.samples);

  std::vector<CylEvaluation> rows;
  bool exact = true;
  for (double r : radii) {
    rows.push_back(cyl_boundary(g, params, r, args.budget));
    exact = exact && rows.back().eval.exact;
  }
  out << "r,B,i_star,is_convergent_denominator" << (exact ? "" : ",exact") << "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << num(radii[k]) << "," << num(rows[k].eval.value) << "," << rows[k].eval.attained_index << ","
        << (rows[k].convergent_denominator ? 1 : 0);
    if (!exact) out << "," << (rows[k].eval.exact ? 1 : 0);
    out << "\n";
  }
  return exact;
}

void write_slope_report(const SlopeArgs& args, std::ostream& out) {
  const CylScrew g = cyl_for(args.alpha);
  const MargulisParams params = params_for(args.epsilon);
  SlopeEstimate est;
  std::vector<LocalSlope> windows;
  try {
    est = slope_estimate(g, params, args.r_min, args.r_max, args.samples, args.budget);
    windows = local_slopes(g, params, args.r_min, args.r_max, args.windows, args.budget);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
  if (!est.exact) throw BudgetExceeded("a boundary sample exceeded the index budget");

  out << "alpha: " << alpha_text(args.alpha) << " = " << g.alpha().to_string() << "\n";
  out << "epsilon: " << num(params.epsilon) << "\n";
  out << "r range: [" << num(est.r_min) << ", " << num(est.r_max) << "], " << est.samples
      << " log-spaced samples\n";
  out << "fitted exponent: " << num(est.exponent) << "\n";
  out << "intercept: " << num(est.intercept) << "\n";
  out << "residual (rms, log scale): " << num(est.residual) << "\n";
  out << "max B/sqrt(r): " << num(est.max_ratio) << " at r = " << num(est.max_ratio_at) << "\n";
  out << "local slopes: " << windows.size() << " windows of " << num(args.windows.window_decades)
      << " decades, " << args.windows.samples_per_decade << " samples per decade\n";
  std::size_t flagged = 0;
  for (const auto& w : windows) {
    if (!w.flagged) continue;
    ++flagged;
    out << "  slow window [" << num(w.r_lo) << ", " << num(w.r_hi) << "]: slope " << num(w.slope) << "\n";
  }
  out << "slow windows (slope < " << num(args.windows.flag_below) << "): " << flagged << "\n";
}

void write_oracle_report(const JobSpec& job, std::ostream& out) {
  std::vector<MoebiusWord> gens;
  std::vector<std::string> names;
  const std::size_t m = job.dimension - 1;
  if (!job.command.generators.empty()) {
    for (std::size_t k = 0; k < job.command.generators.size(); ++k) {
      gens.emplace_back(m, job.command.generators[k]);
      names.push_back("w" + std::to_string(k + 1));
    }
  } else {
    if (job.parabolic) {
      gens.push_back(build_parabolic(job).to_word());
      names.push_back("g");
    }
    if (job.h) {
      gens.push_back(build_h(job));
      names.push_back("h");
    }
  }
  if (gens.empty()) throw SpecError("oracle needs generators, a parabolic or h");
  const HPoint& base = *job.command.basepoint;
  const auto hits = near_identity_scan(gens, job.command.max_len, base, job.command.delta);

  out << "near-identity scan: " << gens.size() << " generator(s), words up to length "
      << job.command.max_len << ", delta = " << num(job.command.delta) << "\n";
  out << "basepoint: v = " << vec_text(base.v()) << ", t = " << num(base.t()) << "\n";
  out << "hits: " << hits.size() << "\n";
  for (const auto& hit : hits) {
    out << "  " << format_word(hit.letters, names) << "  displacement " << num(hit.displacement)
        << (hit.identity ? "  (relation: acts as the identity)" : "") << "\n";
  }
  out << "note: " << kOracleDisclaimer << "\n";
}

}  // namespace hypdisc::cli
