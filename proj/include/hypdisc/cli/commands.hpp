#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "hypdisc/cli/job_spec.hpp"
#include "hypdisc/dim4.hpp"

namespace hypdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;  // --verify-witness found no valid witness
inline constexpr int kExitSpec = 2;
inline constexpr int kExitInapplicable = 3;
inline constexpr int kExitBudget = 4;

inline constexpr const char* kEpsilonCaveat =
    "NonDiscrete is certified under the hypothesis that ε is below the Margulis constant of ℍⁿ";
inline constexpr const char* kOracleDisclaimer =
    "absence of near-identity words proves nothing: the scan is one-sided evidence and "
    "cannot establish discreteness";

// Runs certify and waterman_report on the job. The document embeds the
// resolved job under "job". Throws FixesInfinity, InexactBoundary, SpecError.
nlohmann::json certificate_document(const JobSpec& job);
void print_certificate(const nlohmann::json& doc, std::ostream& out);

struct WitnessCheck {
  bool present = false;
  bool verified = false;
  double margin_x = 0.0;   // t - B_g(v) at the witness
  double margin_hx = 0.0;  // the same at its image under h
};

// Recomputes the witness of a certificate document from scratch, using
// `job` if given and the embedded job otherwise.
WitnessCheck check_certificate(const nlohmann::json& cert, const std::optional<JobSpec>& job);

using AlphaInput = std::variant<double, std::string>;

// The H^4 pair with h = eta o gamma at parameter r. Only "paper-example"
// exists.
JobSpec gallery_job(const std::string& name, double r, const AlphaInput& alpha,
                    std::optional<double> epsilon, std::uint64_t budget = kDefaultIndexBudget);

struct BoundaryArgs {
  AlphaInput alpha = std::string("golden");
  std::optional<double> epsilon;
  double r_min = 1.0;
  double r_max = 1e8;
  std::size_t samples = 64;
  std::uint64_t budget = kDefaultIndexBudget;
};

// CSV with header r,B,i_star,is_convergent_denominator. If any sample ran
// out of budget an extra column `exact` is appended and false is returned.
bool write_boundary_csv(const BoundaryArgs& args, std::ostream& out);

struct SlopeArgs {
  AlphaInput alpha = std::string("golden");
  std::optional<double> epsilon;
  double r_min = 1e2;
  double r_max = 1e10;
  std::size_t samples = 16;
  std::uint64_t budget = kDefaultIndexBudget;
  LocalSlopeOptions windows;
};

// Fitted exponent, residual, max B/sqrt(r) and the sliding windows with a
// local slope below windows.flag_below. Throws BudgetExceeded.
void write_slope_report(const SlopeArgs& args, std::ostream& out);

// near_identity_scan over the job's generators (g and h by default).
void write_oracle_report(const JobSpec& job, std::ostream& out);

}  // namespace hypdisc::cli
