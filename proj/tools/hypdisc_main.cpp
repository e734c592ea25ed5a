#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hypdisc/cli/commands.hpp"

using namespace hypdisc;
using namespace hypdisc::cli;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write '" + path + "'");
  out << text;
  if (!out) throw SpecError("failed writing '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int emit_certificate(const JobSpec& job, const std::string& out_path) {
  const auto doc = certificate_document(job);
  print_certificate(doc, std::cout);
  if (!out_path.empty()) write_file(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-discreteness certificates from Margulis regions of parabolic isometries"};
  app.require_subcommand(1);

  std::optional<double> epsilon;
  std::optional<std::uint64_t> budget;
  std::string out_path;

  auto* certify_cmd = app.add_subcommand("certify", "certify a job file");
  std::string spec_path, witness_path;
  certify_cmd->add_option("job", spec_path, "job file (JSON)");
  certify_cmd->add_option("--epsilon", epsilon, "override epsilon");
  certify_cmd->add_option("--budget", budget, "index budget of the infimum search");
  certify_cmd->add_option("--out", out_path, "write the certificate document (JSON) here");
  certify_cmd->add_option("--verify-witness", witness_path,
                          "re-verify the witness of a certificate document instead");

  auto* boundary_cmd = app.add_subcommand("boundary", "tabulate the H^4 boundary function as CSV");
  BoundaryArgs bargs;
  std::string alpha_text = "golden";
  boundary_cmd->add_option("--alpha", alpha_text, "rotation number: p/q, decimal, golden, silver, liouville:K");
  boundary_cmd->add_option("--epsilon", epsilon);
  boundary_cmd->add_option("--r-min", bargs.r_min);
  boundary_cmd->add_option("--r-max", bargs.r_max);
  boundary_cmd->add_option("--samples", bargs.samples);
  boundary_cmd->add_option("--budget", budget);
  boundary_cmd->add_option("--out", out_path, "CSV path (default: standard output)");

  auto* slope_cmd = app.add_subcommand("slope", "fit the growth exponent of the H^4 boundary function");
  SlopeArgs sargs;
  slope_cmd->add_option("--alpha", alpha_text);
  slope_cmd->add_option("--epsilon", epsilon);
  slope_cmd->add_option("--r-min", sargs.r_min);
  slope_cmd->add_option("--r-max", sargs.r_max);
  slope_cmd->add_option("--samples", sargs.samples);
  slope_cmd->add_option("--budget", budget);
  slope_cmd->add_option("--samples-per-decade", sargs.windows.samples_per_decade);
  slope_cmd->add_option("--window-decades", sargs.windows.window_decades);
  slope_cmd->add_option("--flag-below", sargs.windows.flag_below);
  slope_cmd->add_option("--out", out_path, "also write the report here");

  auto* gallery_cmd = app.add_subcommand("gallery", "certify a built-in example");
  std::string gallery_name;
  double gallery_r = 1e6;
  gallery_cmd->add_option("name", gallery_name, "paper-example")->required();
  gallery_cmd->add_option("--r", gallery_r);
  gallery_cmd->add_option("--alpha", alpha_text);
  gallery_cmd->add_option("--epsilon", epsilon);
  gallery_cmd->add_option("--budget", budget);
  gallery_cmd->add_option("--out", out_path, "write the certificate document (JSON) here");

  auto* oracle_cmd = app.add_subcommand("oracle", "scan short words for near-identity elements");
  std::string oracle_spec;
  std::optional<int> max_len;
  std::optional<double> delta;
  oracle_cmd->add_option("job", oracle_spec, "job file (JSON)")->required();
  oracle_cmd->add_option("--max-len", max_len);
  oracle_cmd->add_option("--delta", delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitSpec;
  }

  try {
    if (*certify_cmd) {
      if (!witness_path.empty()) {
        std::optional<JobSpec> job;
        if (!spec_path.empty()) job = load_job(spec_path);
        const auto check = check_certificate(read_json(witness_path), job);
        if (!check.present) {
          std::cout << "witness: none in certificate\n";
          return kExitRejected;
        }
        std::cout << "x in T_g: margin " << fmt::format("{}", check.margin_x) << "\n";
        std::cout << "h(x) in T_g: margin " << fmt::format("{}", check.margin_hx) << "\n";
        std::cout << (check.verified ? "witness verified: h(T_g) meets T_g\n" : "witness rejected\n");
        return check.verified ? kExitOk : kExitRejected;
      }
      if (spec_path.empty()) throw SpecError("certify needs a job file");
      JobSpec job = load_job(spec_path);
      if (epsilon) {
        if (!(*epsilon > 0.0)) throw SpecError("epsilon must be positive");
        job.epsilon = *epsilon;
      }
      if (budget) job.command.budget = *budget;
      return emit_certificate(job, out_path);
    }
    if (*boundary_cmd) {
      bargs.alpha = alpha_text;
      bargs.epsilon = epsilon;
      if (budget) bargs.budget = *budget;
      std::ostringstream csv;
      const bool exact = write_boundary_csv(bargs, csv);
      if (out_path.empty()) {
        std::cout << csv.str();
      } else {
        write_file(out_path, csv.str());
      }
      if (!exact) {
        std::cerr << "budget exceeded: rows with exact = 0 are upper bounds\n";
        return kExitBudget;
      }
      return kExitOk;
    }
    if (*slope_cmd) {
      sargs.alpha = alpha_text;
      sargs.epsilon = epsilon;
      if (budget) sargs.budget = *budget;
      std::ostringstream report;
      write_slope_report(sargs, report);
      std::cout << report.str();
      if (!out_path.empty()) write_file(out_path, report.str());
      return kExitOk;
    }
    if (*gallery_cmd) {
      const JobSpec job = gallery_job(gallery_name, gallery_r, alpha_text, epsilon,
                                      budget.value_or(kDefaultIndexBudget));
      return emit_certificate(job, out_path);
    }
    if (*oracle_cmd) {
      JobSpec job = load_job(oracle_spec);
      if (max_len) {
        if (*max_len < 1) throw SpecError("max-len must be positive");
        job.command.max_len = *max_len;
      }
      if (delta) {
        if (!(*delta > 0.0)) throw SpecError("delta must be positive");
        job.command.delta = *delta;
      }
      write_oracle_report(job, std::cout);
      return kExitOk;
    }
  } catch (const FixesInfinity& e) {
    std::cerr << "inapplicable: " << e.what() << "\n";
    return kExitInapplicable;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InexactBoundary& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const SpecError& e) {
    std::cerr << "bad job: " << e.what() << "\n";
    return kExitSpec;
  } catch (const DomainError& e) {
    std::cerr << "bad job: " << e.what() << "\n";
    return kExitSpec;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
  return kExitSpec;
}
