#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypdisc/cli/commands.hpp"
#include "hypdisc/criterion.hpp"

using namespace hypdisc;
using namespace hypdisc::cli;
using nlohmann::json;

namespace {

const std::string kTool = HYPDISC_TOOL;
const std::string kJobs = HYPDISC_JOBS;

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const std::string cmd = kTool + " " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "hypdisc_" + name; }

}  // namespace

TEST(JobSpec, DefaultsAreResolved) {
  const auto job = load_job(kJobs + "/modular.json");
  EXPECT_EQ(job.dimension, 2u);
  EXPECT_EQ(job.epsilon, std::asinh(1.0));
  EXPECT_EQ(job.command.budget, kDefaultIndexBudget);
  ASSERT_TRUE(job.command.basepoint);
  const json echo = to_json(job);
  EXPECT_EQ(echo["epsilon"].get<double>(), std::asinh(1.0));
  EXPECT_EQ(echo["command"]["name"], "certify");
}

TEST(JobSpec, RoundTrip) {
  for (const char* name : {"modular.json", "counterexample.json", "screw3.json", "elliptic.json",
                           "fixes_infinity.json"}) {
    const auto job = load_job(kJobs + "/" + name);
    const json once = to_json(job);
    const json twice = to_json(parse_job(json::parse(once.dump())));
    EXPECT_EQ(once, twice) << name;
    EXPECT_EQ(once.dump(), twice.dump()) << name;
  }
  JobSpec job = load_job(kJobs + "/counterexample.json");
  job.parabolic = CylindricalParabolic{0.3819660112501051};
  EXPECT_EQ(to_json(parse_job(to_json(job))), to_json(job));
}

TEST(JobSpec, Rejections) {
  const auto bad = [](const char* text) { return parse_job(json::parse(text)); };
  EXPECT_THROW(bad(R"({"dimension": 1})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "epsilon": -1})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "extra": 1})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "parabolic": {"translation": [1]}})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "parabolic": {"translation": [0, 0]}})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "parabolic": {"cylindrical": {"alpha": 0.5}}})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 4, "parabolic": {"cylindrical": {"alpha": "nope"}}})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 4, "parabolic": {"cylindrical": {"alpha": 0}}})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "h": [{"dilation": -2}]})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "h": [{"shear": 1}]})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "h": [{"orthogonal": [[1, 1], [0, 1]]}]})"), SpecError);
  EXPECT_THROW(bad(R"({"dimension": 3, "command": {"name": "plot"}})"), SpecError);
  // A rotation about z with translation in its plane has a finite fixed point.
  EXPECT_THROW(bad(R"({"dimension": 4, "parabolic": {"rotation": [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
                                                       "translation": [1, 0, 0]}})"),
               SpecError);
}

TEST(Certificate, DocumentContents) {
  const auto job = load_job(kJobs + "/counterexample.json");
  const json doc = certificate_document(job);
  EXPECT_EQ(doc["verdict"], "NonDiscrete");
  EXPECT_EQ(doc["waterman"]["verdict"], "Inconclusive");
  EXPECT_EQ(doc["assumption"], kEpsilonCaveat);
  EXPECT_EQ(doc["job"], to_json(job));
  EXPECT_FALSE(doc["witness"].is_null());
  std::ostringstream text;
  print_certificate(doc, text);
  EXPECT_NE(text.str().find(kEpsilonCaveat), std::string::npos);
  EXPECT_NE(text.str().find("epsilon: 0.1"), std::string::npos);

  const auto check = check_certificate(json::parse(doc.dump()), std::nullopt);
  EXPECT_TRUE(check.present);
  EXPECT_TRUE(check.verified);
  EXPECT_GT(check.margin_x, 0.0);
  EXPECT_GT(check.margin_hx, 0.0);
}

TEST(Certificate, TamperedWitnessIsRejected) {
  json doc = certificate_document(load_job(kJobs + "/counterexample.json"));
  doc["witness"]["t"] = doc["witness"]["t"].get<double>() * 0.5;
  EXPECT_FALSE(check_certificate(doc, std::nullopt).verified);
}

TEST(Gallery, MatchesJobFile) {
  const auto job = gallery_job("paper-example", 1e9, std::string("golden"), 0.1);
  const auto doc = certificate_document(job);
  const auto file_doc = certificate_document(load_job(kJobs + "/counterexample.json"));
  EXPECT_NEAR(doc["R_h"].get<double>(), 1e6, 1e-3);
  EXPECT_NEAR(doc["threshold"].get<double>(), file_doc["threshold"].get<double>(), 1e-6);
  EXPECT_EQ(doc["verdict"], file_doc["verdict"]);
  EXPECT_THROW(gallery_job("other", 1e6, std::string("golden"), 0.1), SpecError);
  EXPECT_THROW(gallery_job("paper-example", -1.0, std::string("golden"), 0.1), SpecError);
}

TEST(Boundary, CsvShape) {
  BoundaryArgs args;
  std::ostringstream out;
  EXPECT_TRUE(write_boundary_csv(args, out));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,B,i_star,is_convergent_denominator");
  int rows = 0;
  double prev = 0.0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string r, b;
    std::getline(cells, r, ',');
    std::getline(cells, b, ',');
    EXPECT_GT(std::stod(b), prev);
    prev = std::stod(b);
  }
  EXPECT_EQ(rows, 64);

  BoundaryArgs single;
  single.r_min = single.r_max = 7.0;
  single.samples = 1;
  std::ostringstream one;
  write_boundary_csv(single, one);
  const std::string text = one.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Boundary, BudgetColumn) {
  BoundaryArgs args;
  args.samples = 3;
  args.budget = 10;
  std::ostringstream out;
  EXPECT_FALSE(write_boundary_csv(args, out));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "r,B,i_star,is_convergent_denominator,exact");
}

TEST(Slope, Report) {
  SlopeArgs args;
  args.alpha = std::string("liouville:4");
  args.r_min = 1e3;
  args.r_max = 1e9;
  args.samples = 13;
  std::ostringstream out;
  write_slope_report(args, out);
  EXPECT_NE(out.str().find("slow window ["), std::string::npos);
  EXPECT_NE(out.str().find("fitted exponent: "), std::string::npos);

  SlopeArgs golden;
  std::ostringstream g;
  write_slope_report(golden, g);
  EXPECT_NE(g.str().find("slow windows (slope < 0.1): 0"), std::string::npos);
}

TEST(Oracle, Reports) {
  std::ostringstream out;
  write_oracle_report(load_job(kJobs + "/elliptic.json"), out);
  EXPECT_NE(out.str().find("hits: 1\n"), std::string::npos);
  EXPECT_NE(out.str().find("w1 w1 w1"), std::string::npos);
  EXPECT_NE(out.str().find(kOracleDisclaimer), std::string::npos);

  JobSpec t = parse_job(json::parse(R"({"dimension": 3, "parabolic": {"translation": [1, 0]},
                                         "command": {"name": "oracle", "max_len": 5, "delta": 0.5}})"));
  std::ostringstream none;
  write_oracle_report(t, none);
  EXPECT_NE(none.str().find("hits: 0\n"), std::string::npos);
}

TEST(Tool, ExitCodes) {
  EXPECT_EQ(run("certify " + kJobs + "/modular.json"), kExitOk);
  EXPECT_EQ(run("certify " + kJobs + "/fixes_infinity.json"), kExitInapplicable);
  EXPECT_EQ(run("certify " + kJobs + "/does_not_exist.json"), kExitSpec);
  EXPECT_EQ(run("certify " + kJobs + "/screw3.json --epsilon -1"), kExitSpec);
  EXPECT_EQ(run("certify " + kJobs + "/counterexample.json --budget 5"), kExitBudget);
  EXPECT_EQ(run("gallery paper-example --r 1e6 --budget 5"), kExitBudget);
  EXPECT_EQ(run("boundary --samples 4 --budget 3"), kExitBudget);
  EXPECT_EQ(run("boundary --alpha 0"), kExitSpec);
  EXPECT_EQ(run("slope --r-min 10"), kExitSpec);
  EXPECT_EQ(run("frobnicate"), kExitSpec);
}

TEST(Tool, EpsilonOverrideIsEchoed) {
  const std::string out = tmp("eps.json");
  ASSERT_EQ(run("certify " + kJobs + "/modular.json --epsilon 0.2 --out " + out), kExitOk);
  const json doc = json::parse(slurp(out));
  EXPECT_EQ(doc["job"]["epsilon"].get<double>(), 0.2);
  EXPECT_EQ(doc["epsilon"].get<double>(), 0.2);
  EXPECT_EQ(doc["verdict"], "Inconclusive");
}

TEST(Tool, DeterministicAndVerifiable) {
  const std::string a = tmp("a.csv"), b = tmp("b.csv");
  ASSERT_EQ(run("boundary --alpha golden --epsilon 0.1 --r-min 1 --r-max 1e8 --samples 64 --out " + a), kExitOk);
  ASSERT_EQ(run("boundary --alpha golden --epsilon 0.1 --r-min 1 --r-max 1e8 --samples 64 --out " + b), kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));

  const std::string cert = tmp("cert.json"), text1 = tmp("c1.txt"), text2 = tmp("c2.txt");
  ASSERT_EQ(run("gallery paper-example --r 1e9 --alpha golden --epsilon 0.1 --out " + cert, text1), kExitOk);
  ASSERT_EQ(run("gallery paper-example --r 1e9 --alpha golden --epsilon 0.1", text2), kExitOk);
  EXPECT_EQ(slurp(text1), slurp(text2));
  EXPECT_EQ(run("certify --verify-witness " + cert), kExitOk);

  const std::string inconclusive = tmp("inconclusive.json");
  ASSERT_EQ(run("certify " + kJobs + "/modular.json --out " + inconclusive), kExitOk);
  EXPECT_EQ(run("certify --verify-witness " + inconclusive), kExitRejected);
}
