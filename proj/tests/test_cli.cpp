#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tgmaps/cli.hpp"

using namespace tgmaps;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& v : j) {
      if (has_float(v)) return true;
    }
  return false;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tgmaps_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, TauJsonListsRationalStrings) {
  const auto r = run({"tau", "--max-g", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  ASSERT_EQ(j["tau"].size(), 6u);
  EXPECT_EQ(j["tau"][0], "-1/1");
  EXPECT_EQ(j["tau"][3], "2450/27");
  EXPECT_EQ(j["t"][2]["coeff"], "7/4320");
  EXPECT_EQ(j["t"][2]["sqrt_pi_exp"], -1);
  EXPECT_EQ(j["t"][1]["sqrt_pi_exp"], 0);
}

TEST(Cli, TauCsv) {
  const auto r = run({"tau", "--max-g", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "g,tau,t_coeff,t_sqrt_pi_exp\n0,-1/1,2/1,-1\n1,1/3,1/24,0\n");
}

TEST(Cli, EliminatePrintsZeroResidual) {
  const auto r = run({"eliminate", "--derive"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("residual: 0\n"), std::string::npos);
  EXPECT_NE(r.out.find("U5 =\n"), std::string::npos);
}

TEST(Cli, EliminateDumpTermsMatchesStdout) {
  const auto path = temp_file("terms.txt");
  const auto r = run({"eliminate", "--derive", "--dump-terms", path.string()});
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(s.str(), r.out);
  std::filesystem::remove(path);
}

TEST(Cli, EliminateJsonOnRequest) {
  const auto r = run({"eliminate", "--derive", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["residual"], "0");
  EXPECT_EQ(j["solved"].size(), 4u);
}

TEST(Cli, VerifyTutteGenusOne) {
  const auto r = run({"verify", "tutte", "--max-edges", "5", "--genus-target", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.json()["ok"].get<bool>());
}

TEST(Cli, SeriesVerifyEachIdentity) {
  for (const std::string which : {"ode", "eliminate", "kernel"}) {
    const auto r = run({"series", "verify", "--which", which, "--order", "40"});
    EXPECT_EQ(r.code, 0) << which;
    const auto j = r.json();
    EXPECT_TRUE(j["checks"][0]["zero"].get<bool>());
    EXPECT_FALSE(j["checks"][0].contains("first_nonzero"));
  }
}

TEST(Cli, CasesReportsLiteralCaseMismatch) {
  const auto r = run({"verify", "cases", "--max-edges", "6"});
  EXPECT_EQ(r.code, 1);
  const auto j = r.json();
  EXPECT_FALSE(j["checks"]["case_ii_literal"].get<bool>());
  EXPECT_TRUE(j["checks"]["case_ii_refined"].get<bool>());
  EXPECT_TRUE(j["checks"]["case_i"].get<bool>());
}

TEST(Cli, BijectionSuites) {
  EXPECT_EQ(run({"verify", "bijections", "--max-edges", "3", "--which", "ms"}).code, 0);
  EXPECT_EQ(run({"verify", "bijections", "--max-edges", "3", "--which", "miermont"}).code, 0);
  EXPECT_EQ(run({"verify", "bijections", "--max-edges", "1", "--which", "audit"}).code, 0);
  const auto audit = run({"verify", "bijections", "--max-edges", "2", "--which", "audit"});
  EXPECT_EQ(audit.code, 1);
  EXPECT_EQ(audit.json()["audit"][1]["deficit_gaps"]["3"], "4");
  EXPECT_EQ(audit.json()["audit"][1]["slack_failures"], "4");
}

TEST(Cli, EnumerateCounts) {
  EXPECT_EQ(run({"enumerate", "--edges", "3", "--genus", "1"}).json()["count"], "10");
  EXPECT_EQ(run({"enumerate", "--edges", "3", "--genus", "0"}).json()["count"], "5");
  EXPECT_EQ(run({"enumerate", "--edges", "2", "--genus", "0", "--labelled"}).json()["count"], "18");
  const auto a = run({"enumerate", "--edges", "2", "--genus", "0", "--labelled", "--two-face"}).json();
  EXPECT_EQ(std::stoul(a["count"].get<std::string>()),
            std::stoul(a["by_eps"]["-1"].get<std::string>()) + std::stoul(a["by_eps"]["0"].get<std::string>()) +
                std::stoul(a["by_eps"]["1"].get<std::string>()));
}

TEST(Cli, DirichletMoment) {
  const auto r = run({"moments", "dirichlet", "--points", "3", "--exponents", "1,1,1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["moment"], "1/60");
}

TEST(Cli, ExactReportsHaveNoFloats) {
  const std::vector<std::vector<std::string>> cmds = {
      {"tau", "--max-g", "8"},
      {"series", "verify", "--order", "20"},
      {"eliminate", "--format", "json"},
      {"enumerate", "--edges", "4", "--genus", "1", "--labelled"},
      {"verify", "tutte", "--max-edges", "3", "--genus-target", "1"},
      {"verify", "cases", "--max-edges", "5"},
      {"verify", "bijections", "--max-edges", "2"},
      {"moments", "dirichlet", "--exponents", "2,0"}};
  for (const auto& c : cmds) {
    const auto r = run(c);
    const auto j = r.json();
    EXPECT_EQ(j["schema_version"], kSchemaVersion) << c[0];
    EXPECT_FALSE(has_float(j)) << c[0];
  }
}

TEST(Cli, JsonReportsRoundTrip) {
  for (const auto& c : std::vector<std::vector<std::string>>{
           {"tau", "--max-g", "3"}, {"verify", "tutte", "--max-edges", "3"}, {"sample", "voronoi", "--faces", "50", "--trials", "4"}}) {
    const auto j = run(c).json();
    EXPECT_EQ(Json::parse(j.dump()), j);
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({"tau", "--bogus"}).code, 2);
  EXPECT_EQ(run({"series", "verify", "--which", "nope"}).code, 2);
  EXPECT_EQ(run({"verify", "cases", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"sample", "voronoi", "--threads", "0"}).code, 2);
  EXPECT_EQ(run({"moments", "dirichlet"}).code, 2);
  const auto bound = run({"enumerate", "--edges", "20"});
  EXPECT_EQ(bound.code, 2);
  EXPECT_NE(bound.err.find("outside"), std::string::npos);
  EXPECT_EQ(run({"sample", "voronoi", "--genus", "1", "--faces", "100"}).code, 2);
  EXPECT_EQ(run({"moments", "dirichlet", "--points", "3", "--exponents", "1,1"}).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, SampleVoronoiWritesReports) {
  const auto json_path = temp_file("v.json"), csv_path = temp_file("v.csv");
  const auto r = run({"sample", "voronoi", "--faces", "300", "--trials", "6", "--points", "3", "--seed", "5",
                      "--threads", "2", "--out", json_path.string(), "--csv-per-trial", csv_path.string()});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  for (const char* key : {"params", "seed", "trials", "moments", "tie_rate", "runtime_seconds"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["params"]["points"], 3);
  for (const auto& m : j["moments"]) {
    EXPECT_TRUE(m["reference"].is_string());
    EXPECT_TRUE(m.contains("stderr"));
  }
  std::ifstream jf(json_path);
  EXPECT_EQ(Json::parse(jf), j);
  std::ifstream cf(csv_path);
  std::string line;
  int lines = 0;
  while (std::getline(cf, line)) ++lines;
  EXPECT_EQ(lines, 7);
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);
}

TEST(Cli, SampleDeterministicAcrossThreads) {
  const auto a = run({"sample", "voronoi", "--faces", "400", "--trials", "8", "--threads", "1"}).json();
  const auto b = run({"sample", "voronoi", "--faces", "400", "--trials", "8", "--threads", "3"}).json();
  EXPECT_EQ(deterministic_view(a), deterministic_view(b));
}

TEST(Cli, SeedFromEnvironmentAndFlagWins) {
  ::setenv("TGMAPS_SEED", "77", 1);
  const auto env = run({"sample", "voronoi", "--faces", "50", "--trials", "2"}).json();
  const auto flag = run({"sample", "voronoi", "--faces", "50", "--trials", "2", "--seed", "3"}).json();
  ::unsetenv("TGMAPS_SEED");
  const auto dflt = run({"sample", "voronoi", "--faces", "50", "--trials", "2"}).json();
  EXPECT_EQ(env["seed"], 77);
  EXPECT_EQ(flag["seed"], 3);
  EXPECT_EQ(dflt["seed"], 1);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto path = temp_file("cfg.toml");
  {
    std::ofstream f(path);
    f << "seed = 11\n[sample.voronoi]\nfaces = 60\ntrials = 3\n";
  }
  const auto cfg = run({"--config", path.string(), "sample", "voronoi"}).json();
  EXPECT_EQ(cfg["seed"], 11);
  EXPECT_EQ(cfg["params"]["faces"], 60);
  EXPECT_EQ(cfg["trials"], 3);
  const auto over = run({"--config", path.string(), "sample", "voronoi", "--faces", "70"}).json();
  EXPECT_EQ(over["params"]["faces"], 70);
  EXPECT_EQ(over["seed"], 11);
  std::filesystem::remove(path);
}

TEST(Cli, TextFormatFlattens) {
  const auto r = run({"tau", "--max-g", "1", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tau[1]: 1/3\n"), std::string::npos);
  EXPECT_NE(r.out.find("t[0].sqrt_pi_exp: -1\n"), std::string::npos);
}
