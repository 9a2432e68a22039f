#include <cdual/cli.hpp>
#include <cdual/io.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cdual;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  std::filesystem::path dir;

  void SetUp() override {
    dir = std::filesystem::temp_directory_path() /
          ("cdual_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir);
    write("counterexample.json", R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[1,0],[0,0]]})");
    write("identity.json", R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]})");
    write("truncated.json", "{\"rows\":2,\"cols\":2,\n\"data\":[[1,0],[0,0]");
    write("short.json", R"({"rows":2,"cols":2,"data":[[1,0]]})");
    write("kernel.json", R"({"kernel":"min","m":60})");
  }
  void TearDown() override { std::filesystem::remove_all(dir); }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_F(CliTest, DualOfCounterexampleIsHalfT) {
  const CliRun r = run({"dual", path("counterexample.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const ComplexMatrix w = matrix_from_json(r.json()["dual"]);
  EXPECT_NEAR(w(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(w(1, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(w(0, 1)) + std::abs(w(1, 1)), 0.0, 1e-12);
  for (const char* route : {"product", "regularized"})
    EXPECT_EQ(run({"dual", path("counterexample.json"), "--route", route}).code, kExitOk);
  EXPECT_EQ(run({"dual", path("counterexample.json"), "--route", "qr"}).code, kExitUsage);
}

TEST_F(CliTest, ClassifyIdentityIsAllTrue) {
  const CliRun r = run({"classify", path("identity.json")});
  ASSERT_EQ(r.code, kExitOk);
  for (const auto& [name, v] : r.json()["classification"].items()) EXPECT_TRUE(v["holds"]) << name;
}

TEST_F(CliTest, PinvAndPolar) {
  const CliRun p = run({"pinv", path("counterexample.json")});
  ASSERT_EQ(p.code, kExitOk);
  EXPECT_EQ(p.json()["svd"]["numerical_rank"], 1);
  EXPECT_LT(p.json()["penrose_residuals"]["r1"].get<double>(), 1e-15);
  const CliRun q = run({"polar", path("counterexample.json")});
  ASSERT_EQ(q.code, kExitOk);
  EXPECT_TRUE(q.json()["report"]["passed"]);
}

TEST_F(CliTest, MalformedInputExitsTwoWithDiagnostic) {
  const CliRun a = run({"pinv", path("truncated.json")});
  EXPECT_EQ(a.code, kExitUsage);
  EXPECT_NE(a.err.find("line"), std::string::npos) << a.err;
  const CliRun b = run({"classify", path("short.json")});
  EXPECT_EQ(b.code, kExitUsage);
  EXPECT_NE(b.err.find("data"), std::string::npos) << b.err;
  EXPECT_EQ(run({"polar", path("missing.json")}).code, kExitUsage);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"verify"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--theorem", "thm-0"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--theorem", "thm-1.7", "--size", "dim=abc"}).code, kExitUsage);
  EXPECT_EQ(run({"search", "--property", "bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"example"}).code, kExitUsage);
  EXPECT_EQ(run({"--identity-tol", "-1", "verify-all", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, VerifyPassAndFailExitCodes) {
  const CliRun pass = run({"verify", "--theorem", "thm-2.20", "--trials", "50", "--seed", "7"});
  ASSERT_EQ(pass.code, kExitOk);
  EXPECT_EQ(pass.json()["verdict"], "pass");
  EXPECT_EQ(pass.json()["seed"], 7);
  const CliRun fail = run({"--identity-tol", "1e-18", "verify", "--theorem", "thm-2.20", "--trials",
                        "3", "--seed", "7"});
  EXPECT_EQ(fail.code, kExitVerificationFailed);
  EXPECT_EQ(fail.json()["verdict"], "fail");
}

TEST_F(CliTest, VerifyAllWithZeroTrials) {
  const CliRun r = run({"verify-all", "--trials", "0"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.json()["reports"].size(), 22u);
}

TEST_F(CliTest, PrettyChangesFormattingOnly) {
  const CliRun plain = run({"verify", "--theorem", "remark-counterexample", "--trials", "1"});
  const CliRun pretty = run({"--pretty", "verify", "--theorem", "remark-counterexample", "--trials", "1"});
  Json a = plain.json(), b = pretty.json();
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  EXPECT_EQ(a, b);
  EXPECT_NE(plain.out.size(), pretty.out.size());
}

TEST_F(CliTest, EnvironmentSeedOverridesDefault) {
  ::setenv("CAUCHY_DUAL_SEED", "1234", 1);
  const CliRun r = run({"verify", "--theorem", "thm-1.7", "--trials", "1"});
  ::setenv("CAUCHY_DUAL_SEED", "not-a-number", 1);
  const CliRun bad = run({"verify", "--theorem", "thm-1.7", "--trials", "1"});
  ::unsetenv("CAUCHY_DUAL_SEED");
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.json()["seed"], 1234);
  EXPECT_EQ(bad.code, kExitUsage);
  const CliRun flag = run({"verify", "--theorem", "thm-1.7", "--trials", "1", "--seed", "5"});
  EXPECT_EQ(flag.json()["seed"], 5);
}

TEST_F(CliTest, Examples) {
  const CliRun shift = run({"example", "shift", "--n", "4"});
  ASSERT_EQ(shift.code, kExitOk);
  EXPECT_LE(shift.json()["pattern_error"].get<double>(), 1e-12);
  const CliRun kernel = run({"example", "kernel", "--spec", path("kernel.json"), "--dual-shift", "2"});
  ASSERT_EQ(kernel.code, kExitOk) << kernel.err;
  EXPECT_EQ(kernel.json()["eigenvalues"].size(), 60u);
  EXPECT_LT(kernel.json()["dual_shift"]["dense_route_residual"].get<double>(), 1e-6);
  EXPECT_EQ(run({"example", "kernel", "--spec", path("kernel.json"), "--dual-shift", "0"}).code,
            kExitUsage);
  EXPECT_EQ(run({"example", "shift", "--n", "0"}).code, kExitUsage);
}

TEST_F(CliTest, SearchReportsBestViolator) {
  const CliRun r = run({"search", "--property", "dual-power", "--dim", "2", "--rank", "1", "--trials",
                     "200", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_GT(r.json()["best_value"].get<double>(), 0.1);
  EXPECT_TRUE(r.json()["best_inputs"].contains("T"));
}

TEST_F(CliTest, BlockSubcommand) {
  write("block.json", R"({"layout":"direct_sum",
    "T1":{"rows":1,"cols":1,"data":[[2,0]]},
    "T4":{"rows":1,"cols":2,"data":[[1,0],[1,0]]}})");
  const CliRun r = run({"block", path("block.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const ComplexMatrix p = matrix_from_json(r.json()["pinv"]);
  EXPECT_NEAR(p(0, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(p(1, 1).real(), 0.5, 1e-14);
}
