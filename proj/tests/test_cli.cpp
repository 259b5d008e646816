#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "wsl/io.hpp"

namespace {

const std::string cli = WSL_CLI_PATH;

std::string temp(const std::string& name) { return ::testing::TempDir() + "wsl_cli_" + name; }

int status(const std::string& args) {
  const int raw = std::system(("\"" + cli + "\" " + args + " > " + temp("out") + " 2> " + temp("err")).c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string out() { return wsl::read_file(temp("out")); }
std::string err() { return wsl::read_file(temp("err")); }

}  // namespace

TEST(Cli, Exponents) {
  ASSERT_EQ(status("exponents --p1 2 --p2 3"), 0);
  const auto j = wsl::json::parse(out());
  EXPECT_NEAR(j["beta"].get<double>(), 1.5, 1e-12);
  EXPECT_NEAR(j["gamma"].get<double>(), 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["alpha"].get<double>(), 1.5, 1e-12);
  EXPECT_TRUE(j["weak_strictly_better"].get<bool>());
  EXPECT_EQ(status("exponents --p1 2 --p2 2"), 1);
  EXPECT_NE(err().find("1 < p"), std::string::npos);
}

TEST(Cli, RegionCsvToStdout) {
  ASSERT_EQ(status("region --resolution 4"), 0);
  const std::string s = out();
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "inv_p1,inv_p2,p,beta,gamma,alpha,weak_strictly_better,alpha_lt_1,p_ge_golden,min_gt_4");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 4 * 3 / 2);
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_NE(status("no-such-command"), 0);
  EXPECT_EQ(status("region --svg /nonexistent-dir/x.svg --resolution 3"), 1);
  {
    std::ofstream(temp("bad.json")) << "{\"dimension\": 1,";
    std::ofstream(temp("w.json")) << R"({"dimension":1,"finest_level":1,"values":[1,2]})";
  }
  EXPECT_EQ(status("constants --weights " + temp("bad.json") + "," + temp("w.json") + " --p1 3 --p2 3"), 2);
  EXPECT_NE(err().find("malformed JSON"), std::string::npos);
  EXPECT_EQ(status("constants --weights " + temp("w.json") + " --p1 3 --p2 3"), 1);
  EXPECT_EQ(status("weight --kind power --a -1 --finest-level 3"), 1);
  EXPECT_NE(err().find("not locally integrable"), std::string::npos);
  EXPECT_EQ(status("sparse-gen --budget 0.7"), 1);
}

TEST(Cli, PipelineRoundTrip) {
  ASSERT_EQ(status("weight --kind random_ap --a 0.8 --finest-level 5 --seed 2 --out " + temp("w1.json")), 0);
  ASSERT_EQ(status("weight --kind power --a 1 --finest-level 5 --out " + temp("w2.json")), 0);
  ASSERT_EQ(status("sparse-gen --kind tower --finest-level 5 --out " + temp("fam.json")), 0);
  ASSERT_EQ(status("constants --weights " + temp("w1.json") + "," + temp("w2.json") + " --p1 3 --p2 3"), 0);
  const auto c = wsl::json::parse(out());
  EXPECT_TRUE(c["weight_bounds_pass"].get<bool>());
  EXPECT_GE(c["apvec"].get<double>(), 1.0);
  ASSERT_EQ(status("sparse-eval --family " + temp("fam.json") + " --f1 " + temp("w1.json") + " --f2 " +
                   temp("w2.json")),
            0);
  const auto f = wsl::function_from_json(wsl::json::parse(out()), "stdout");
  EXPECT_EQ(f.size(), 32u);
  EXPECT_TRUE(f.is_nonnegative());
}

TEST(Cli, VerifyDyadicSuite) {
  ASSERT_EQ(status("verify --suite dyadic"), 0);
  const auto j = wsl::json::parse(out());
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["suite"], "dyadic");
}
