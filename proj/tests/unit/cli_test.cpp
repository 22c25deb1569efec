#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heightlab_cli/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = heightlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json doc(const Result& r) { return nlohmann::json::parse(r.out); }

std::vector<nlohmann::json> lines(const Result& r) {
  std::vector<nlohmann::json> out;
  std::istringstream is(r.out);
  for (std::string s; std::getline(is, s);) out.push_back(nlohmann::json::parse(s));
  return out;
}

}  // namespace

TEST(Cli, VectorHeight) {
  const auto r = run({"height", "--vec", "[3,4]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = doc(r);
  EXPECT_NEAR(j["height"]["arch"].get<double>(), 5.0, 1e-12);
  EXPECT_EQ(j["height"]["finite"], "1");
  EXPECT_EQ(j["height"]["exactness"]["finite"], "exact-rational");
  EXPECT_EQ(j["height"]["exactness"]["arch"], "float+relErr");
}

TEST(Cli, ZeroVectorHasHeightOne) {
  const auto r = run({"height", "--vec", "[0,0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(doc(r)["height"]["log"].get<double>(), 0.0);
}

TEST(Cli, RankOneOperatorHeight) {
  const auto r = run({"height", "--mat", "[[1,1],[1,1]]", "--op"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = doc(r)["result"];
  EXPECT_EQ(j["kind"], "exact");
  EXPECT_NEAR(j["value"]["log"].get<double>(), 0.5 * std::log(2.0), 1e-15);
}

TEST(Cli, GelfandUnipotentCsv) {
  const auto r = run({"gelfand", "--mat", "[[1,1],[0,1]]", "--jmax", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line, last;
  std::getline(is, line);
  EXPECT_EQ(line, "k,log_height_over_k,target,residual,exact_flag");
  int rows = 0;
  while (std::getline(is, line)) {
    last = line;
    ++rows;
  }
  EXPECT_EQ(rows, 13);
  // k,value,target,residual,flag
  std::stringstream ls(last);
  std::string field;
  for (int i = 0; i < 4; ++i) std::getline(ls, field, ',');
  EXPECT_LT(std::stod(field), 0.01);
}

TEST(Cli, GelfandLocal) {
  const auto r = run({"gelfand", "--mat", "[[0,2],[1,0]]", "--local", "2", "--jmax", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n2,-0.34657359027997264,-0.34657359027997264,0,1\n"), std::string::npos) << r.out;
}

TEST(Cli, GelfandBudgetExitCode) {
  setenv("HEIGHTLAB_BITS_BUDGET", "200", 1);
  const auto r = run({"gelfand", "--mat", "[[3,1],[1,2]]"});
  unsetenv("HEIGHTLAB_BITS_BUDGET");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, EnumPoints) {
  const auto r = run({"enum", "--points", "2", "--bound", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r).size(), 4u);
}

TEST(Cli, EnumRequiresRationalField) {
  EXPECT_EQ(run({"--field", "Q(i)", "enum", "--points", "2", "--bound", "2"}).code, 2);
}

TEST(Cli, WorkersDoNotChangeBytes) {
  const auto a = run({"enum", "--invertible", "2", "--bound", "2", "--workers", "1"});
  const auto b = run({"enum", "--invertible", "2", "--bound", "2", "--workers", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PseudoHeightDemo) {
  const auto r = run({"demo-remark", "--primes", "2,3,101"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = doc(r)["rows"];
  ASSERT_EQ(rows.size(), 3u);
  const double want[] = {std::sqrt(5.0), std::sqrt(10.0), std::sqrt(10202.0)};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i]["ratio"]["value"].get<double>(), want[i], 1e-12 * want[i]);
    EXPECT_EQ(rows[i]["pseudoHeight"]["log"].get<double>(), 0.0);
  }
}

TEST(Cli, VerifySmall) {
  const auto r = run({"verify", "--seed", "42", "--samples", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, VerifyFailureExitsOne) {
  // An impossible threshold makes the archimedean comparisons fail.
  const std::string path = testing::TempDir() + "heightlab_cli_thresholds.json";
  std::ofstream(path) << "{\"archTol\": -1}";
  const auto r = run({"verify", "--samples", "5", "--checks", "homogeneity", "--config", path});
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "--seed", "7", "--samples", "6", "--checks", "product_formula,spectral_powers"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Distance) {
  const auto r = run({"dist", "--vec", "[1,0]", "--subspace", "[[1,1]]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(doc(r)["distance"]["log"].get<double>(), -0.5 * std::log(2.0), 1e-14);
}

TEST(Cli, DistanceInsideSubspaceIsDegenerate) {
  EXPECT_EQ(run({"dist", "--vec", "[2,2]", "--subspace", "[[1,1]]"}).code, 2);
}

TEST(Cli, SubspaceHeight) {
  const auto r = run({"subspace", "--subspace", "[[3,4]]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(doc(r)["height"]["arch"].get<double>(), 5.0, 1e-12);
}

TEST(Cli, Twist) {
  const auto r = run({"twist", "--vec", "[1,1]", "--twist", "inf=[[2,0],[0,1]]", "--samples", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(doc(r)["twisted"]["arch"].get<double>(), std::sqrt(5.0), 1e-12);
}

TEST(Cli, ParseErrorsExitTwo) {
  const auto r = run({"height", "--vec", "[1,x]"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("position"), std::string::npos);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, TextFormat) {
  const auto r = run({"--format", "text", "height", "--vec", "[3,4]"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kind: vector"), std::string::npos);
}
