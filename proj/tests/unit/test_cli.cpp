#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fracsum::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SumExamples) {
  auto r = invoke({"sum", "--f", "1/k", "--limit", "0", "--from", "1", "--to", "0.5"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("0.6137056388", 0), 0u) << r.out;
  r = invoke({"sum", "--f", "1/k", "--limit", "0", "--from", "1", "--to", "0"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "0\n");
}

double number(const std::string& text) { return std::stod(text); }

TEST(Cli, TextUsesFifteenDigits) {
  const auto r = invoke({"sum", "--f", "1/k", "--limit", "0", "--to", "2", "--tol", "1e-13"});
  EXPECT_EQ(r.out, "1.5\n");
  const auto c = invoke({"constants"});
  EXPECT_NE(c.out.find("euler_gamma 0.577215664901533"), std::string::npos) << c.out;
}

TEST(Cli, JsonScalarFields) {
  const auto r =
      invoke({"prod", "--f", "1+1/k", "--limit", "1", "--to", "3", "--format", "json"});
  EXPECT_EQ(r.code, kOk);
  for (const char* key : {"\"value\":", "\"abs_error_estimate\":", "\"terms_used\":",
                          "\"verdict\":\"converged\""}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key << " in " << r.out;
  }
}

TEST(Cli, ApproxCsv) {
  const auto r = invoke(
      {"approx", "--f", "1/k", "--limit", "0", "--grid", "1:6:0.05", "--format", "csv"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("x,f_true,f_approx,abs_err\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 102u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"sum", "--f", "1/k", "--to", "2"}).code, kUsage);  // no --limit
  EXPECT_EQ(invoke({"sum", "--f", "1/k", "--limit", "0", "--to", "x"}).code, kUsage);
  EXPECT_EQ(invoke({"sum", "--f", "1/k", "--limit", "0", "--tol", "0"}).code, kUsage);
  EXPECT_EQ(invoke({"sum", "--f", "1/k", "--limit", "0", "--max-terms", "999"}).code, kUsage);
  EXPECT_EQ(invoke({"sum", "--f", "1/k", "--limit", "0", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(invoke({"approx", "--f", "1/k", "--limit", "0", "--grid", "1:2"}).code, kUsage);
  EXPECT_EQ(invoke({"deriv", "--f", "1/k", "--limit", "0", "--wrt", "side"}).code, kUsage);
}

TEST(Cli, ParseErrorObject) {
  const auto r = invoke({"sum", "--f", "1/(k", "--limit", "0", "--format", "json"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.out.find("\"code\":\"parse_error\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"position\":4"), std::string::npos) << r.out;
}

TEST(Cli, EvaluationFailures) {
  auto r = invoke({"sum", "--f", "ln(k-3)", "--limit", "0", "--to", "2.5", "--format", "json"});
  EXPECT_EQ(r.code, kEvalFailure);
  EXPECT_NE(r.out.find("\"code\":\"domain_error\""), std::string::npos) << r.out;
  r = invoke({"sum", "--f", "sin(k)", "--limit", "auto", "--to", "2.5", "--format", "json"});
  EXPECT_EQ(r.code, kEvalFailure);
  EXPECT_NE(r.out.find("\"code\":\"convergence_error\""), std::string::npos) << r.out;
  r = invoke({"faulhaber", "--f", "1/k", "--center", "1", "--taylor-order", "40", "--to", "5"});
  EXPECT_EQ(r.code, kEvalFailure);
}

TEST(Cli, Subcommands) {
  EXPECT_NEAR(
      number(invoke({"deriv", "--f", "1/k", "--limit", "0", "--to", "0", "--wrt", "upper"}).out),
      M_PI * M_PI / 6.0, 1e-10);
  EXPECT_EQ(invoke({"taylor", "--f", "1/k", "--limit", "0", "--order", "3"}).code, kOk);
  const auto t = invoke({"taylor", "--f", "1/k", "--limit", "0", "--at", "1.5"});
  EXPECT_EQ(t.code, kOk);
  EXPECT_NE(t.err.find("warning"), std::string::npos);
  EXPECT_NEAR(
      number(invoke({"integrate", "--f", "1/k", "--limit", "0", "--a", "0", "--to", "1"}).out),
      0.5772156649015329, 1e-9);
  EXPECT_EQ(invoke({"faulhaber", "--coeffs", "0,0,1", "--to", "4"}).out, "30\n");
  const auto a = invoke({"antisum", "--f", "1/k", "--limit", "0", "--F", "ln(k)", "--to", "3",
                         "--route", "lower"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out.substr(0, 8), "1.791759");
  const auto roots = invoke({"roots", "--n-max", "5", "--format", "csv"});
  EXPECT_EQ(roots.code, kOk);
  EXPECT_EQ(roots.out.rfind("n,location,residual,offset_error\n", 0), 0u);
  const auto check = invoke({"check", "--property", "prod-mixed", "--f", "1+1/k", "--limit", "1",
                             "--to", "2.5", "--from", "1.5", "--format", "json"});
  EXPECT_EQ(check.code, kOk);
  EXPECT_NE(check.out.find("\"verdict\""), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"approx", "--f", "sin(k)/k", "--limit", "0", "--grid",
                                      "1:3:0.25", "--format", "json"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "fracsum_cli_out.json";
  const auto r = invoke({"sum", "--f", "1/k", "--limit", "0", "--to", "2", "--format", "json",
                         "--output", path});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  const auto text = content.str();
  const auto at = text.find("\"value\":");
  ASSERT_NE(at, std::string::npos) << text;
  EXPECT_NEAR(number(text.substr(at + 8)), 1.5, 1e-10);
  std::remove(path.c_str());
}

TEST(Cli, Help) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("sum"), std::string::npos);
}

}  // namespace
}  // namespace fracsum::cli
