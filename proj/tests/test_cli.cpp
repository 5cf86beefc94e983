#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "qhcodes/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qhcodes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = qh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

const json* check_named(const json& doc, const std::string& name) {
  for (const auto& c : doc["checks"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(Cli, SpectrumReportsPredictedSupport) {
  const auto r = run({"variety", "spectrum", "--q", "3", "--r", "3", "--alpha", "3", "--beta", "3"});
  ASSERT_EQ(r.status, qh::cli::kExitPass) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["verdict"], "PASS");
  EXPECT_EQ(doc["field"]["order"], 9);
  EXPECT_EQ(doc["field"]["modulus"], json::array({2, 2, 1}));
  EXPECT_EQ(doc["config"]["alpha"], 3);
  EXPECT_EQ((*check_named(doc, "support"))["measured"], json::array({19, 26, 28, 35, 37}));
}

TEST(Cli, EvenQTwoIsAParameterError) {
  const auto r = run({"variety", "build", "--q", "2", "--r", "3"});
  EXPECT_EQ(r.status, qh::cli::kExitUsage);
  EXPECT_NE(r.err.find("even q>2 required"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).status, qh::cli::kExitUsage);
  EXPECT_EQ(run({"variety", "spectrum", "--alpha", "3"}).status, qh::cli::kExitUsage);
  EXPECT_EQ(run({"variety", "nonsense"}).status, qh::cli::kExitUsage);
  EXPECT_EQ(run({"code", "weights", "--format", "xml"}).status, qh::cli::kExitUsage);
  EXPECT_EQ(run({"variety", "build", "--q", "3", "--r", "4"}).status, qh::cli::kExitUsage);
  EXPECT_EQ(run({"sss", "recover", "--variety", "hermitian", "--q", "2"}).status, qh::cli::kExitUsage);
}

TEST(Cli, LinesWithinAllowedSizes) {
  const auto r = run({"variety", "lines", "--q", "3", "--r", "3", "--format", "csv"});
  EXPECT_EQ(r.status, qh::cli::kExitPass);
  EXPECT_NE(r.out.find("verdict=PASS"), std::string::npos);
  EXPECT_NE(r.out.find("size,count\n1,8\n2,4455\n4,81\n5,2916\n10,2\n"), std::string::npos);
}

// The weight enumerator check compares against the stated closed form, which
// does not hold at q = 3; the report says so.
TEST(Cli, WeightsReportTheStatedEnumeratorMismatch) {
  const auto r = run({"code", "weights", "--q", "3", "--r", "3"});
  EXPECT_EQ(r.status, qh::cli::kExitFail);
  const auto doc = json::parse(r.out);
  EXPECT_TRUE((*check_named(doc, "brute-force distribution"))["pass"].get<bool>());
  EXPECT_FALSE((*check_named(doc, "stated weight enumerator (r = 3, q odd)"))["pass"].get<bool>());
}

TEST(Cli, Minimality) {
  const auto h = run({"code", "minimality", "--variety", "hermitian", "--q", "2", "--r", "3"});
  ASSERT_EQ(h.status, qh::cli::kExitPass) << h.err;
  const auto hd = json::parse(h.out);
  EXPECT_TRUE(hd["payload"]["minimality"]["ab_bound"]["pass"].get<bool>());
  EXPECT_TRUE(hd["payload"]["minimality"]["cutting_blocking"]["minimal"].get<bool>());
  EXPECT_TRUE(hd["payload"]["minimality"]["brute_force"]["minimal"].get<bool>());

  const auto b = run({"code", "minimality", "--q", "4", "--r", "3"});
  ASSERT_EQ(b.status, qh::cli::kExitPass) << b.err;
  const auto bd = json::parse(b.out);
  EXPECT_FALSE(bd["payload"]["minimality"]["minimal"].get<bool>());
  EXPECT_EQ(bd["payload"]["minimality"]["brute_force"]["non_minimal_words"], 15);
  EXPECT_EQ(bd["payload"]["minimality"]["cutting_blocking"]["witness_coords"], json::array({1, 0, 0, 0}));
}

TEST(Cli, DivisibilityAndHigherWeights) {
  const auto d = run({"code", "divisibility", "--q", "4", "--r", "3"});
  EXPECT_EQ(d.status, qh::cli::kExitPass);
  EXPECT_EQ(json::parse(d.out)["payload"]["divisor"], 4);
  const auto k = run({"code", "dk", "--q", "3", "--r", "3", "--k", "2"});
  EXPECT_EQ(k.status, qh::cli::kExitPass);
  EXPECT_EQ(json::parse(k.out)["payload"]["d_k"], 252);
}

TEST(Cli, SssCommands) {
  const auto dem = run({"sss", "democracy", "--q", "3", "--r", "3"});
  ASSERT_EQ(dem.status, qh::cli::kExitPass) << dem.err;
  EXPECT_EQ(json::parse(dem.out)["payload"]["histogram"], json::parse(R"([{"memberships":648,"participants":261}])"));

  const auto ex = run({"sss", "verify-example"});
  ASSERT_EQ(ex.status, qh::cli::kExitPass) << ex.err;
  const auto exd = json::parse(ex.out);
  EXPECT_EQ(exd["payload"]["group_order"], 576);
  EXPECT_EQ(exd["verdict"], "PASS");

  const auto acc = run({"sss", "access", "--q", "4", "--r", "3"});
  EXPECT_EQ(acc.status, qh::cli::kExitFail);
  EXPECT_NE(acc.err.find("not minimal"), std::string::npos);
}

TEST(Cli, DealIsByteIdentical) {
  const std::vector<std::string> args{"sss", "deal", "--q", "2", "--r", "3", "--variety", "hermitian",
                                      "--secret", "1", "--seed", "7"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.status, qh::cli::kExitPass) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["payload"]["shares"].size(), 44u);
  EXPECT_NE(run({"sss", "deal", "--q", "2", "--r", "3", "--variety", "hermitian", "--secret", "1", "--seed", "8"}).out,
            a.out);
}

TEST(Cli, RecoverFromAnAccessSet) {
  const auto acc = json::parse(run({"sss", "access", "--variety", "hermitian", "--q", "2"}).out);
  const auto set = acc["payload"]["structure"]["sets"][0];
  std::string list;
  for (const auto& x : set) list += (list.empty() ? "" : ",") + std::to_string(x.get<int>());
  const auto r = run({"sss", "recover", "--variety", "hermitian", "--q", "2", "--secret", "3", "--set", list});
  ASSERT_EQ(r.status, qh::cli::kExitPass) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["payload"]["status"], "recovered");
  EXPECT_EQ(doc["payload"]["recovered"], 3);
}

TEST(Cli, VerifyAllBudgetZeroSkipsEverything) {
  const auto r = run({"verify-all", "--budget", "0"});
  EXPECT_EQ(r.status, qh::cli::kExitBudget);
  EXPECT_EQ(r.out.find("[PASS]"), std::string::npos);
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
  EXPECT_NE(r.out.find("[SKIPPED] 10"), std::string::npos);
}

TEST(Cli, VerifyAllRejectsAReducibleModulus) {
  const auto r = run({"verify-all", "--modulus", "2:1,0,1"});
  EXPECT_EQ(r.status, qh::cli::kExitFail);
  EXPECT_EQ(r.out.rfind("[FAIL] 0 field preflight", 0), 0u);
  EXPECT_EQ(r.out.find("[PASS]"), std::string::npos);
}
