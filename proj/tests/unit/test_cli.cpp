#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

const std::string kData = MLDFORGE_CLI_DATA;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "mldforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = mldforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  return s;
}

struct Case {
  std::string name, command, input, format;
  int code;
};

std::vector<Case> cases() {
  std::ifstream in(kData + "/cases.txt");
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, '|')) f.push_back(trim(item));
    out.push_back({f.at(0), f.at(1), f.at(2), f.at(3), std::stoi(f.at(4))});
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Goldens) {
  const bool update = std::getenv("MLDFORGE_UPDATE_GOLDENS") != nullptr;
  auto cs = cases();
  ASSERT_GE(cs.size(), 10u);
  for (const auto& c : cs) {
    CliRun r = run({c.command, kData + "/" + c.input, "--format", c.format});
    EXPECT_EQ(r.code, c.code) << c.name << "\n" << r.err;
    const std::string golden = kData + "/" + c.name + ".out";
    if (update) {
      std::ofstream(golden) << r.out;
      continue;
    }
    EXPECT_EQ(r.out, slurp(golden)) << c.name;
    // Deterministic across runs.
    EXPECT_EQ(run({c.command, kData + "/" + c.input, "--format", c.format}).out, r.out) << c.name;
  }
}

TEST(Cli, JsonRoundTrip) {
  for (const auto& c : cases()) {
    if (c.format != "json") continue;
    CliRun r = run({c.command, kData + "/" + c.input});
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("schema_version"), 1) << c.name;
    EXPECT_EQ(doc.at("command"), c.command) << c.name;
    EXPECT_TRUE(doc.contains(c.code == 0 || c.command == "validate" ? "result" : "error")) << c.name;
    EXPECT_EQ(nlohmann::json::parse(doc.dump()), doc);
  }
}

TEST(Cli, Examples) {
  auto q = nlohmann::json::parse(run({"mld-quotient", kData + "/quotient_1_3.json"}).out);
  EXPECT_EQ(q["result"]["value"], "2/3");
  EXPECT_EQ(q["result"]["status"], "exact");

  CliRun v = run({"validate", kData + "/branch_locus.json"});
  EXPECT_EQ(v.code, 2);
  auto vj = nlohmann::json::parse(v.out);
  EXPECT_EQ(vj["result"]["findings"][0]["kind"], "BranchLocusTooBig");

  auto a = nlohmann::json::parse(run({"age", kData + "/age_1_2.json"}).out);
  ASSERT_EQ(a["result"]["classes"].size(), 2u);
  EXPECT_EQ(a["result"]["classes"][1]["age"], "1");

  auto p = nlohmann::json::parse(run({"pia-check", kData + "/mu3.json"}).out);
  EXPECT_EQ(p["result"]["verdict"], "equal");
  EXPECT_EQ(p["result"]["lhs"]["value"], "1/3");
  EXPECT_EQ(p["result"]["rhs"]["value"], "1/3");
}

TEST(Cli, ExitCodesAndErrors) {
  const std::string tmp = ::testing::TempDir() + "/mldforge_bad.json";
  std::ofstream(tmp) << "{\"schema_version\": 1, \"group\": ";
  EXPECT_EQ(run({"age", tmp}).code, 2);
  std::ofstream(tmp) << "{\"group\": {\"cyclic\": {\"r\": 2, \"weights\": [1, 1]}}}";
  CliRun r = run({"age", tmp});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("schema_version"), std::string::npos);
  std::ofstream(tmp) << "{\"schema_version\": 1, \"group\": {\"cyclic\": {\"r\": 2, \"weights\": [1, 1]}}, \"equations\": [\"x1 +\"]}";
  EXPECT_EQ(run({"semi", tmp}).code, 2);
  EXPECT_EQ(run({"age", kData + "/does_not_exist.json"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  // Budget exhaustion is an internal failure, not a rejection.
  std::ofstream(tmp) << "{\"schema_version\": 1, \"group\": {\"cyclic\": {\"r\": 1, \"weights\": [0, 0, 0]}}, "
                        "\"equations\": [\"x1*x2 - x3^2\"], \"jets\": {\"levels\": [6]}, \"options\": {\"spair_budget\": 1}}";
  EXPECT_EQ(run({"jets-dim", tmp}).code, 1);
}

TEST(Cli, PrimesOverride) {
  CliRun r = run({"mld-hyper", kData + "/a1_cone.json", "--primes", "1073741833,1073741857"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["primes"], nlohmann::json::parse("[1073741833, 1073741857]"));
  EXPECT_EQ(j["result"]["value"], "1");
  EXPECT_EQ(run({"mld-hyper", kData + "/a1_cone.json", "--primes", "abc"}).code, 2);
  setenv("MLDFORGE_PRIMES", "1073741833,1073741857", 1);
  auto e = nlohmann::json::parse(run({"mld-hyper", kData + "/a1_cone.json"}).out);
  unsetenv("MLDFORGE_PRIMES");
  EXPECT_EQ(e["result"]["primes"], nlohmann::json::parse("[1073741833, 1073741857]"));
}

TEST(Cli, Manifest) {
  const std::string m1 = ::testing::TempDir() + "/m1.json", m2 = ::testing::TempDir() + "/m2.json";
  ASSERT_EQ(run({"mld-hyper", kData + "/a1_cone.json", "--manifest", m1}).code, 0);
  ASSERT_EQ(run({"mld-hyper", kData + "/a1_cone.json", "--manifest", m2}).code, 0);
  auto a = nlohmann::json::parse(slurp(m1)), b = nlohmann::json::parse(slurp(m2));
  EXPECT_EQ(a["input_sha256"].get<std::string>().size(), 64u);
  a.erase("wall_clock_ms");
  b.erase("wall_clock_ms");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["primes_used"].size(), 2u);
}

TEST(Cli, HelpListsSubcommands) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* c : {"validate", "age", "semi", "twist", "mld-quotient", "mld-pair", "mld-hyper", "pia-check",
                        "pia-divisor", "lsc-scan", "jets-dim"})
    EXPECT_NE(r.out.find(c), std::string::npos) << c;
}
