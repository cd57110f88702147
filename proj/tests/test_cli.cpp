#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orthokernel/cli.hpp"
#include "orthokernel/harness.hpp"
#include "support.hpp"

namespace orthokernel {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orthokernel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("orthokernel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const json& j) const { std::ofstream(path(name)) << j.dump(); }
  json read(const std::string& name) const {
    std::ifstream in(path(name));
    return json::parse(in);
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir;
};

TEST_F(Cli, UnknownPropertyIsExitTwo) {
  const auto r = run({"check", "--props", "NO-SUCH"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NO-SUCH"), std::string::npos);
}

TEST_F(Cli, MalformedFlagsAreExitTwo) {
  EXPECT_EQ(run({"check", "--trials", "many"}).code, 2);
  EXPECT_EQ(run({"check", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"reconstruct", "--k1", "1"}).code, 2);
  EXPECT_EQ(run({"check", "--numerator-bound", "0", "--trials", "1"}).code, 2);
}

TEST_F(Cli, HelpIsExitZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST_F(Cli, CheckWritesReport) {
  const auto r = run({"check", "--dim", "3", "--trials", "25", "--seed", "42", "--props",
                      "P-SYM,P-ISO", "--json", path("out.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS P-SYM trials=75"), std::string::npos) << r.out;
  const json report = read("out.json");
  EXPECT_EQ(report.at("schema"), 1);
  EXPECT_EQ(report.at("config").at("seed"), 42);
  EXPECT_EQ(report.at("config").at("forms"), json({"identity", "diagonal", "tridiagonal"}));
  ASSERT_EQ(report.at("reports").size(), 2u);
  EXPECT_EQ(report.at("reports")[0].at("property_id"), "P-ISO");
  EXPECT_EQ(report.at("reports")[0].at("violations"), 0);
  EXPECT_FALSE(report.at("reports")[0].contains("elapsed_ms"));
}

TEST_F(Cli, CheckIsReproducible) {
  const std::vector<std::string> base{"check", "--dim", "3", "--trials", "20", "--seed", "9",
                                      "--props", "P-COSIK,P-UNIQ"};
  auto a = base, b = base;
  a.insert(a.end(), {"--json", path("a.json")});
  b.insert(b.end(), {"--json", path("b.json"), "--jobs", "3"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  // --jobs is not part of the config echoed in the report.
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
}

TEST_F(Cli, SeedFallsBackToEnvironment) {
  ::setenv("ORTHOKERNEL_SEED", "1234", 1);
  const auto r = run({"check", "--dim", "2", "--trials", "5", "--props", "P-SYM", "--json",
                      path("env.json")});
  ::unsetenv("ORTHOKERNEL_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("env.json").at("config").at("seed"), 1234);
}

TEST_F(Cli, CheckWithFormFile) {
  write("form.json", json::parse(R"({"dim": 2, "form": [["3", "1"], ["1", "1"]]})"));
  const auto r = run({"check", "--dim", "2", "--trials", "10", "--props", "P-GGO", "--form",
                      path("form.json"), "--json", path("f.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("f.json").at("config").at("forms"), json({path("form.json")}));
  EXPECT_EQ(run({"check", "--dim", "3", "--trials", "1", "--form", path("form.json")}).code, 2);
  write("bad.json", json::parse(R"({"form": [["1", "0"], ["0", "-1"]]})"));
  EXPECT_EQ(run({"check", "--dim", "2", "--trials", "1", "--form", path("bad.json")}).code, 2);
}

TEST_F(Cli, Reconstruct) {
  const auto r = run({"reconstruct", "--k1", "2", "--k2", "2", "--m", "1", "--dim", "4",
                      "--pairs", "40", "--seed", "7", "--json", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("witness agreement 40/40"), std::string::npos) << r.out;
  EXPECT_TRUE(read("r.json").at("passed").get<bool>());
  EXPECT_EQ(run({"reconstruct", "--k1", "2", "--k2", "2", "--m", "0", "--dim", "3"}).code, 2);
  EXPECT_EQ(run({"reconstruct", "--k1", "1", "--k2", "2", "--m", "1", "--dim", "3"}).code, 2);
}

TEST_F(Cli, Counterexample) {
  const auto r = run({"counterexample", "--json", path("c.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAILED"), std::string::npos);
  const json j = read("c.json");
  ASSERT_EQ(j.at("instances").size(), 2u);
  for (const auto& inst : j.at("instances")) EXPECT_TRUE(inst.at("verified").get<bool>());
}

TEST_F(Cli, WitnessPerpPair) {
  const auto r = run({"witness", "--kind", "perp-pair", "--m", "1", "--k1", "2", "--k2", "2",
                      "--dim", "3", "--seed", "5", "--form", "tridiagonal"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  const auto space = space_from_json(j.at("space"));
  const Flat x1 = flat_from_json(j.at("X1"), space);
  const Flat x2 = flat_from_json(j.at("X2"), space);
  EXPECT_TRUE(perp_m(x1, x2, TypedPerpParams{1, 2, 2}));
  EXPECT_EQ(run({"witness", "--m", "0", "--k1", "2", "--k2", "2", "--dim", "3"}).code, 2);
  EXPECT_EQ(run({"witness", "--kind", "nope"}).code, 2);
}

TEST_F(Cli, WitnessLemmas) {
  const auto s = test::euclid(3);
  write("space.json", space_to_json(*s));
  write("l1.json", flat_to_json(test::through_origin(s, {test::unit(3, 0)})));
  write("l2.json", flat_to_json(test::flat(s, test::unit(3, 2), {test::unit(3, 1)})));
  const auto r = run({"witness", "--kind", "lemma2", "--space", path("space.json"), "--k1", "1",
                      "--k2", "2", "--first", path("l1.json"), "--second", path("l2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("feet"), json({{"0", "0", "0"}, {"0", "0", "1"}}));
  EXPECT_TRUE(perp_x(flat_from_json(j.at("X1"), s), flat_from_json(j.at("X2"), s)));

  write("y1.json", flat_to_json(test::through_origin(s, {test::unit(3, 2)})));
  write("x2.json", flat_to_json(test::through_origin(s, {test::unit(3, 0), test::unit(3, 1)})));
  const auto l1 = run({"witness", "--kind", "lemma1", "--space", path("space.json"), "--m", "0",
                       "--first", path("y1.json"), "--second", path("x2.json")});
  ASSERT_EQ(l1.code, 0) << l1.err;
  EXPECT_EQ(json::parse(l1.out).at("X1"), flat_to_json(test::through_origin(s, {test::unit(3, 2)})));

  // Non-orthogonal lines violate the lemma 2 precondition.
  write("l3.json", flat_to_json(test::through_origin(s, {test::vec({1, 1, 0})})));
  EXPECT_EQ(run({"witness", "--kind", "lemma2", "--space", path("space.json"), "--k1", "1",
                 "--k2", "2", "--first", path("l1.json"), "--second", path("l3.json")})
                .code,
            2);
  EXPECT_EQ(run({"witness", "--kind", "lemma1", "--space", path("space.json")}).code, 2);
  EXPECT_EQ(run({"witness", "--kind", "lemma1", "--space", path("missing.json")}).code, 2);
}

}  // namespace
}  // namespace orthokernel
