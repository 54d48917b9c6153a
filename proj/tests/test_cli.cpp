#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jetkernel/cli.hpp"
#include "jetkernel/error.hpp"
#include "jetkernel/serialize.hpp"

using namespace jetkernel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kWorkspace = R"({
  "algebras": [{"name": "D1", "vars": ["t"], "generators": ["t^2"]}],
  "spaces": [
    {"name": "D", "algebra": "D1"},
    {"name": "V", "params": ["a", "w"]},
    {"name": "W", "params": ["b", "z"]}
  ],
  "morphisms": [
    {"name": "iota", "source": "D", "target": "V", "components": ["t", "0"]},
    {"name": "f", "source": "V", "target": "R^1", "components": ["a + w"]},
    {"name": "iota2", "source": "D", "target": "W", "components": ["t", "0"]},
    {"name": "g", "source": "W", "target": "R^1", "components": ["b + z + b^2"]},
    {"name": "h", "source": "W", "target": "R^1", "components": ["b + 1"]}
  ],
  "pairs": [
    {"name": "p", "iota": "iota", "f": "f"},
    {"name": "q", "iota": "iota2", "f": "g"},
    {"name": "r", "iota": "iota2", "f": "h"}
  ]
})";

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("jetkernel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(path("ws.json")) << kWorkspace;
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, WeilNewText) {
  Outcome r = run({"weil", "new", "--d", "1", "--gens", "x^2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("dim: 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("nilpotency_order: 1"), std::string::npos) << r.out;
}

TEST(Cli, WeilNewJson) {
  Outcome r = run({"--json", "weil", "new", "--d", "2", "--gens", "x^2,x*y,y^3", "--vars", "x,y"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("dim"), 4);
  EXPECT_EQ(j.at("nilpotency_order"), 2);
}

TEST(Cli, DomainErrorsExitOne) {
  Outcome r = run({"--json", "weil", "new", "--d", "1", "--gens", "x - 1"});
  EXPECT_EQ(r.code, 1);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("error").at("kind"), "not-nilpotent");

  Outcome bad = run({"hadamard", "--f", "t", "--y", "t", "--order", "1", "--x", "t"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out).at("error").at("kind"), "shape");

  Outcome parse = run({"hadamard", "--f", "t +", "--y", "t", "--order", "1"});
  EXPECT_EQ(parse.code, 1);
  EXPECT_EQ(Json::parse(parse.out).at("error").at("kind"), "parse");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"jet", "dim", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"factor", "witness", "--kind", "sideways"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, JetAndHadamardCommands) {
  Outcome d = run({"--json", "jet", "dim", "--n", "2", "--m", "1", "--k", "3"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(Json::parse(d.out).at("fiber_dim"), 10);

  Outcome p = run({"--json", "jet", "prolong", "--sections", "x*y", "--vars", "x,y", "--k", "2", "--base", "1,1"});
  ASSERT_EQ(p.code, 0) << p.err;
  Json values = Json::parse(p.out).at("values");
  EXPECT_EQ(values.at("u[1,1]"), "1");
  EXPECT_EQ(values.at("u[2,0]"), "0");

  Outcome h = run({"--json", "hadamard", "--f", "t^3", "--y", "t", "--order", "1"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(Json::parse(h.out).at("remainders").at("[2]"), "t");
}

TEST_F(CliFiles, FactorCommands) {
  Outcome d = run({"--in", path("ws.json"), "--json", "factor", "decide", "--p", "p", "--q", "q"});
  ASSERT_EQ(d.code, 0) << d.out << d.err;
  Json dj = Json::parse(d.out);
  EXPECT_EQ(dj.at("equivalent"), true);
  for (const auto& c : dj.at("verification")) EXPECT_EQ(c.at("status"), "exact");

  Outcome n = run({"--in", path("ws.json"), "--json", "factor", "decide", "--p", "p", "--q", "r"});
  ASSERT_EQ(n.code, 0) << n.out;
  EXPECT_EQ(Json::parse(n.out).at("equivalent"), false);
  EXPECT_EQ(Json::parse(n.out).at("first_difference"), 0);

  Outcome w = run({"--in", path("ws.json"), "--json", "factor", "witness", "--kind", "d1"});
  ASSERT_EQ(w.code, 0) << w.out;
  EXPECT_EQ(Json::parse(w.out).at("delta").at(0), "t^2");

  Outcome e = run({"--in", path("ws.json"), "factor", "embed", "--name", "p"});
  EXPECT_EQ(e.code, 0) << e.out;

  Outcome missing = run({"--in", path("ws.json"), "factor", "decide", "--p", "p", "--q", "nope"});
  EXPECT_EQ(missing.code, 1);
}

TEST_F(CliFiles, OutWritesFileAndNoPartialOnFailure) {
  const std::string target = path("result.json");
  Outcome ok = run({"--json", "--out", target, "jet", "dim", "--n", "1", "--m", "1", "--k", "1"});
  ASSERT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.out.empty());
  std::ifstream f(target);
  Json j = Json::parse(f);
  EXPECT_EQ(j.at("fiber_dim"), 2);

  const std::string other = path("never.json");
  Outcome bad = run({"--json", "--out", other, "weil", "new", "--d", "1", "--gens", "x - 1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(fs::exists(other));
  EXPECT_FALSE(fs::exists(other + ".tmp"));
}

TEST(Workspace, RoundTripIsStable) {
  Workspace ws = Workspace::from_json(Json::parse(kWorkspace));
  Json once = ws.to_json();
  Json twice = Workspace::from_json(once).to_json();
  EXPECT_EQ(once, twice);
  EXPECT_EQ(ws.pairs().size(), 3u);
  EXPECT_EQ(Workspace::from_json(once).pair("q"), ws.pair("q"));
}

TEST(Workspace, ObjectsRoundTrip) {
  Workspace ws = Workspace::from_json(Json::parse(kWorkspace));
  for (const auto& [name, m] : ws.morphisms()) {
    EXPECT_EQ(ws.read_morphism(to_json(m)), m) << name;
  }
  for (const auto& [name, p] : ws.pairs()) {
    EXPECT_EQ(ws.read_pair(to_json(p)), p) << name;
  }
  for (const auto& [name, a] : ws.algebras()) {
    EXPECT_EQ(ws.read_algebra(to_json(a)), a) << name;
  }
}

TEST(Workspace, MalformedDocuments) {
  EXPECT_THROW(Workspace::from_json(Json::parse(R"({"algebras": [{"name": "A"}]})")), Error);
  EXPECT_THROW(Workspace::from_json(Json::parse(
                   R"({"algebras": [{"name": "A", "generators": ["x^2"]}, {"name": "A", "generators": ["y^2"]}]})")),
               Error);
}
