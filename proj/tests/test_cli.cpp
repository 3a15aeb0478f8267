#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vakit/builders.hpp"
#include "vakit/structure_file.hpp"

using namespace vakit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(VAKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vakit_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name) { return (dir_ / name).string(); }

  std::string example(const std::string& name) {
    std::string path = file(name + ".vas");
    save_structure(make_example(name), path);
    return path;
  }

  std::string write(const std::string& name, const std::string& text) {
    std::string path = file(name);
    std::ofstream(path) << text;
    return path;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CheckPassesWithExitZero) {
  auto r = run("--no-timing check " + example("exterior2") + " --suite all");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["schema"], "vakit-report/1");
}

TEST_F(Cli, FailingAxiomExitsOne) {
  auto r = run("--no-timing check " + example("zero-beta"));
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& a : j["axioms"]) {
    if (a["id"] == "jacobi") {
      found = true;
      EXPECT_EQ(a["verdict"], "fail");
      EXPECT_EQ(a["witness"]["rhs"], "-e11");
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(Cli, OutputIsDeterministic) {
  auto path = example("free2-exterior2");
  auto a = run("--no-timing check " + path + " --suite all");
  auto b = run("--no-timing --workers 4 check " + path + " --suite all");
  auto c = run("--no-timing --workers 1 check " + path + " --suite all");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
}

TEST_F(Cli, ReplayReproducesWitness) {
  auto path = example("zero-beta");
  auto r = run("--no-timing check " + path);
  auto report = write("report.json", r.out);
  auto rep = run("--no-timing check " + path + " --replay " + report);
  EXPECT_EQ(rep.code, 1) << rep.out;
  auto j = nlohmann::json::parse(rep.out);
  EXPECT_EQ(j["suite"], "replay");
  EXPECT_EQ(j["axioms"][0]["data"]["reproduced"], true);
}

TEST_F(Cli, DualizeWritesStructureAndPairing) {
  auto out = file("dual.vas");
  auto r = run("--no-timing dualize " + example("diff-eps3") + " -o " + out);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(out), serialize(make_example("dual-diff-eps3")));
  auto pairing = nlohmann::json::parse(slurp(out + ".pairing.json"));
  EXPECT_EQ(pairing["target"], "V'");
  auto back = run("--no-timing check " + out);
  EXPECT_EQ(back.code, 0) << back.out;
}

TEST_F(Cli, DualizeRefusalExitsTwo) {
  std::string text = serialize(make_example("exterior1"));
  std::string table = "table\n";
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      table += "(" + std::to_string(a) + ") (" + std::to_string(b) + ") -> " +
               ((a * b) % 2 == 0 || (a == 1 && b == 1) ? "1" : "-1") + "\n";
  auto at = text.find("sign_bilinear [[1]]\n");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, std::string("sign_bilinear [[1]]\n").size(), table);
  auto r = run("--no-timing dualize " + write("odd.vas", text) + " -o " + file("odd-dual.vas"));
  EXPECT_EQ(r.code, 2) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "refused");
  EXPECT_FALSE(fs::exists(file("odd-dual.vas")));
}

TEST_F(Cli, C2WritesPoissonJson) {
  auto out = file("r.json");
  auto r = run("--no-timing c2 " + example("diff-eps3") + " --poisson -o " + out);
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["schema"], "vakit-c2/1");
  auto z = run("--no-timing c2 " + example("zero-beta") + " --poisson -o " + file("z.json"));
  EXPECT_EQ(z.code, 1);
}

TEST_F(Cli, IsoCheckTheorems) {
  auto eps = example("diff-eps3");
  for (auto t : {"7.5", "poisson"}) EXPECT_EQ(run("--no-timing iso-check " + eps + " --theorem " + t).code, 0);
  EXPECT_EQ(run("--no-timing iso-check " + example("dual-diff-eps3") + " --theorem 7.6").code, 0);
  EXPECT_EQ(run("--no-timing iso-check " + example("adjoint-diff-eps3") + " --theorem 7.10").code, 0);
  EXPECT_EQ(run("--no-timing iso-check " + example("dual-adjoint-diff-eps3") + " --theorem copoisson-comodule").code, 0);
  EXPECT_EQ(run("--no-timing iso-check " + eps + " --theorem 7.6").code, 3);
  EXPECT_EQ(run("--no-timing iso-check " + eps + " --theorem 8.1").code, 3);
}

TEST_F(Cli, InputErrorsExitThree) {
  auto missing = run("check " + file("nope.vas"));
  EXPECT_EQ(missing.code, 3);
  EXPECT_EQ(nlohmann::json::parse(missing.out)["verdict"], "error");
  std::string text = serialize(make_example("diff-eps3"));
  auto at = text.find("-1 e e -> e2");
  text.replace(at, 12, "-1 e e -> q");
  auto bad = run("check " + write("bad.vas", text));
  EXPECT_EQ(bad.code, 3);
  auto j = nlohmann::json::parse(bad.out);
  EXPECT_EQ(j["error"]["kind"], "parse");
  EXPECT_GT(j["error"]["line"].get<int>(), 1);
  EXPECT_EQ(j["error"]["column"], 11);
  EXPECT_EQ(run("check " + example("diff-eps3") + " --suite module").code, 3);
  EXPECT_EQ(run("frobnicate").code, 3);
  EXPECT_EQ(run("example no-such -o " + file("x.vas")).code, 3);
}

TEST_F(Cli, ExampleSubcommand) {
  auto out = file("e.vas");
  EXPECT_EQ(run("example exterior3 -o " + out).code, 0);
  EXPECT_EQ(slurp(out), serialize(make_example("exterior3")));
  EXPECT_EQ(run("--help").code, 0);
}
