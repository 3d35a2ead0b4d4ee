#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <regex>
#include <string>

#include "bfred/cli/report.hpp"
#include "bfred/spectral/language.hpp"
#include "doctest.h"

using namespace bfred;
using ojson = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& exe, const std::string& args) {
  const std::string cmd = "'" + exe + "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Run tool(const std::string& args) { return run(BFRED_CLI_PATH, args); }

std::string example(const char* name) { return std::string("'") + BFRED_EXAMPLES_DIR + "/" + name + "'"; }

}  // namespace

TEST_CASE("workspace files round trip") {
  const auto ws = cli::load_workspace(std::string(BFRED_EXAMPLES_DIR) + "/u2.json");
  CHECK(ws.algebras.size() == 2);
  CHECK(ws.element("half").coords()[2] == exact::GaussianRational::parse("2+i"));
  const auto once = cli::to_json(ws);
  const auto twice = cli::to_json(cli::parse_workspace(once.dump()));
  CHECK(once == twice);
  CHECK(once["elements"]["half"]["coords"][0] == "1/2");
  CHECK(once["elements"]["a2"]["coords"][0] == 3);
}

TEST_CASE("workspace diagnostics") {
  CHECK_THROWS_AS(cli::parse_workspace("{\"algebras\": 3}"), ParseError);
  CHECK_THROWS_AS(cli::parse_workspace("{\"algebras\": {"), ParseError);
  try {
    cli::parse_workspace(R"({"algebras": {"A": {"ambient_dim": 1, "basis": [[[0.5]]]}}})");
    FAIL("float accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/algebras/A/basis/0/0/0") != std::string::npos);
  }
  try {
    cli::parse_workspace(R"({"algebras": {"A": {"ambient_dim": 2, "basis": [[[0, 1], [0, 0]]]}}})");
    FAIL("non-algebra accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/algebras/A") != std::string::npos);
  }
  const auto ws = cli::parse_workspace("{}");
  CHECK_THROWS_AS(ws.element("x"), cli::ResolutionError);
  CHECK_THROWS_AS(ws.homomorphism("x"), cli::ResolutionError);
}

TEST_CASE("reports") {
  const auto ws = cli::load_workspace(std::string(BFRED_EXAMPLES_DIR) + "/u2.json");
  const auto c = cli::classify_report(ws.homomorphism("T"), ws.element("e12"), 8, 0);
  CHECK(c["fredholm"] == false);
  CHECK(c["bfredholm"]["member"] == true);
  CHECK(c["bfredholm"]["degree"] == 1);
  CHECK(c["weyl"]["member"] == false);
  CHECK(c["bweyl"]["found"][0] == 1);
  const auto s = cli::spectra_report(ws.homomorphism("T"), ws.element("a2"), 0);
  CHECK(s["sigma_BF"] == "{}");
  const auto d = cli::diag_report(ws.diagonal("fam"));
  CHECK(d["sigma_BF"] == "finite [0]");
  const std::string text = cli::render_text(c);
  CHECK(text.find("bfredholm:\n  member: true\n  degree: 1\n") != std::string::npos);
}

TEST_CASE("classify and drazin commands") {
  auto r = tool("classify " + example("u2.json") + " T e12 --format json");
  REQUIRE(r.code == 0);
  const auto j = ojson::parse(r.out);
  CHECK(j["fredholm"] == false);
  CHECK(j["bfredholm"]["member"] == true);
  CHECK(j["bfredholm"]["degree"] == 1);
  CHECK(j["weyl"]["member"] == false);
  CHECK(j["bweyl"]["found"][0] == 1);

  r = tool("drazin " + example("nilp3.json") + " nilp3");
  CHECK(r.code == 0);
  CHECK(r.out.find("inverse: [[0,0,0],[0,0,0],[0,0,0]]") != std::string::npos);
  CHECK(r.out.find("index: 3") != std::string::npos);
  r = tool("drazin " + example("nilp3.json") + " one");
  CHECK(r.out.find("index: 0") != std::string::npos);

  r = tool("spectra " + example("u2.json") + " T a1 a2 --format json");
  CHECK(r.code == 0);
  CHECK(ojson::parse(r.out)["a1"]["sigma_BF"] == "{}");
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(tool("classify " + example("u2.json") + " T nope").code == 2);
  CHECK(tool("classify " + example("u2.json") + " S e12").code == 2);
  CHECK(tool("drazin " + example("missing.json") + " x").code == 2);
  const auto bad = tool("drazin " + example("bad_nonsquare.json") + " x");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("/algebras/A/basis/0/1") != std::string::npos);
  CHECK(tool("").code == 2);
  CHECK(tool("frobnicate").code == 2);
  CHECK(tool("verify --filter no-such-tag").code == 2);
  CHECK(tool("verify --family octagon").code == 2);
}

TEST_CASE("diag command") {
  auto r = tool("diag 'family(1/m+1/n)'");
  CHECK(r.code == 0);
  CHECK(r.out.find("sigma_BF: finite [0]") != std::string::npos);
  r = tool("diag 'const 5'");
  CHECK(r.out.find("sigma_BF: empty") != std::string::npos);
  r = tool("diag fam --workspace " + example("u2.json"));
  CHECK(r.out.find("sigma_BF: finite [0]") != std::string::npos);
  r = tool("diag 'famly 1/m'");
  CHECK(r.code == 2);
  CHECK(r.out.find("parse error") != std::string::npos);
}

TEST_CASE("verify command") {
  auto r = tool("verify --trials 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("no trials requested") != std::string::npos);
  r = tool("verify --trials 3 --filter kernel-in-bf,inverse-identity --format json");
  CHECK(r.code == 0);
  const auto j = ojson::parse(r.out);
  CHECK(j["results"].size() == 2);

  r = run(BFRED_CLI_MUTANT_PATH, "verify --trials 3 --filter kernel-in-bf");
  CHECK(r.code == 1);
  std::smatch m;
  REQUIRE(std::regex_search(r.out, m, std::regex("FAILURE (\\S+) trial=(\\d+)")));
  const std::string replay = "verify --trials 3 --replay " + m[1].str() + " --trial " + m[2].str();
  const auto again = run(BFRED_CLI_MUTANT_PATH, replay);
  CHECK(again.code == 1);
  CHECK(again.out.find("FAILURE") != std::string::npos);
  CHECK(tool(replay).code == 0);
}
