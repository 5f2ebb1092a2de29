#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "sepchoice/json_io.hpp"
#include "sepchoice/scenarios.hpp"
#include "support/corpus.hpp"

using namespace sepchoice;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  const fs::path dir = fs::path("cli_scratch");
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Runs the tool with stdout and stderr captured into one stream.
CmdResult run(const std::string& args) {
  const fs::path out_file = scratch() / "last_output.txt";
  const std::string cmd =
      std::string(SEPCHOICE_BIN) + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  return r;
}

fs::path table1_file(const std::string& alpha) {
  const fs::path p =
      scratch() / ("t_" + std::string(1, alpha[0]) + alpha.substr(alpha.find('/') + 1) + ".json");
  const auto r = run("generate table1 --alpha " + alpha);
  REQUIRE(r.code == 0);
  spill(p, r.out);
  return p;
}

}  // namespace

TEST_CASE("generate then check classifies the family endpoints") {
  const fs::path half = table1_file("1/2");
  const auto entangled = run("check " + half.string());
  CHECK(entangled.code == 3);
  CHECK(entangled.out.find("Entangled") != std::string::npos);
  CHECK(entangled.out.find("fails with value 4") != std::string::npos);

  const fs::path quarter = table1_file("1/4");
  const auto separable = run("check " + quarter.string());
  CHECK(separable.code == 0);
  CHECK(separable.out.find("Separable") != std::string::npos);
}

TEST_CASE("generate rejects parameters outside the family") {
  const auto r = run("generate table1 --alpha 3/5");
  CHECK(r.code == 2);
  CHECK(r.out.find("alpha") != std::string::npos);
  CHECK(run("generate mystery --alpha 1/4").code == 2);
}

TEST_CASE("json output is byte-identical across runs") {
  const fs::path half = table1_file("1/2");
  const auto first = run("check --json " + half.string());
  const auto second = run("check --json " + half.string());
  CHECK(first.code == 3);
  CHECK(first.out == second.out);

  const json doc = json::parse(first.out);
  CHECK(doc.at("classification").at("label") == "Entangled");
  CHECK(doc.at("chsh").at("violation").at("value") == "4");
}

TEST_CASE("allowed-set restriction switches the verdict and exit code") {
  const fs::path half = table1_file("1/2");
  const auto r = run("check --allowed 0=0,2,3 " + half.string());
  CHECK(r.code == 5);
  CHECK(r.out.find("RestrictedViolation") != std::string::npos);
  CHECK(run("check --allowed 0=0,9 " + half.string()).code == 2);
  CHECK(run("check --allowed 0=0 --allowed 0=1 " + half.string()).code == 2);
}

TEST_CASE("signaling input exits with its own code") {
  const fs::path p = scratch() / "signal.json";
  spill(p, rule_to_json(corpus::signaling_rule()));
  const auto r = run("check " + p.string());
  CHECK(r.code == 4);
  CHECK(r.out.find("Signaling") != std::string::npos);
}

TEST_CASE("invalid probabilities exit 2 and name the menu path") {
  auto rule = gen_table1(rat(1, 4));
  rule.probs[2][0] = rat(5, 4);
  const fs::path p = scratch() / "broken.json";
  spill(p, rule_to_json(rule));
  const auto r = run("check " + p.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("menu path 2") != std::string::npos);
}

TEST_CASE("missing and malformed files exit 2") {
  CHECK(run("check " + (scratch() / "absent.json").string()).code == 2);
  const fs::path p = scratch() / "garbage.json";
  spill(p, "]{ nope");
  CHECK(run("check " + p.string()).code == 2);
  CHECK(run("validate " + p.string()).code == 2);
}

TEST_CASE("chsh subcommand mirrors the bound test") {
  CHECK(run("chsh " + table1_file("1/2").string()).code == 3);
  CHECK(run("chsh " + table1_file("1/4").string()).code == 0);
}

TEST_CASE("validate accepts both file kinds") {
  const auto rule_ok = run("validate " + table1_file("1/3").string());
  CHECK(rule_ok.code == 0);
  CHECK(rule_ok.out.find("2 DMs") != std::string::npos);

  const fs::path sp = scratch() / "space.json";
  spill(sp, space_to_json(two_dm_binary_space()));
  CHECK(run("validate " + sp.string()).code == 0);
}

TEST_CASE("hrep reports facet counts for full and restricted columns") {
  const fs::path sp = scratch() / "space.json";
  spill(sp, space_to_json(two_dm_binary_space()));
  const auto full = run("hrep " + sp.string() + " --dm 0");
  CHECK(full.code == 0);
  CHECK(json::parse(full.out).at("facets").size() == 6);
  const auto restricted = run("hrep " + sp.string() + " --dm 0 --allowed 0,2,3");
  CHECK(json::parse(restricted.out).at("facets").size() == 8);
  CHECK(run("hrep " + sp.string() + " --dm 2").code == 2);
}

TEST_CASE("extension flags attach a feasibility section") {
  const auto r = run("check --json --extension-k 2 --avg " + table1_file("3/8").string());
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("extension").at("feasible") == true);
  CHECK(doc.at("extension").at("k") == 2);
  CHECK(doc.at("extension").at("on_average") == true);

  const auto inf = run("check --json --extension-k 2 --avg " + table1_file("1/2").string());
  CHECK(inf.code == 3);
  CHECK(json::parse(inf.out).at("extension").at("feasible") == false);

  CHECK(run("check --extension-k 5 " + table1_file("3/8").string()).code == 2);
}

TEST_CASE("certify round trip accepts sound reports and rejects tampering") {
  const fs::path half = table1_file("1/2");
  const fs::path rep = scratch() / "report.json";
  const auto checked = run("check --json " + half.string());
  REQUIRE(checked.code == 3);
  spill(rep, checked.out);

  const auto ok = run("certify " + half.string() + " " + rep.string());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verified") != std::string::npos);

  json doc = json::parse(checked.out);
  doc["classification"]["farkas"][0] = "5";
  const fs::path bad = scratch() / "tampered.json";
  spill(bad, doc.dump());
  const auto rejected = run("certify " + half.string() + " " + bad.string());
  CHECK(rejected.code == 6);
  CHECK(rejected.out.find("rejected") != std::string::npos);
}

TEST_CASE("timings flag adds the only nondeterministic field") {
  const fs::path quarter = table1_file("1/4");
  const auto timed = run("check --json --timings " + quarter.string());
  CHECK(timed.code == 0);
  CHECK(json::parse(timed.out).contains("seconds"));
  const auto plain = run("check --json " + quarter.string());
  CHECK(!json::parse(plain.out).contains("seconds"));
}

TEST_CASE("selftest passes") {
  const auto r = run("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
