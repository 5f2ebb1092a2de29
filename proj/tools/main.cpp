#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sepchoice/cone.hpp"
#include "sepchoice/error.hpp"
#include "sepchoice/extension.hpp"
#include "sepchoice/json_io.hpp"
#include "sepchoice/report.hpp"
#include "sepchoice/scenarios.hpp"
#include "sepchoice/separability.hpp"

using namespace sepchoice;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Err::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t parse_index(const std::string& s) {
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos, Err::Parse,
          "expected a nonnegative integer, got \"" + s + "\"");
  return static_cast<std::size_t>(std::stoull(s));
}

std::vector<std::size_t> parse_csv(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_index(item));
  require(!out.empty(), Err::Parse, "expected a comma-separated index list");
  return out;
}

// each spec reads "dm=c1,c2,..." with 0-based indices
AllowedSets parse_allowed(const std::vector<std::string>& specs, const ChoiceSpace& space) {
  if (specs.empty()) return {};
  AllowedSets out(space.n_dms());
  for (const auto& s : specs) {
    auto eq = s.find('=');
    require(eq != std::string::npos, Err::Parse, "--allowed expects dm=c1,c2,...");
    std::size_t dm = parse_index(s.substr(0, eq));
    require(dm < space.n_dms(), Err::Parse,
            "--allowed names DM " + std::to_string(dm) + " but the space has " +
                std::to_string(space.n_dms()) + " DMs");
    require(!out[dm].has_value(), Err::Parse,
            "DM " + std::to_string(dm) + " is restricted twice");
    out[dm] = parse_csv(s.substr(eq + 1));
  }
  return out;
}

struct CheckOpts {
  std::string file;
  std::vector<std::string> allowed;
  bool chsh = false;
  std::size_t extension_k = 0;
  bool avg = false;
  bool allow_large_k = false;
  bool json_out = false;
  bool timings = false;
};

int run_check(const CheckOpts& o) {
  std::string bytes = read_file(o.file);
  JointChoiceRule rule = parse_rule_json(bytes);
  AllowedSets allowed = parse_allowed(o.allowed, rule.space);
  if (o.extension_k > 4)
    require(o.allow_large_k, Err::TooLarge,
            "--extension-k above 4 needs --allow-large-k (the LP grows exponentially in k)");

  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.digest = input_digest(bytes);
  rep.allowed = allowed;
  rep.classification = classify(rule, allowed);

  // bound and extension sections only make sense once the rule itself is sound
  if (rep.classification.label != Label::Invalid) {
    if (o.chsh) {
      rep.chsh = run_chsh(rule);
    } else {
      try {
        rep.chsh = run_chsh(rule);
      } catch (const Error& e) {
        if (e.code() != Err::NotChshScenario) throw;
      }
    }
    if (o.extension_k > 0)
      rep.extension =
          ExtensionReport{o.extension_k, o.avg, check_k_marginalizable(rule, o.extension_k, o.avg)};
  }
  if (o.timings)
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (o.json_out)
    std::cout << report_to_json(rep) << "\n";
  else
    std::cout << report_to_text(rep, rule);
  return exit_code_for(rep.classification.label);
}

int run_chsh_cmd(const std::string& file, bool json_out) {
  JointChoiceRule rule = parse_rule_json(read_file(file));
  if (auto defect = rule_invariant_violation(rule)) fail(Err::Parse, *defect);
  ChshReport rep = run_chsh(rule);
  if (json_out) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 2; ++j) row.push_back(to_string(rep.table.e[i][j]));
      rows.push_back(row);
    }
    nlohmann::json out{{"correlators", rows}};
    out["violation"] = rep.violation
                           ? nlohmann::json{{"bound", rep.violation->bound},
                                            {"value", to_string(rep.violation->value)}}
                           : nlohmann::json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "correlators ";
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        std::cout << " E(" << i << "," << j << ")=" << to_string(rep.table.e[i][j]);
    std::cout << "\n";
    if (rep.violation)
      std::cout << "violated     " << bound_inequality_text(rep.violation->bound)
                << " fails with value " << to_string(rep.violation->value) << "\n";
    else
      std::cout << "bounds       all four expressions lie in [-2, 2]\n";
  }
  return rep.violation ? 3 : 0;
}

int run_hrep(const std::string& file, std::size_t dm, const std::string& allowed_csv) {
  ChoiceSpace space = parse_space_json(read_file(file));
  require(dm < space.n_dms(), Err::Parse, "--dm out of range");
  RationalMatrix a = allowed_csv.empty() ? build_type_matrix(space, dm)
                                         : restrict_type_matrix(space, dm, parse_csv(allowed_csv));
  RationalMatrix h = v_to_h(a);
  nlohmann::json facets = nlohmann::json::array();
  for (std::size_t r = 0; r < h.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < h.cols(); ++c) row.push_back(to_string(h.at(r, c)));
    facets.push_back(row);
  }
  std::cout << nlohmann::json{{"dm", dm}, {"facets", facets}}.dump(2) << "\n";
  return 0;
}

int run_generate(const std::string& name, const std::string& alpha_text) {
  if (name == "table1") {
    require(!alpha_text.empty(), Err::Parse, "table1 needs --alpha p/q");
    std::cout << rule_to_json(gen_table1(parse_rational(alpha_text))) << "\n";
    return 0;
  }
  fail(Err::Parse, "unknown scenario \"" + name + "\" (known: table1)");
}

int run_validate(const std::string& file) {
  std::string bytes = read_file(file);
  nlohmann::json j = nlohmann::json::parse(bytes, nullptr, false);
  require(!j.is_discarded(), Err::Parse, "input is not valid JSON");
  if (j.is_object() && j.contains("rule")) {
    JointChoiceRule rule = parse_rule_json(bytes);
    if (auto defect = rule_invariant_violation(rule)) {
      std::cout << "invalid rule: " << *defect << "\n";
      return 2;
    }
    std::cout << "ok: rule over " << rule.space.n_dms() << " DMs, "
              << rule.space.menu_path_count() << " menu paths\n";
  } else {
    ChoiceSpace space = parse_space_json(bytes);
    std::cout << "ok: space with " << space.n_dms() << " DMs\n";
  }
  return 0;
}

int run_certify(const std::string& rule_file, const std::string& report_file) {
  std::string mismatch = verify_report_json(read_file(report_file), read_file(rule_file));
  if (mismatch.empty()) {
    std::cout << "certificate verified\n";
    return 0;
  }
  std::cout << "certificate rejected: " << mismatch << "\n";
  return 6;
}

int run_selftest() {
  int failures = 0;
  auto report = [&](bool ok, const char* name) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (long j = 0; j <= 12 && ok; ++j) {
      auto rule = gen_table1(rat(j, 24));
      ok = !check_chsh(rule).has_value() == is_feasible(check_separable(rule));
    }
    report(ok, "bound check tracks mixture feasibility on the one-parameter family");
  }
  {
    KMarginalizableTest test(two_dm_binary_space(), 2, true);
    bool ok = true;
    for (long j = 0; j <= 12 && ok; ++j) {
      auto rule = gen_table1(rat(j, 24));
      ok = is_feasible(test.solve(rule)) == is_feasible(check_separable(rule));
    }
    report(ok, "two averaged replicas track mixture feasibility on the family");
  }
  {
    auto space = two_dm_binary_space();
    bool ok = v_to_h(build_type_matrix(space, 0)).rows() == 6;
    auto [dspace, allowed] = gen_dominance_space();
    ok = ok && v_to_h(restrict_type_matrix(dspace, 0, *allowed[0])).rows() == 8;
    report(ok, "facet counts for the full and dominance-restricted cones");
  }
  {
    auto space = two_dm_binary_space();
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = 0; j < 4 && ok; ++j)
        ok = classify(gen_mixture(space, {{{i, j}, 1}})).label == Label::Separable;
    report(ok, "every deterministic profile classifies separable");
  }
  {
    auto rule = gen_table1(rat(1, 3));
    bool ok = stacked(parse_rule_json(rule_to_json(rule))) == stacked(rule);
    report(ok, "rule files round-trip through the schema");
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact separability, signaling, and bound tests for joint choice rules"};
  app.require_subcommand(1);

  std::string vfile;
  auto* validate = app.add_subcommand("validate", "check a space or rule file against the schema");
  validate->add_option("file", vfile, "space or rule JSON file")->required();

  CheckOpts co;
  auto* check = app.add_subcommand("check", "classify a rule file with verified certificates");
  check->add_option("file", co.file, "rule JSON file")->required();
  check->add_option("--allowed", co.allowed,
                    "restrict a DM to listed deterministic rules, as dm=c1,c2,...");
  check->add_flag("--chsh", co.chsh, "insist on the correlator bound section");
  check->add_option("--extension-k", co.extension_k, "also test a k-replica extension");
  check->add_flag("--avg", co.avg, "extension reproduces the rule on average");
  check->add_flag("--allow-large-k", co.allow_large_k, "lift the --extension-k cap of 4");
  check->add_flag("--json", co.json_out, "emit the report as JSON");
  check->add_flag("--timings", co.timings, "include wall-clock seconds (non-reproducible bytes)");

  std::string cfile;
  bool cjson = false;
  auto* chsh = app.add_subcommand("chsh", "correlator table and bound check for a rule file");
  chsh->add_option("file", cfile, "rule JSON file")->required();
  chsh->add_flag("--json", cjson, "emit JSON");

  std::string hfile, hallowed;
  std::size_t hdm = 0;
  auto* hrep = app.add_subcommand("hrep", "facet description of a DM's deterministic-rule cone");
  hrep->add_option("file", hfile, "space JSON file")->required();
  hrep->add_option("--dm", hdm, "0-based DM index")->required();
  hrep->add_option("--allowed", hallowed, "comma-separated allowed rule columns");

  std::string gname, galpha;
  auto* generate = app.add_subcommand("generate", "emit a named scenario as a rule file");
  generate->add_option("name", gname, "scenario name (table1)")->required();
  generate->add_option("--alpha", galpha, "table1 parameter, rational in [0,1/2]");

  std::string yrule, yreport;
  auto* certify = app.add_subcommand("certify", "re-verify a saved JSON report against a rule file");
  certify->add_option("rule", yrule, "rule JSON file")->required();
  certify->add_option("report", yreport, "saved report JSON file")->required();

  auto* selftest = app.add_subcommand("selftest", "run the built-in consistency suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return run_validate(vfile);
    if (check->parsed()) return run_check(co);
    if (chsh->parsed()) return run_chsh_cmd(cfile, cjson);
    if (hrep->parsed()) return run_hrep(hfile, hdm, hallowed);
    if (generate->parsed()) return run_generate(gname, galpha);
    if (certify->parsed()) return run_certify(yrule, yreport);
    if (selftest->parsed()) return run_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Err::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
