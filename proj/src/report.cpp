#include "sepchoice/report.hpp"

#include <sstream>
#include <variant>

#include "json.hpp"
#include "sepchoice/cone.hpp"
#include "sepchoice/error.hpp"
#include "sepchoice/json_io.hpp"

namespace sepchoice {
namespace {

using nlohmann::json;

json rational_array(const RationalVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

RationalVector rationals_from(const json& j, const char* what) {
  require(j.is_array(), Err::Parse, std::string(what) + " must be an array");
  RationalVector v;
  for (const json& e : j) {
    require(e.is_string(), Err::Parse, std::string(what) + " entries must be rational strings");
    v.push_back(parse_rational(e.get<std::string>()));
  }
  return v;
}

json index_array(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (std::size_t x : v) a.push_back(x);
  return a;
}

std::size_t size_from(const json& j, const char* what) {
  require(j.is_number_integer() && j.get<long long>() >= 0, Err::Parse,
          std::string(what) + " must be a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

std::vector<std::size_t> indices_from(const json& j, const char* what) {
  require(j.is_array(), Err::Parse, std::string(what) + " must be an array");
  std::vector<std::size_t> v;
  for (const json& e : j) v.push_back(size_from(e, what));
  return v;
}

Rational rational_from(const json& j, const char* what) {
  require(j.is_string(), Err::Parse, std::string(what) + " must be a rational string");
  return parse_rational(j.get<std::string>());
}

json marginality_json(const MarginalityViolation& v) {
  return json{{"choices", index_array(v.choices)}, {"dm", v.dm},
              {"lhs", to_string(v.lhs)},           {"menu_a", v.menu_a},
              {"menu_b", v.menu_b},                {"menus", index_array(v.menus)},
              {"rhs", to_string(v.rhs)}};
}

json classification_json(const Classification& c) {
  json j{{"label", label_name(c.label)}};
  if (c.label == Label::Invalid) j["message"] = c.message;
  if (c.marginality) j["marginality"] = marginality_json(*c.marginality);
  if (c.restriction)
    j["restriction"] =
        json{{"row", c.restriction->row}, {"value", to_string(c.restriction->value)}};
  if (c.mixture) j["mixture"] = rational_array(*c.mixture);
  if (c.farkas) j["farkas"] = rational_array(*c.farkas);
  return j;
}

json allowed_json(const AllowedSets& allowed) {
  json a = json::array();
  for (const auto& s : allowed) a.push_back(s ? index_array(*s) : json(nullptr));
  return a;
}

AllowedSets allowed_from(const json& j) {
  require(j.is_array(), Err::Parse, "\"allowed\" must be an array");
  AllowedSets out;
  for (const json& e : j) {
    if (e.is_null())
      out.emplace_back();
    else
      out.emplace_back(indices_from(e, "allowed set"));
  }
  return out;
}

json chsh_json(const ChshReport& c) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back(to_string(c.table.e[i][j]));
    rows.push_back(row);
  }
  json out{{"correlators", rows}};
  out["violation"] = c.violation ? json{{"bound", c.violation->bound},
                                        {"value", to_string(c.violation->value)}}
                                 : json(nullptr);
  return out;
}

json extension_json(const ExtensionReport& e) {
  json out{{"feasible", is_feasible(e.result)}, {"k", e.k}, {"on_average", e.on_average}};
  if (const auto* f = std::get_if<Feasible>(&e.result))
    out["witness"] = rational_array(f->witness);
  else
    out["farkas"] = rational_array(std::get<Infeasible>(e.result).farkas);
  return out;
}

std::optional<Label> label_from_name(const std::string& name) {
  for (Label l : {Label::Invalid, Label::Signaling, Label::RestrictedViolation, Label::Separable,
                  Label::Entangled})
    if (name == label_name(l)) return l;
  return std::nullopt;
}

// Mirrors the facet matrices the restriction check derives from the space.
std::vector<RationalMatrix> facet_list(const ChoiceSpace& space, const AllowedSets& allowed) {
  std::vector<RationalMatrix> hs;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    RationalMatrix at = (!allowed.empty() && t < allowed.size() && allowed[t])
                            ? restrict_type_matrix(space, t, *allowed[t])
                            : build_type_matrix(space, t);
    hs.push_back(v_to_h(at));
  }
  return hs;
}

std::string vec_text(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

std::string menu_text(const ChoiceSpace& space, std::size_t t, std::size_t menu) {
  std::string s = "{";
  const auto& m = space.dms[t].menus[menu];
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += space.dms[t].alternatives[m[i]];
  }
  return s + "}";
}

std::string context_text(const ChoiceSpace& space, const MarginalityViolation& v) {
  std::string s;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    if (t == v.dm) continue;
    if (!s.empty()) s += ", ";
    s += "DM " + std::to_string(t) + " at " + menu_text(space, t, v.menus[t]) + " choosing " +
         space.label(t, v.menus[t], v.choices[t]);
  }
  return s;
}

// Sum over the swapped DM's own choices with the context held fixed.
Rational context_mass(const JointChoiceRule& rule, std::size_t dm, std::size_t dm_menu,
                      MenuPath menus, ChoicePath choices) {
  menus[dm] = dm_menu;
  Rational total = 0;
  for (std::size_t c = 0; c < rule.space.menu_size(dm, dm_menu); ++c) {
    choices[dm] = c;
    total += rule_prob(rule, menus, choices);
  }
  return total;
}

std::vector<std::size_t> split_row(const std::vector<RationalMatrix>& hs, std::size_t row) {
  std::vector<std::size_t> idx(hs.size());
  std::size_t rem = row;
  for (std::size_t t = hs.size(); t-- > 0;) {
    idx[t] = rem % hs[t].rows();
    rem /= hs[t].rows();
  }
  return idx;
}

}  // namespace

ChshReport run_chsh(const JointChoiceRule& rule) {
  return ChshReport{correlators(rule), check_chsh(rule)};
}

int exit_code_for(Label label) {
  switch (label) {
    case Label::Separable: return 0;
    case Label::Entangled: return 3;
    case Label::Signaling: return 4;
    case Label::RestrictedViolation: return 5;
    case Label::Invalid: return 2;
  }
  return 1;
}

std::string bound_inequality_text(std::size_t bound) {
  require(bound < 8, Err::BadIndex, "bound index must be below 8");
  std::size_t expr = bound / 2;
  std::string s;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      int sg = chsh_sign(expr, i, j);
      if (s.empty())
        s = sg < 0 ? "-" : "";
      else
        s += sg < 0 ? " - " : " + ";
      s += "E(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return s + (bound % 2 == 0 ? " <= 2" : " >= -2");
}

std::string report_to_json(const RunReport& report) {
  json j{{"allowed", allowed_json(report.allowed)},
         {"classification", classification_json(report.classification)},
         {"digest", report.digest}};
  if (report.chsh) j["chsh"] = chsh_json(*report.chsh);
  if (report.extension) j["extension"] = extension_json(*report.extension);
  if (report.seconds) j["seconds"] = *report.seconds;
  return j.dump(2);
}

std::string report_to_text(const RunReport& report, const JointChoiceRule& rule) {
  const Classification& c = report.classification;
  std::ostringstream os;
  os << "digest       " << report.digest << "\n";
  os << "label        " << label_name(c.label) << "\n";
  if (report.chsh) {
    os << "correlators ";
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        os << " E(" << i << "," << j << ")=" << to_string(report.chsh->table.e[i][j]);
    os << "\n";
    if (report.chsh->violation) {
      const auto& v = *report.chsh->violation;
      os << "violated     " << bound_inequality_text(v.bound) << " fails with value "
         << to_string(v.value) << "\n";
    } else {
      os << "bounds       all four expressions lie in [-2, 2]\n";
    }
  }
  switch (c.label) {
    case Label::Invalid:
      os << "error        " << c.message << "\n";
      break;
    case Label::Signaling: {
      const auto& v = *c.marginality;
      os << "violated     DM " << v.dm << " switching " << menu_text(rule.space, v.dm, v.menu_a)
         << " -> " << menu_text(rule.space, v.dm, v.menu_b) << " moves the mass on ["
         << context_text(rule.space, v) << "] from " << to_string(v.lhs) << " to "
         << to_string(v.rhs) << "\n";
      break;
    }
    case Label::RestrictedViolation: {
      const auto& v = *c.restriction;
      auto hs = facet_list(rule.space, report.allowed);
      auto idx = split_row(hs, v.row);
      os << "violated     facet row " << v.row << " = ";
      for (std::size_t t = 0; t < hs.size(); ++t)
        os << (t ? " x " : "") << vec_text(hs[t].row(idx[t]));
      os << ": value " << to_string(v.value) << " < 0\n";
      break;
    }
    case Label::Separable: {
      const auto& w = *c.mixture;
      os << "certificate  verified mixture over " << w.size() << " deterministic profiles\n";
      for (std::size_t i = 0; i < w.size(); ++i)
        if (sgn(w[i]) != 0) os << "  weight[" << i << "] = " << to_string(w[i]) << "\n";
      break;
    }
    case Label::Entangled:
      os << "certificate  verified impossibility witness with " << c.farkas->size()
         << " entries\n";
      break;
  }
  if (report.extension) {
    const auto& e = *report.extension;
    os << "extension    k=" << e.k << (e.on_average ? " on average" : " exact") << ": "
       << (is_feasible(e.result) ? "feasible, witness verified"
                                 : "infeasible, impossibility witness verified")
       << "\n";
  }
  if (report.seconds) os << "seconds      " << *report.seconds << "\n";
  return os.str();
}

std::string verify_report_json(const std::string& report_text, const std::string& rule_bytes) {
  json j = json::parse(report_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return "report is not a JSON object";
  JointChoiceRule rule = parse_rule_json(rule_bytes);

  try {
    if (!j.contains("digest") || !j["digest"].is_string()) return "report has no digest";
    if (j["digest"].get<std::string>() != input_digest(rule_bytes))
      return "digest mismatch: the rule file is not the report's input";

    AllowedSets allowed = j.contains("allowed") ? allowed_from(j["allowed"]) : AllowedSets{};
    if (!j.contains("classification") || !j["classification"].is_object())
      return "report has no classification";
    const json& jc = j["classification"];
    if (!jc.contains("label") || !jc["label"].is_string()) return "classification has no label";
    auto label = label_from_name(jc["label"].get<std::string>());
    if (!label) return "unknown label \"" + jc["label"].get<std::string>() + "\"";

    switch (*label) {
      case Label::Separable: {
        if (!jc.contains("mixture")) return "separable classification carries no mixture";
        RationalVector w = rationals_from(jc["mixture"], "mixture");
        if (!check_witness(joint_type_matrix(rule.space, allowed), stacked(rule), w))
          return "mixture does not reproduce the rule";
        break;
      }
      case Label::Entangled: {
        if (!jc.contains("farkas")) return "entangled classification carries no farkas vector";
        RationalVector y = rationals_from(jc["farkas"], "farkas");
        if (!check_farkas(joint_type_matrix(rule.space, allowed), stacked(rule), y))
          return "impossibility witness does not verify";
        break;
      }
      case Label::Signaling: {
        if (!jc.contains("marginality") || !jc["marginality"].is_object())
          return "signaling classification carries no marginality violation";
        const json& jm = jc["marginality"];
        for (const char* key : {"dm", "menu_a", "menu_b", "menus", "choices", "lhs", "rhs"})
          if (!jm.contains(key)) return std::string("marginality violation lacks \"") + key + "\"";
        std::size_t dm = size_from(jm["dm"], "dm");
        MenuPath menus = indices_from(jm["menus"], "menus");
        ChoicePath choices = indices_from(jm["choices"], "choices");
        if (dm >= rule.space.n_dms() || menus.size() != rule.space.n_dms() ||
            choices.size() != rule.space.n_dms())
          return "marginality violation does not fit the space";
        choices[dm] = 0;
        Rational lhs = context_mass(rule, dm, size_from(jm["menu_a"], "menu_a"), menus, choices);
        Rational rhs = context_mass(rule, dm, size_from(jm["menu_b"], "menu_b"), menus, choices);
        if (lhs != rational_from(jm["lhs"], "lhs")) return "recorded lhs mass is wrong";
        if (rhs != rational_from(jm["rhs"], "rhs")) return "recorded rhs mass is wrong";
        if (lhs == rhs) return "recorded masses agree, so nothing is violated";
        break;
      }
      case Label::RestrictedViolation: {
        if (!jc.contains("restriction") || !jc["restriction"].is_object())
          return "restricted classification carries no facet violation";
        std::size_t row = size_from(jc["restriction"]["row"], "row");
        Rational value = rational_from(jc["restriction"]["value"], "value");
        auto hs = facet_list(rule.space, allowed);
        std::size_t total = 1;
        for (const auto& h : hs) total *= h.rows();
        if (row >= total) return "facet row index out of range";
        auto idx = split_row(hs, row);
        std::vector<RationalMatrix> rows;
        for (std::size_t t = 0; t < hs.size(); ++t)
          rows.push_back(RationalMatrix::from_rows({hs[t].row(idx[t])}));
        Rational got = tensor_apply(rows, stacked(rule))[0];
        if (got != value) return "recorded facet value is wrong";
        if (sgn(got) >= 0) return "recorded facet row is not violated";
        break;
      }
      case Label::Invalid: {
        if (classify(rule, allowed).label != Label::Invalid)
          return "report says Invalid but the rule classifies cleanly";
        break;
      }
    }

    if (j.contains("chsh")) {
      const json& jch = j["chsh"];
      ChshReport got = run_chsh(rule);
      if (!jch.contains("correlators")) return "chsh section has no correlators";
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          if (rational_from(jch["correlators"].at(i).at(jj), "correlator") != got.table.e[i][jj])
            return "recorded correlators are wrong";
      if (!jch.contains("violation")) return "chsh section has no violation field";
      if (jch["violation"].is_null() != !got.violation.has_value())
        return "recorded bound verdict is wrong";
      if (got.violation) {
        if (size_from(jch["violation"]["bound"], "bound") != got.violation->bound)
          return "recorded bound index is wrong";
        if (rational_from(jch["violation"]["value"], "value") != got.violation->value)
          return "recorded bound value is wrong";
      }
    }

    if (j.contains("extension")) {
      const json& je = j["extension"];
      std::size_t k = size_from(je.at("k"), "k");
      require(je.contains("on_average") && je["on_average"].is_boolean(), Err::Parse,
              "extension section needs \"on_average\"");
      KMarginalizableTest test(rule.space, k, je["on_average"].get<bool>());
      require(je.contains("feasible") && je["feasible"].is_boolean(), Err::Parse,
              "extension section needs \"feasible\"");
      if (je["feasible"].get<bool>()) {
        if (!je.contains("witness")) return "feasible extension carries no witness";
        if (!test.verify_witness(rule, rationals_from(je["witness"], "witness")))
          return "extension witness does not verify";
      } else {
        if (!je.contains("farkas")) return "infeasible extension carries no farkas vector";
        if (!test.verify_farkas(rule, rationals_from(je["farkas"], "farkas")))
          return "extension impossibility witness does not verify";
      }
    }
  } catch (const Error& e) {
    return std::string("verification error: ") + e.what();
  } catch (const json::exception& e) {
    return std::string("malformed report: ") + e.what();
  }
  return "";
}

}  // namespace sepchoice
