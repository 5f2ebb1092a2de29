#include "sepchoice/json_io.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sepchoice/error.hpp"

namespace sepchoice {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), Err::Parse, "input is not valid JSON");
  return j;
}

std::string label_from(const json& j, const char* where) {
  require(j.is_string(), Err::Parse, std::string(where) + " entries must be strings");
  std::string label = j.get<std::string>();
  require(!label.empty(), Err::Parse, std::string(where) + " labels may not be empty");
  require(label.find('|') == std::string::npos, Err::Parse,
          std::string(where) + " labels may not contain '|'");
  return label;
}

ChoiceSpace space_from(const json& j) {
  require(j.is_object() && j.contains("dms") && j["dms"].is_array(), Err::Parse,
          "space must be an object with a \"dms\" array");
  RawSpace raw;
  for (const json& jdm : j["dms"]) {
    require(jdm.is_object() && jdm.contains("alternatives") && jdm["alternatives"].is_array() &&
                jdm.contains("menus") && jdm["menus"].is_array(),
            Err::Parse, "each DM needs \"alternatives\" and \"menus\" arrays");
    RawDm dm;
    for (const json& ja : jdm["alternatives"]) dm.alternatives.push_back(label_from(ja, "alternative"));
    for (const json& jm : jdm["menus"]) {
      require(jm.is_array(), Err::Parse, "each menu must be an array of labels");
      std::vector<std::string> menu;
      for (const json& ja : jm) menu.push_back(label_from(ja, "menu"));
      dm.menus.push_back(std::move(menu));
    }
    raw.dms.push_back(std::move(dm));
  }
  return validate_space(raw);
}

std::size_t index_from(const json& j, std::size_t limit, const char* what) {
  require(j.is_number_integer() && !j.is_number_float(), Err::Parse,
          std::string(what) + " must be an integer");
  auto v = j.get<long long>();
  require(v >= 0 && static_cast<std::size_t>(v) < limit, Err::Parse,
          std::string(what) + " out of range");
  return static_cast<std::size_t>(v);
}

json space_json(const ChoiceSpace& space) {
  json dms = json::array();
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    const DmSpec& dm = space.dms[t];
    json menus = json::array();
    for (const auto& menu : dm.menus) {
      json labels = json::array();
      for (std::size_t a : menu) labels.push_back(dm.alternatives[a]);
      menus.push_back(labels);
    }
    dms.push_back(json{{"alternatives", dm.alternatives}, {"menus", menus}});
  }
  return json{{"dms", dms}};
}

}  // namespace

ChoiceSpace parse_space_json(const std::string& text) { return space_from(parse_text(text)); }

JointChoiceRule parse_rule_json(const std::string& text) {
  json j = parse_text(text);
  require(j.is_object() && j.contains("space"), Err::Parse, "rule file needs a \"space\" object");
  require(j.contains("rule") && j["rule"].is_array(), Err::Parse,
          "rule file needs a \"rule\" array");
  ChoiceSpace space = space_from(j["space"]);
  JointChoiceRule rule = zero_rule(space);

  std::set<std::size_t> seen;
  for (const json& entry : j["rule"]) {
    require(entry.is_object() && entry.contains("menus") && entry["menus"].is_array() &&
                entry.contains("probs") && entry["probs"].is_object(),
            Err::Parse, "each rule entry needs \"menus\" and \"probs\"");
    require(entry["menus"].size() == space.n_dms(), Err::Parse,
            "\"menus\" must name one menu per DM");
    MenuPath mp;
    for (std::size_t t = 0; t < space.n_dms(); ++t)
      mp.push_back(index_from(entry["menus"][t], space.n_menus(t), "menu index"));
    std::size_t p = menu_path_index(space, mp);
    require(seen.insert(p).second, Err::Parse, "menu path " + std::to_string(p) + " listed twice");

    auto cps = all_choice_paths(space, mp);
    require(entry["probs"].size() == cps.size(), Err::Parse,
            "menu path " + std::to_string(p) + " needs exactly " + std::to_string(cps.size()) +
                " probabilities");
    for (const ChoicePath& cp : cps) {
      std::string key = choice_key(space, mp, cp);
      require(entry["probs"].contains(key), Err::Parse,
              "menu path " + std::to_string(p) + " is missing \"" + key + "\"");
      const json& val = entry["probs"][key];
      require(val.is_string(), Err::Parse, "probability for \"" + key + "\" must be a string");
      rule_prob(rule, mp, cp) = parse_rational(val.get<std::string>());
    }
  }
  require(seen.size() == space.menu_path_count(), Err::Parse,
          "rule lists " + std::to_string(seen.size()) + " of " +
              std::to_string(space.menu_path_count()) + " menu paths");
  return rule;
}

std::string space_to_json(const ChoiceSpace& space) { return space_json(space).dump(2); }

std::string rule_to_json(const JointChoiceRule& rule) {
  json entries = json::array();
  auto paths = all_menu_paths(rule.space);
  require(rule.probs.size() == paths.size(), Err::DimensionMismatch,
          "rule does not cover its space");
  for (std::size_t p = 0; p < paths.size(); ++p) {
    require(rule.probs[p].size() == choice_path_count(rule.space, paths[p]),
            Err::DimensionMismatch, "menu path block has the wrong width");
    json probs = json::object();
    for (const ChoicePath& cp : all_choice_paths(rule.space, paths[p]))
      probs[choice_key(rule.space, paths[p], cp)] =
          to_string(rule_prob(rule, paths[p], cp));
    entries.push_back(json{{"menus", paths[p]}, {"probs", probs}});
  }
  return json{{"rule", entries}, {"space", space_json(rule.space)}}.dump(2);
}

std::string choice_key(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp) {
  require(mp.size() == space.n_dms() && cp.size() == space.n_dms(), Err::DimensionMismatch,
          "paths must name every DM");
  std::string key;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    if (t) key += '|';
    key += space.label(t, mp[t], cp[t]);
  }
  return key;
}

std::string input_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace sepchoice
