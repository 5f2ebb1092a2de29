#include "sepchoice/scenarios.hpp"

#include "sepchoice/error.hpp"
#include "sepchoice/rational.hpp"

namespace sepchoice {

ChoiceSpace two_dm_binary_space() {
  RawDm dm;
  dm.alternatives = {"x", "w", "y", "z"};
  dm.menus = {{"x", "w"}, {"y", "z"}};
  RawSpace raw;
  raw.dms = {dm, dm};
  return validate_space(raw);
}

JointChoiceRule gen_table1(const Rational& alpha) {
  require(alpha >= 0 && alpha <= rat(1, 2), Err::BadAlpha, "alpha must lie in [0, 1/2]");
  ChoiceSpace space = two_dm_binary_space();
  JointChoiceRule rule = zero_rule(space);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Rational match = (i == 1 && j == 1) ? rat(1, 2) - alpha : alpha;
      Rational cross = rat(1, 2) - match;
      rule.probs[menu_path_index(space, {i, j})] = {match, cross, cross, match};
    }
  return rule;
}

JointChoiceRule gen_product(const ChoiceSpace& space, const std::vector<RationalVector>& pcrs) {
  require(pcrs.size() == space.n_dms(), Err::DimensionMismatch, "one choice vector per DM");
  for (std::size_t t = 0; t < pcrs.size(); ++t) {
    require(pcrs[t].size() == space.pair_count(t), Err::DimensionMismatch,
            "choice vector length must match the DM's pair count");
    for (const auto& p : pcrs[t])
      require(sgn(p) >= 0, Err::BadWeights, "negative choice probability");
    for (std::size_t m = 0; m < space.n_menus(t); ++m) {
      Rational total = 0;
      for (std::size_t p = 0; p < space.menu_size(t, m); ++p)
        total += pcrs[t][space.menu_offset(t, m) + p];
      require(total == 1, Err::BadWeights, "each menu block must total one");
    }
  }
  JointChoiceRule rule = zero_rule(space);
  auto paths = all_menu_paths(space);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    auto cps = all_choice_paths(space, paths[p]);
    for (std::size_t c = 0; c < cps.size(); ++c) {
      Rational prob = 1;
      for (std::size_t t = 0; t < space.n_dms(); ++t)
        prob *= pcrs[t][space.menu_offset(t, paths[p][t]) + cps[c][t]];
      rule.probs[p][c] = prob;
    }
  }
  return rule;
}

JointChoiceRule gen_mixture(const ChoiceSpace& space,
                            const std::map<RuleProfile, Rational>& weights) {
  Rational total = 0;
  for (const auto& [profile, w] : weights) {
    require(sgn(w) >= 0, Err::BadWeights, "negative mixture weight");
    require(profile.size() == space.n_dms(), Err::BadWeights,
            "profile must name one rule per DM");
    for (std::size_t t = 0; t < profile.size(); ++t)
      require(profile[t] < space.rule_count(t), Err::BadWeights, "rule index out of range");
    total += w;
  }
  require(total == 1, Err::BadWeights, "mixture weights must total one");

  std::vector<std::vector<DeterministicRule>> rules;
  for (std::size_t t = 0; t < space.n_dms(); ++t) rules.push_back(enumerate_rules(space, t));

  JointChoiceRule rule = zero_rule(space);
  auto paths = all_menu_paths(space);
  for (const auto& [profile, w] : weights) {
    if (sgn(w) == 0) continue;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      ChoicePath cp(space.n_dms());
      for (std::size_t t = 0; t < space.n_dms(); ++t)
        cp[t] = rules[t][profile[t]].picks[paths[p][t]];
      rule.probs[p][choice_path_index(space, paths[p], cp)] += w;
    }
  }
  return rule;
}

std::pair<ChoiceSpace, AllowedSets> gen_dominance_space() {
  AllowedSets allowed(2);
  allowed[0] = std::vector<std::size_t>{0, 2, 3};
  return {two_dm_binary_space(), allowed};
}

}  // namespace sepchoice
