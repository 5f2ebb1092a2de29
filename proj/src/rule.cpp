#include "sepchoice/rule.hpp"

#include <sstream>

#include "sepchoice/error.hpp"
#include "sepchoice/rational.hpp"

namespace sepchoice {

JointChoiceRule zero_rule(const ChoiceSpace& space) {
  JointChoiceRule rule{space, {}};
  for (const auto& mp : all_menu_paths(space))
    rule.probs.emplace_back(choice_path_count(space, mp));
  return rule;
}

std::optional<std::string> rule_invariant_violation(const JointChoiceRule& rule) {
  auto paths = all_menu_paths(rule.space);
  if (rule.probs.size() != paths.size()) {
    std::ostringstream os;
    os << "rule covers " << rule.probs.size() << " menu paths, space has " << paths.size();
    return os.str();
  }
  for (std::size_t p = 0; p < paths.size(); ++p) {
    std::size_t want = choice_path_count(rule.space, paths[p]);
    const auto& v = rule.probs[p];
    if (v.size() != want) {
      std::ostringstream os;
      os << "menu path " << p << " has " << v.size() << " entries, expected " << want;
      return os.str();
    }
    Rational total = 0;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (sgn(v[c]) < 0) {
        std::ostringstream os;
        os << "negative probability " << to_string(v[c]) << " at menu path " << p
           << ", choice path " << c;
        return os.str();
      }
      total += v[c];
    }
    if (total != 1) {
      std::ostringstream os;
      os << "menu path " << p << " probabilities total " << to_string(total);
      return os.str();
    }
  }
  return std::nullopt;
}

Rational& rule_prob(JointChoiceRule& rule, const MenuPath& mp, const ChoicePath& cp) {
  std::size_t p = menu_path_index(rule.space, mp);
  require(p < rule.probs.size(), Err::BadIndex, "menu path not covered");
  return rule.probs[p][choice_path_index(rule.space, mp, cp)];
}

const Rational& rule_prob(const JointChoiceRule& rule, const MenuPath& mp, const ChoicePath& cp) {
  return rule_prob(const_cast<JointChoiceRule&>(rule), mp, cp);
}

RationalVector stacked(const JointChoiceRule& rule) {
  RationalVector out(rule.space.joint_pair_count());
  auto paths = all_menu_paths(rule.space);
  require(rule.probs.size() == paths.size(), Err::DimensionMismatch, "rule does not cover space");
  for (std::size_t p = 0; p < paths.size(); ++p) {
    auto cps = all_choice_paths(rule.space, paths[p]);
    require(rule.probs[p].size() == cps.size(), Err::DimensionMismatch, "menu path size mismatch");
    for (std::size_t c = 0; c < cps.size(); ++c)
      out[joint_pair_index(rule.space, paths[p], cps[c])] = rule.probs[p][c];
  }
  return out;
}

}  // namespace sepchoice
