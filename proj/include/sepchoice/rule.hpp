#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepchoice/choice_space.hpp"
#include "sepchoice/matrix.hpp"

namespace sepchoice {

// Observed joint rule: one probability vector per menu path, entries in
// choice-path order (last DM fastest).
struct JointChoiceRule {
  ChoiceSpace space;
  std::vector<RationalVector> probs;  // index: menu_path_index
};

// Rule with every probability vector present, zero filled.
JointChoiceRule zero_rule(const ChoiceSpace& space);

// nullopt when well formed; otherwise a description of the first defect:
// missing or misshaped menu path coverage, a negative entry, or a menu path
// whose probabilities do not total one.
std::optional<std::string> rule_invariant_violation(const JointChoiceRule& rule);

Rational& rule_prob(JointChoiceRule& rule, const MenuPath& mp, const ChoicePath& cp);
const Rational& rule_prob(const JointChoiceRule& rule, const MenuPath& mp, const ChoicePath& cp);

// All entries rearranged into a single vector over joint (menu, position)
// pair profiles, in joint_pair_index order.
RationalVector stacked(const JointChoiceRule& rule);

}  // namespace sepchoice
