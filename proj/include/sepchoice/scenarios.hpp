#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sepchoice/rule.hpp"
#include "sepchoice/separability.hpp"

namespace sepchoice {

// Two DMs, both choosing from {x,w} in menu 0 and {y,z} in menu 1.
ChoiceSpace two_dm_binary_space();

// One-parameter family on that space. In every menu-path block, matching
// in-menu positions share mass alpha and mismatches share 1/2 - alpha, except
// when both DMs face menu 1, where the roles swap. Requires alpha in
// [0, 1/2] (Err::BadAlpha).
JointChoiceRule gen_table1(const Rational& alpha);

// Independent DMs: the joint probability is the product of per-DM vectors,
// each indexed over that DM's (menu, position) pairs with unit block sums
// (Err::BadWeights otherwise).
JointChoiceRule gen_product(const ChoiceSpace& space, const std::vector<RationalVector>& pcrs);

// Mixture of deterministic rule profiles; a profile names one rule index per
// DM. Weights must be nonnegative, total one, and reference valid rules
// (Err::BadWeights).
using RuleProfile = std::vector<std::size_t>;
JointChoiceRule gen_mixture(const ChoiceSpace& space,
                            const std::map<RuleProfile, Rational>& weights);

// two_dm_binary_space with the first DM limited to the three rules that never
// pair the second position of menu 0 with the first position of menu 1.
std::pair<ChoiceSpace, AllowedSets> gen_dominance_space();

}  // namespace sepchoice
