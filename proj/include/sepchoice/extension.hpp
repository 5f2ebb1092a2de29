#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sepchoice/rule.hpp"
#include "sepchoice/simplex.hpp"

namespace sepchoice {

// Feasibility test: does a two-DM rule extend to one copy of the first DM plus
// k interchangeable copies of the second, such that the extension satisfies
// marginality and reproduces the rule through each copy (exact mode) or
// through the uniform average over copies?
//
// Reproduction reads a copy's two-DM rule by summing out every other copy at
// its first menu; under the marginality constraints the menu held fixed does
// not matter.
//
// The LP is solved on a quotient that identifies variables and rows related
// by permuting the copies. Feasibility is unchanged: the constraint set is
// permutation invariant, so solutions may be averaged over the permutation
// group. Certificates are expanded back to the full system and verified
// against it before being returned; the witness is the full extension vector
// (one entry per extended menu path and choice path, menu paths ordered with
// the last copy fastest).
class KMarginalizableTest {
 public:
  // space must have exactly two DMs (Err::NotTwoDms); k >= 1 (Err::BadIndex).
  KMarginalizableTest(const ChoiceSpace& space, std::size_t k, bool on_average);

  // rule must live on the construction space (Err::DimensionMismatch).
  FeasibilityResult solve(const JointChoiceRule& rule) const;

  std::size_t variable_count() const { return nvars_; }
  std::size_t quotient_variable_count() const;

  // Check a stored certificate against the full system for this rule.
  bool verify_witness(const JointChoiceRule& rule, const RationalVector& w) const;
  bool verify_farkas(const JointChoiceRule& rule, const RationalVector& y) const;

 private:
  struct Tag {  // symbolic right-hand side, resolved per rule in solve()
    int kind;   // 0: one, 1: zero, 2: scaled rule entry
    std::size_t mp = 0, cp = 0;
    auto operator<=>(const Tag&) const = default;
  };

  RationalVector full_rhs(const JointChoiceRule& rule) const;
  RationalVector quotient_rhs(const JointChoiceRule& rule) const;

  ChoiceSpace base_;
  ChoiceSpace ext_;
  std::size_t k_;
  bool on_average_;
  Rational rhs_scale_;  // multiplier on rule entries in reproduction rows

  std::vector<std::size_t> var_offset_;  // per extended menu path
  std::size_t nvars_ = 0;

  RationalMatrix full_;               // full constraint rows
  std::vector<Tag> full_tags_;        // rhs symbol per full row
  std::vector<std::size_t> col_orbit_;  // variable -> quotient column
  RationalMatrix quotient_;
  std::vector<Tag> quotient_tags_;      // rhs symbol per quotient row
  std::vector<std::size_t> row_group_;  // full row -> quotient row
  std::vector<std::size_t> group_size_;
  std::optional<PreparedFeasibility> prepared_;
};

FeasibilityResult check_k_marginalizable(const JointChoiceRule& rule, std::size_t k,
                                         bool on_average);

}  // namespace sepchoice
