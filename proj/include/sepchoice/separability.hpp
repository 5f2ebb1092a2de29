#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sepchoice/matrix.hpp"
#include "sepchoice/rule.hpp"
#include "sepchoice/simplex.hpp"

namespace sepchoice {

// A menu swap for one DM that shifts the other DMs' joint marginal: with the
// context fixed, the mass on `choices` differs between menu_a and menu_b.
struct MarginalityViolation {
  std::size_t dm = 0;
  std::size_t menu_a = 0, menu_b = 0;
  MenuPath menus;      // context menus; the entry at `dm` equals menu_a
  ChoicePath choices;  // context in-menu choices; the entry at `dm` is unused
  Rational lhs, rhs;   // marginal mass under menu_a and under menu_b
};

// Scans DMs, then menu pairs, then contexts, and reports the first mismatch.
std::optional<MarginalityViolation> check_marginality(const JointChoiceRule& rule);

// e[i][j]: coordination between menu i of the first DM and menu j of the
// second, as matched minus mismatched in-menu positions. Only defined for two
// DMs with two binary menus each (Err::NotChshScenario otherwise).
struct CorrelatorTable {
  Rational e[2][2];
};
CorrelatorTable correlators(const JointChoiceRule& rule);

// Coefficient of e[i][j] in expression `expr`: each of the four expressions
// sums the correlators with a single minus sign, placed at (1,1), (0,1),
// (1,0), (0,0) for expressions 0 to 3.
int chsh_sign(std::size_t expr, std::size_t i, std::size_t j);

// Bound 2e is "expression e <= 2"; bound 2e+1 is "expression e >= -2".
struct ChshViolation {
  std::size_t bound = 0;
  Rational value;
};
std::optional<ChshViolation> check_chsh(const JointChoiceRule& rule);

// Per-DM optional column restrictions for the type matrices; empty means no
// DM is restricted.
using AllowedSets = std::vector<std::optional<std::vector<std::size_t>>>;

// Kronecker product over DMs of the (possibly restricted) type matrices.
RationalMatrix joint_type_matrix(const ChoiceSpace& space, const AllowedSets& allowed = {});

// Decides whether some nonnegative mixture of joint deterministic rules
// reproduces the observed rule exactly. Certificates come from lp_feasible;
// a feasible witness always totals one.
FeasibilityResult check_separable(const JointChoiceRule& rule, const AllowedSets& allowed = {});

// A mixture that reproduces the rule when signs are unrestricted, or nullopt
// when none exists. Existence is equivalent to marginality.
std::optional<RationalVector> solve_signed_measure(const JointChoiceRule& rule);

// Whether the columns span every individual rule for this DM, i.e. the whole
// subspace of vectors whose per-menu block sums agree.
bool is_generating(const RationalMatrix& a_restricted, const ChoiceSpace& space, std::size_t dm);

// Given a generating column set (Err::NotGenerating otherwise): whether each
// individual rule has exactly one representation, i.e. the columns are
// linearly independent.
bool has_unique_representation(const RationalMatrix& a_restricted, const ChoiceSpace& space,
                               std::size_t dm);

struct RestrictionsOk {};
struct TensorRowViolation {
  std::size_t row = 0;  // row index into the Kronecker product of the factors
  Rational value;
};
using SeparableRestrictionsResult =
    std::variant<RestrictionsOk, TensorRowViolation, MarginalityViolation>;
bool restrictions_ok(const SeparableRestrictionsResult& r);

// Necessary conditions for separability: every tensor-product facet row is
// nonnegative on the stacked rule and the rule satisfies marginality. The
// first failing row is reported before marginality is consulted.
SeparableRestrictionsResult check_separable_restrictions(const JointChoiceRule& rule,
                                                         const std::vector<RationalMatrix>& h_list);
// Same, with facet matrices derived from the (possibly restricted) type
// matrices.
SeparableRestrictionsResult check_separable_restrictions(const JointChoiceRule& rule,
                                                         const AllowedSets& allowed = {});

enum class Label { Invalid, Signaling, RestrictedViolation, Separable, Entangled };
const char* label_name(Label l);

// Exactly one evidence field is populated, matching the label.
struct Classification {
  Label label = Label::Invalid;
  std::string message;  // Invalid only
  std::optional<MarginalityViolation> marginality;
  std::optional<TensorRowViolation> restriction;
  std::optional<RationalVector> mixture;  // verified, reproduces the rule
  std::optional<RationalVector> farkas;   // verified impossibility witness
};

// Fixed pipeline: invariants, marginality, restriction rows, then the exact
// mixture feasibility test. Thrown errors become Invalid.
Classification classify(const JointChoiceRule& rule, const AllowedSets& allowed = {});

}  // namespace sepchoice
