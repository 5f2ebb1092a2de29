#include "sepchoice/separability.hpp"

#include <utility>

#include "sepchoice/cone.hpp"
#include "sepchoice/error.hpp"
#include "sepchoice/linsolve.hpp"

namespace sepchoice {

namespace {

// Mass the other DMs' fixed choices receive when DM `dm` faces `menu`,
// summing over that DM's own choices.
Rational marginal_mass(const JointChoiceRule& rule, std::size_t dm, std::size_t menu,
                       const MenuPath& context_menus, const ChoicePath& context_choices) {
  MenuPath mp = context_menus;
  mp[dm] = menu;
  ChoicePath cp = context_choices;
  Rational total = 0;
  for (std::size_t a = 0; a < rule.space.menu_size(dm, menu); ++a) {
    cp[dm] = a;
    total += rule_prob(rule, mp, cp);
  }
  return total;
}

}  // namespace

std::optional<MarginalityViolation> check_marginality(const JointChoiceRule& rule) {
  const auto& sp = rule.space;
  const std::size_t T = sp.n_dms();
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<std::size_t> menu_radix(T);
    for (std::size_t s = 0; s < T; ++s) menu_radix[s] = sp.n_menus(s);
    for (std::size_t u = 0; u < sp.n_menus(t); ++u)
      for (std::size_t v = u + 1; v < sp.n_menus(t); ++v) {
        MenuPath menus(T, 0);
        do {
          std::vector<std::size_t> choice_radix(T, 1);
          for (std::size_t s = 0; s < T; ++s)
            if (s != t) choice_radix[s] = sp.menu_size(s, menus[s]);
          ChoicePath choices(T, 0);
          do {
            Rational lhs = marginal_mass(rule, t, u, menus, choices);
            Rational rhs = marginal_mass(rule, t, v, menus, choices);
            if (lhs != rhs) {
              MenuPath witness_menus = menus;
              witness_menus[t] = u;
              return MarginalityViolation{t,   u,   v, std::move(witness_menus), choices,
                                          lhs, rhs};
            }
          } while (advance_profile(choices, choice_radix, t));
        } while (advance_profile(menus, menu_radix, t));
      }
  }
  return std::nullopt;
}

CorrelatorTable correlators(const JointChoiceRule& rule) {
  const auto& sp = rule.space;
  bool shape = sp.n_dms() == 2;
  for (std::size_t t = 0; shape && t < 2; ++t) {
    shape = sp.n_menus(t) == 2;
    for (std::size_t m = 0; shape && m < 2; ++m) shape = sp.menu_size(t, m) == 2;
  }
  require(shape, Err::NotChshScenario, "needs two DMs with two binary menus each");

  CorrelatorTable tab;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& v = rule.probs[menu_path_index(sp, {i, j})];
      Rational matched = v[0] + v[3];
      Rational mismatched = v[1] + v[2];
      require(matched + mismatched == 1, Err::Internal, "menu path mass must be one");
      tab.e[i][j] = matched - mismatched;
    }
  return tab;
}

int chsh_sign(std::size_t expr, std::size_t i, std::size_t j) {
  static constexpr std::size_t neg[4][2] = {{1, 1}, {0, 1}, {1, 0}, {0, 0}};
  require(expr < 4 && i < 2 && j < 2, Err::BadIndex, "chsh index out of range");
  return (i == neg[expr][0] && j == neg[expr][1]) ? -1 : 1;
}

std::optional<ChshViolation> check_chsh(const JointChoiceRule& rule) {
  CorrelatorTable tab = correlators(rule);
  for (std::size_t expr = 0; expr < 4; ++expr) {
    Rational value = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) value += chsh_sign(expr, i, j) * tab.e[i][j];
    if (value > 2) return ChshViolation{2 * expr, value};
    if (value < -2) return ChshViolation{2 * expr + 1, value};
  }
  return std::nullopt;
}

RationalMatrix joint_type_matrix(const ChoiceSpace& space, const AllowedSets& allowed) {
  if (!allowed.empty())
    require(allowed.size() == space.n_dms(), Err::DimensionMismatch, "one allowed set per DM");
  RationalMatrix a;
  for (std::size_t t = 0; t < space.n_dms(); ++t) {
    RationalMatrix at = (!allowed.empty() && allowed[t])
                            ? restrict_type_matrix(space, t, *allowed[t])
                            : build_type_matrix(space, t);
    a = (t == 0) ? std::move(at) : kronecker(a, at);
  }
  return a;
}

FeasibilityResult check_separable(const JointChoiceRule& rule, const AllowedSets& allowed) {
  auto res = lp_feasible(joint_type_matrix(rule.space, allowed), stacked(rule));
  if (const auto* f = std::get_if<Feasible>(&res)) {
    Rational total = 0;
    for (const auto& x : f->witness) total += x;
    require(total == 1, Err::Internal, "mixture weights must total one");
  }
  return res;
}

std::optional<RationalVector> solve_signed_measure(const JointChoiceRule& rule) {
  return solve_particular(joint_type_matrix(rule.space), stacked(rule));
}

bool is_generating(const RationalMatrix& a_restricted, const ChoiceSpace& space, std::size_t dm) {
  require(dm < space.n_dms(), Err::BadIndex, "dm out of range");
  require(a_restricted.rows() == space.pair_count(dm), Err::DimensionMismatch,
          "row count must match the DM's pair count");
  const std::size_t nm = space.n_menus(dm);
  // rules span exactly the vectors whose per-menu block sums agree
  RationalMatrix constraints(nm > 0 ? nm - 1 : 0, space.pair_count(dm));
  for (std::size_t m = 1; m < nm; ++m) {
    for (std::size_t p = 0; p < space.menu_size(dm, m); ++p)
      constraints.at(m - 1, space.menu_offset(dm, m) + p) = 1;
    for (std::size_t p = 0; p < space.menu_size(dm, 0); ++p)
      constraints.at(m - 1, space.menu_offset(dm, 0) + p) = -1;
  }
  RationalMatrix span = nullspace(constraints);
  for (std::size_t j = 0; j < span.cols(); ++j)
    if (!in_span(a_restricted, span.col(j))) return false;
  return true;
}

bool has_unique_representation(const RationalMatrix& a_restricted, const ChoiceSpace& space,
                               std::size_t dm) {
  require(is_generating(a_restricted, space, dm), Err::NotGenerating,
          "column set does not span the rule space");
  return rank(a_restricted) == a_restricted.cols();
}

bool restrictions_ok(const SeparableRestrictionsResult& r) {
  return std::holds_alternative<RestrictionsOk>(r);
}

SeparableRestrictionsResult check_separable_restrictions(
    const JointChoiceRule& rule, const std::vector<RationalMatrix>& h_list) {
  const auto& sp = rule.space;
  require(h_list.size() == sp.n_dms(), Err::DimensionMismatch, "one facet matrix per DM");
  for (std::size_t t = 0; t < h_list.size(); ++t)
    require(h_list[t].cols() == sp.pair_count(t), Err::DimensionMismatch,
            "facet matrix width must match the DM's pair count");
  RationalVector vals = tensor_apply(h_list, stacked(rule));
  for (std::size_t r = 0; r < vals.size(); ++r)
    if (sgn(vals[r]) < 0) return TensorRowViolation{r, vals[r]};
  if (auto mv = check_marginality(rule)) return *mv;
  return RestrictionsOk{};
}

SeparableRestrictionsResult check_separable_restrictions(const JointChoiceRule& rule,
                                                         const AllowedSets& allowed) {
  const auto& sp = rule.space;
  if (!allowed.empty())
    require(allowed.size() == sp.n_dms(), Err::DimensionMismatch, "one allowed set per DM");
  std::vector<RationalMatrix> hs;
  for (std::size_t t = 0; t < sp.n_dms(); ++t) {
    RationalMatrix at = (!allowed.empty() && allowed[t])
                            ? restrict_type_matrix(sp, t, *allowed[t])
                            : build_type_matrix(sp, t);
    hs.push_back(v_to_h(at));
  }
  return check_separable_restrictions(rule, hs);
}

const char* label_name(Label l) {
  switch (l) {
    case Label::Invalid: return "Invalid";
    case Label::Signaling: return "Signaling";
    case Label::RestrictedViolation: return "RestrictedViolation";
    case Label::Separable: return "Separable";
    case Label::Entangled: return "Entangled";
  }
  return "Invalid";
}

Classification classify(const JointChoiceRule& rule, const AllowedSets& allowed) {
  Classification out;
  try {
    if (auto defect = rule_invariant_violation(rule)) {
      out.label = Label::Invalid;
      out.message = std::move(*defect);
      return out;
    }
    if (auto mv = check_marginality(rule)) {
      out.label = Label::Signaling;
      out.marginality = std::move(mv);
      return out;
    }
    auto restr = check_separable_restrictions(rule, allowed);
    if (const auto* rv = std::get_if<TensorRowViolation>(&restr)) {
      // the marginality alternative cannot fire here, it was checked above
      out.label = Label::RestrictedViolation;
      out.restriction = *rv;
      return out;
    }
    auto feas = check_separable(rule, allowed);
    if (auto* f = std::get_if<Feasible>(&feas)) {
      out.label = Label::Separable;
      out.mixture = std::move(f->witness);
    } else {
      out.label = Label::Entangled;
      out.farkas = std::move(std::get<Infeasible>(feas).farkas);
    }
  } catch (const Error& e) {
    out = Classification{};
    out.label = Label::Invalid;
    out.message = e.what();
  }
  return out;
}

}  // namespace sepchoice
