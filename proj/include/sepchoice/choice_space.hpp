#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sepchoice/matrix.hpp"

namespace sepchoice {

// One decision maker: a label set plus an ordered list of menus. Menus store
// indices into `alternatives` and keep their declared order.
struct DmSpec {
  std::vector<std::string> alternatives;
  std::vector<std::vector<std::size_t>> menus;

  bool operator==(const DmSpec&) const = default;
};

struct ChoiceSpace {
  std::vector<DmSpec> dms;

  std::size_t n_dms() const { return dms.size(); }
  std::size_t n_menus(std::size_t dm) const;
  std::size_t menu_size(std::size_t dm, std::size_t menu) const;
  // Rows of the type matrix are (menu, in-menu position) pairs; menu blocks are
  // laid out in menu order, so a pair flattens to menu_offset + position.
  std::size_t pair_count(std::size_t dm) const;
  std::size_t rule_count(std::size_t dm) const;
  std::size_t menu_offset(std::size_t dm, std::size_t menu) const;
  std::size_t joint_pair_count() const;
  std::size_t menu_path_count() const;
  const std::string& label(std::size_t dm, std::size_t menu, std::size_t pos) const;
};

// Raw parsed form of the external space schema; menus refer to labels.
struct RawDm {
  std::vector<std::string> alternatives;
  std::vector<std::vector<std::string>> menus;
};
struct RawSpace {
  std::vector<RawDm> dms;
};

// Checks all structural invariants and resolves labels to indices.
// Errors: NoDms, EmptyMenu, DuplicateAlternative, UnknownAlternative,
// DuplicateMenu; messages name the offending DM and menu. Two menus equal as
// sets count as duplicates regardless of declared order.
ChoiceSpace validate_space(const RawSpace& raw);

// A single-valued deterministic rule: one in-menu pick per menu of one DM.
struct DeterministicRule {
  std::size_t dm = 0;
  std::vector<std::size_t> picks;

  bool operator==(const DeterministicRule&) const = default;
};

// All rules for a DM. Ordering: the pick for menu 0 varies fastest, then menu 1,
// and so on (mixed radix with the first menu least significant). Column c of the
// type matrix is rules[c].
std::vector<DeterministicRule> enumerate_rules(const ChoiceSpace& space, std::size_t dm);

RationalMatrix build_type_matrix(const ChoiceSpace& space, std::size_t dm);

// Column subset of the type matrix in the given order.
// Errors: EmptyAllowedSet; BadIndex on out-of-range or repeated indices.
RationalMatrix restrict_type_matrix(const ChoiceSpace& space, std::size_t dm,
                                    const std::vector<std::size_t>& allowed);

// j = (j_1..j_T), one menu index per DM.
using MenuPath = std::vector<std::size_t>;
// i = (i_1..i_T), in-menu position per DM, relative to a MenuPath.
using ChoicePath = std::vector<std::size_t>;

// Mixed-radix odometer step with the last position turning fastest; position
// `skip` is left untouched when it is a valid index. Returns false once every
// combination has been visited.
bool advance_profile(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix,
                     std::size_t skip = static_cast<std::size_t>(-1));

// Joint vectors stack per-DM (menu, position) pairs in Kronecker order with the
// last DM varying fastest. These helpers define that order once.
std::size_t joint_pair_index(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp);
std::vector<MenuPath> all_menu_paths(const ChoiceSpace& space);  // last DM fastest
std::size_t menu_path_index(const ChoiceSpace& space, const MenuPath& mp);
std::size_t choice_path_count(const ChoiceSpace& space, const MenuPath& mp);
std::vector<ChoicePath> all_choice_paths(const ChoiceSpace& space, const MenuPath& mp);
std::size_t choice_path_index(const ChoiceSpace& space, const MenuPath& mp, const ChoicePath& cp);

}  // namespace sepchoice
