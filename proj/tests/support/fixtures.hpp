#pragma once

// Shared fixtures: the two-DM binary scenario used across the suite and the
// frozen matrices the implementation must reproduce.

#include "sepchoice/choice_space.hpp"
#include "sepchoice/matrix.hpp"

namespace fixtures {

using namespace sepchoice;

// Two DMs, each choosing from {x,w} or {y,z}.
inline ChoiceSpace fs_space() {
  RawSpace raw;
  RawDm dm;
  dm.alternatives = {"x", "w", "y", "z"};
  dm.menus = {{"x", "w"}, {"y", "z"}};
  raw.dms = {dm, dm};
  return validate_space(raw);
}

// Frozen individual type matrix: rows x,{xw}; w,{xw}; y,{yz}; z,{yz},
// columns (x,y),(w,y),(x,z),(w,z).
inline RationalMatrix fs_type_matrix() {
  return RationalMatrix::from_rows({
      {1, 0, 1, 0},
      {0, 1, 0, 1},
      {1, 1, 0, 0},
      {0, 0, 1, 1},
  });
}

// Frozen facet description of cone(fs_type_matrix()): the adding-up equality as
// a ± pair plus nonnegativity.
inline RationalMatrix fs_h_matrix() {
  return RationalMatrix::from_rows({
      {-1, -1, 1, 1},
      {1, 1, -1, -1},
      {1, 0, 0, 0},
      {0, 1, 0, 0},
      {0, 0, 1, 0},
      {0, 0, 0, 1},
  });
}

// Frozen restriction of the type matrix to rules (x,y),(x,z),(w,z).
inline RationalMatrix fs_restricted_type_matrix() {
  return RationalMatrix::from_rows({
      {1, 1, 0},
      {0, 0, 1},
      {1, 0, 0},
      {0, 1, 1},
  });
}
inline std::vector<std::size_t> fs_restricted_allowed() { return {0, 2, 3}; }

// Frozen inequality description of cone(fs_restricted_type_matrix()): the
// adding-up pair, two dominance rows, and nonnegativity.
inline RationalMatrix fs_restricted_h_matrix() {
  return RationalMatrix::from_rows({
      {1, 0, -1, 0},
      {0, -1, 0, 1},
      {-1, -1, 1, 1},
      {1, 1, -1, -1},
      {1, 0, 0, 0},
      {0, 1, 0, 0},
      {0, 0, 1, 0},
      {0, 0, 0, 1},
  });
}

}  // namespace fixtures
