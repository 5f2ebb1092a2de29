#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sepchoice/matrix.hpp"

namespace sepchoice {

struct DdLimits {
  // Conversions refuse to grow past this many intermediate rays (Err::TooLarge).
  std::size_t max_rays = 100000;
};

// Extreme rays and lineality basis of {x : constraints · x >= 0}, both as
// column sets. Rays are normalized (first nonzero entry has absolute value 1)
// and sorted; the lineality basis is in reduced row echelon form.
struct RaySet {
  RationalMatrix rays;
  RationalMatrix lineality;
};
RaySet extreme_rays(const RationalMatrix& constraints, const DdLimits& limits = {});

// Inequality description of cone{gen·v : v >= 0}. Output rows, normalized and
// sorted lexicographically:
//   - implicit equalities as paired ± rows (canonical basis of the orthogonal
//     complement of the generators' span),
//   - every coordinate row e_i that is valid for the cone,
//   - for each facet, its minimum-support representatives modulo the implicit
//     equalities (all of them when the equality space has dimension <= 1, the
//     raw representative otherwise).
// The row set is a complete description: it contains every facet and only
// valid rows.
RationalMatrix v_to_h(const RationalMatrix& gen, const DdLimits& limits = {});

// Generator description of {z : h·z >= 0}: extreme rays plus ± pairs for the
// lineality basis, as normalized columns sorted lexicographically.
RationalMatrix h_to_v(const RationalMatrix& h, const DdLimits& limits = {});

class Cone {
 public:
  static Cone from_v(RationalMatrix v);
  static Cone from_h(RationalMatrix h);
  // Verifies both descriptions cut the same cone (mutual inclusion); throws
  // Err::ConeMismatch otherwise.
  static Cone from_both(RationalMatrix v, RationalMatrix h, const DdLimits& limits = {});

  const std::optional<RationalMatrix>& v_rep() const { return v_; }
  const std::optional<RationalMatrix>& h_rep() const { return h_; }
  std::size_t dim() const;

 private:
  Cone() = default;
  std::optional<RationalMatrix> v_;
  std::optional<RationalMatrix> h_;
};

// Membership via the H-representation when present, else an exact LP on the
// generators.
bool cone_contains(const Cone& cone, const RationalVector& z);

// (⊗ factors)·z computed by axis contraction; the product matrix is never
// materialized. z and the result follow the same last-factor-fastest index
// order as kronecker().
RationalVector tensor_apply(const std::vector<RationalMatrix>& factors, const RationalVector& z);

// Whether every row of the Kronecker product of the cones' H-representations
// is nonnegative on z.
bool tensor_necessity_check(const std::vector<Cone>& cones, const RationalVector& z);

}  // namespace sepchoice
