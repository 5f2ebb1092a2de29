#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sepchoice/matrix.hpp"

namespace sepchoice {

// Exact rank by fraction-free (Bareiss) elimination on an integer-scaled copy.
std::size_t rank(const RationalMatrix& a);

// Some v with Av = b, or nullopt iff b is outside the column space.
// Deterministic: pivots are chosen in (column, first-nonzero-row) order and
// free variables are set to zero.
std::optional<RationalVector> solve_particular(const RationalMatrix& a, const RationalVector& b);

bool in_span(const RationalMatrix& a, const RationalVector& b);

// Reduced row echelon form, in place. Pivots restricted to the first
// `pivot_cols_limit` columns (the tail can carry an augmented right-hand side).
// Returns (pivot row, pivot column) pairs in elimination order.
std::vector<std::pair<std::size_t, std::size_t>> rref_in_place(RationalMatrix& m,
                                                               std::size_t pivot_cols_limit);

// Columns spanning {x : Ax = 0}; empty matrix (0 cols) when the kernel is trivial.
RationalMatrix nullspace(const RationalMatrix& a);

// Indices of a deterministic maximal independent column subset (RREF pivot columns).
std::vector<std::size_t> independent_columns(const RationalMatrix& a);

}  // namespace sepchoice
