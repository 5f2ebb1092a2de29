#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sepchoice/rational.hpp"

namespace sepchoice {

using RationalVector = std::vector<Rational>;

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  // Integer literals, one inner list per row. All rows must have equal length.
  static RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix from_cols(const std::vector<RationalVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;
  RationalMatrix transposed() const;
  RationalMatrix col_subset(const std::vector<std::size_t>& which) const;  // throws BadIndex
  void append_row(const RationalVector& r);  // throws DimensionMismatch unless empty

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);

RationalVector mat_vec(const RationalMatrix& a, const RationalVector& x);  // A x
RationalVector vec_mat(const RationalVector& y, const RationalMatrix& a);  // yᵀA
Rational dot(const RationalVector& a, const RationalVector& b);

bool is_zero(const RationalVector& v);
bool all_nonneg(const RationalVector& v);

}  // namespace sepchoice
