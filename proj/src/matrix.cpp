#include "sepchoice/matrix.hpp"

#include "sepchoice/error.hpp"

namespace sepchoice {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m;
  for (const auto& r : rows) {
    RationalVector v;
    v.reserve(r.size());
    for (long x : r) v.emplace_back(x);
    m.append_row(v);
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  RationalMatrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RationalMatrix RationalMatrix::from_cols(const std::vector<RationalVector>& cols) {
  if (cols.empty()) return {};
  std::size_t n = cols.front().size();
  for (const auto& c : cols)
    require(c.size() == n, Err::DimensionMismatch, "ragged column list");
  RationalMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  require(r < rows_, Err::BadIndex, "row out of range");
  return RationalVector(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::col(std::size_t c) const {
  require(c < cols_, Err::BadIndex, "column out of range");
  RationalVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RationalMatrix RationalMatrix::col_subset(const std::vector<std::size_t>& which) const {
  RationalMatrix m(rows_, which.size());
  for (std::size_t j = 0; j < which.size(); ++j) {
    require(which[j] < cols_, Err::BadIndex, "column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, which[j]);
  }
  return m;
}

void RationalMatrix::append_row(const RationalVector& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  require(r.size() == cols_, Err::DimensionMismatch, "row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& aij = a.at(i, j);
      if (sgn(aij) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k.at(i * b.rows() + p, j * b.cols() + q) = aij * b.at(p, q);
    }
  return k;
}

RationalVector mat_vec(const RationalMatrix& a, const RationalVector& x) {
  require(x.size() == a.cols(), Err::DimensionMismatch, "mat_vec size mismatch");
  RationalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a.at(i, j)) != 0) acc += a.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

RationalVector vec_mat(const RationalVector& y, const RationalMatrix& a) {
  require(y.size() == a.rows(), Err::DimensionMismatch, "vec_mat size mismatch");
  RationalVector r(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (sgn(a.at(i, j)) != 0) acc += y[i] * a.at(i, j);
    r[j] = acc;
  }
  return r;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  require(a.size() == b.size(), Err::DimensionMismatch, "dot size mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

bool all_nonneg(const RationalVector& v) {
  for (const auto& x : v)
    if (sgn(x) < 0) return false;
  return true;
}

}  // namespace sepchoice
