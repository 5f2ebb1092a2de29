#include "sepchoice/linsolve.hpp"

#include "sepchoice/error.hpp"

namespace sepchoice {

std::vector<std::pair<std::size_t, std::size_t>> rref_in_place(RationalMatrix& m,
                                                               std::size_t pivot_cols_limit) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m.at(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m.at(p, j), m.at(r, j));
    Rational inv = 1 / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (sgn(m.at(r, j)) != 0) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m.at(i, c)) == 0) continue;
      Rational f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m.at(r, j)) != 0) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RationalMatrix& a) {
  // Scale each row to integers, then run Bareiss; divisions stay exact.
  std::size_t nr = a.rows(), nc = a.cols();
  std::vector<std::vector<Integer>> m(nr, std::vector<Integer>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < nc; ++j) l = lcm(l, Integer(a.at(i, j).get_den()));
    for (std::size_t j = 0; j < nc; ++j) {
      Integer q = l / a.at(i, j).get_den();
      m[i][j] = a.at(i, j).get_num() * q;
    }
  }
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && sgn(m[p][c]) == 0) ++p;
    if (p == nr) continue;
    if (p != r) std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j) {
        Integer t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

std::optional<RationalVector> solve_particular(const RationalMatrix& a, const RationalVector& b) {
  require(b.size() == a.rows(), Err::DimensionMismatch, "rhs length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = rref_in_place(aug, a.cols());
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (sgn(aug.at(i, a.cols())) != 0) return std::nullopt;
  RationalVector x(a.cols());
  for (auto [r, c] : pivots) x[c] = aug.at(r, a.cols());
  return x;
}

bool in_span(const RationalMatrix& a, const RationalVector& b) {
  return solve_particular(a, b).has_value();
}

RationalMatrix nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = rref_in_place(m, m.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto [r, c] : pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    RationalVector v(a.cols());
    v[c] = 1;
    for (auto [pr, pc] : pivots) v[pc] = -m.at(pr, c);
    basis.push_back(std::move(v));
  }
  return RationalMatrix::from_cols(basis);
}

std::vector<std::size_t> independent_columns(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto pivots = rref_in_place(m, m.cols());
  std::vector<std::size_t> cols;
  cols.reserve(pivots.size());
  for (auto [r, c] : pivots) cols.push_back(c);
  return cols;
}

}  // namespace sepchoice
