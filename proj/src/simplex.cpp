#include "sepchoice/simplex.hpp"

#include <optional>

#include "sepchoice/error.hpp"
#include "sepchoice/linsolve.hpp"

namespace sepchoice {

bool check_witness(const RationalMatrix& a, const RationalVector& b, const RationalVector& w) {
  if (w.size() != a.cols() || b.size() != a.rows()) return false;
  if (!all_nonneg(w)) return false;
  return mat_vec(a, w) == b;
}

bool check_farkas(const RationalMatrix& a, const RationalVector& b, const RationalVector& y) {
  if (y.size() != a.rows() || b.size() != a.rows()) return false;
  for (const auto& v : vec_mat(y, a))
    if (sgn(v) > 0) return false;
  return sgn(dot(y, b)) > 0;
}

namespace {

// Phase-I simplex for {R w = b, w >= 0}, R with independent rows and b >= 0
// after row flips done by the caller. Returns the witness, or the Phase-I dual
// vector y (per reduced row) proving infeasibility: yᵀR <= 0, yᵀb > 0.
struct PhaseOne {
  std::optional<RationalVector> witness;
  RationalVector dual;
};

PhaseOne phase_one(const RationalMatrix& r, const RationalVector& b) {
  const std::size_t m = r.rows(), n = r.cols();
  // tableau rows: [R | I | b], basis starts at the artificial block
  std::vector<RationalVector> tab(m, RationalVector(n + m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = r.at(i, j);
    tab[i][n + i] = 1;
    tab[i][n + m] = b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  // reduced costs for min sum(artificials); obj tracked in zrow's last slot
  RationalVector zrow(n + m + 1);
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
    zrow[j] = -s;
  }
  {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += b[i];
    zrow[n + m] = -s;
  }

  for (;;) {
    // Bland: entering = lowest index with negative reduced cost
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (sgn(zrow[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    // ratio test; ties broken by lowest basis index (Bland)
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(tab[i][enter]) <= 0) continue;
      Rational ratio = tab[i][n + m] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    require(leave != m, Err::Internal, "phase-I objective unbounded");
    Rational piv = tab[leave][enter];
    for (std::size_t j = 0; j <= n + m; ++j)
      if (sgn(tab[leave][j]) != 0) tab[leave][j] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(tab[i][enter]) == 0) continue;
      Rational f = tab[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j)
        if (sgn(tab[leave][j]) != 0) tab[i][j] -= f * tab[leave][j];
    }
    if (sgn(zrow[enter]) != 0) {
      Rational f = zrow[enter];
      for (std::size_t j = 0; j <= n + m; ++j)
        if (sgn(tab[leave][j]) != 0) zrow[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }

  Rational obj = -zrow[n + m];
  PhaseOne out;
  if (sgn(obj) == 0) {
    RationalVector w(n);
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) w[basis[i]] = tab[i][n + m];
    out.witness = std::move(w);
  } else {
    // multipliers: zrow over the artificial block is 1 - y
    RationalVector y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = 1 - zrow[n + i];
    out.dual = std::move(y);
  }
  return out;
}

}  // namespace

PreparedFeasibility::PreparedFeasibility(RationalMatrix a) : a_(std::move(a)) {
  const std::size_t m = a_.rows(), n = a_.cols();
  RationalMatrix aug(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a_.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug, n);
  nkeep_ = pivots.size();
  red_ = RationalMatrix(nkeep_, n);
  tr_ = RationalMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < nkeep_)
      for (std::size_t j = 0; j < n; ++j) red_.at(i, j) = aug.at(i, j);
    for (std::size_t j = 0; j < m; ++j) tr_.at(i, j) = aug.at(i, n + j);
  }
}

FeasibilityResult PreparedFeasibility::solve(const RationalVector& b) const {
  const std::size_t m = a_.rows();
  require(b.size() == m, Err::DimensionMismatch, "rhs length mismatch");
  RationalVector tb = mat_vec(tr_, b);
  // rows beyond nkeep_ have zero lhs; a nonzero rhs there is a direct Farkas row
  for (std::size_t i = nkeep_; i < m; ++i) {
    if (sgn(tb[i]) == 0) continue;
    RationalVector y = tr_.row(i);
    if (sgn(tb[i]) < 0)
      for (auto& v : y) v = -v;
    require(check_farkas(a_, b, y), Err::Internal, "farkas certificate failed verification");
    return Infeasible{std::move(y)};
  }

  RationalVector rb(tb.begin(), tb.begin() + nkeep_);
  std::vector<bool> flipped(nkeep_, false);
  RationalMatrix rsys = red_;
  for (std::size_t i = 0; i < nkeep_; ++i) {
    if (sgn(rb[i]) < 0) {
      flipped[i] = true;
      rb[i] = -rb[i];
      for (std::size_t j = 0; j < rsys.cols(); ++j) rsys.at(i, j) = -rsys.at(i, j);
    }
  }

  PhaseOne res = phase_one(rsys, rb);
  if (res.witness) {
    require(check_witness(a_, b, *res.witness), Err::Internal,
            "feasible witness failed verification");
    return Feasible{std::move(*res.witness)};
  }
  RationalVector y(m, Rational(0));
  for (std::size_t i = 0; i < nkeep_; ++i) {
    Rational yi = flipped[i] ? Rational(-res.dual[i]) : res.dual[i];
    if (sgn(yi) == 0) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(tr_.at(i, j)) != 0) y[j] += yi * tr_.at(i, j);
  }
  require(check_farkas(a_, b, y), Err::Internal, "farkas certificate failed verification");
  return Infeasible{std::move(y)};
}

FeasibilityResult lp_feasible(const RationalMatrix& a, const RationalVector& b) {
  return PreparedFeasibility(a).solve(b);
}

}  // namespace sepchoice
