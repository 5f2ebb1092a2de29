#include "sepchoice/cone.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "sepchoice/error.hpp"
#include "sepchoice/linsolve.hpp"
#include "sepchoice/simplex.hpp"

namespace sepchoice {

namespace {

// Scale so the first nonzero entry has absolute value 1, sign preserved.
RationalVector normalized(RationalVector v) {
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    Rational f = abs(x);
    if (f != 1)
      for (auto& y : v) y /= f;
    break;
  }
  return v;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_dedup(std::vector<RationalVector>& rows) {
  std::sort(rows.begin(), rows.end(), lex_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

struct Ray {
  RationalVector x;
  RationalVector vals;      // constraint values, one per row of the full system
  std::vector<bool> tight;  // vals[i] == 0
};

Ray make_ray(RationalVector x, const RationalMatrix& sys) {
  Ray r;
  r.x = normalized(std::move(x));
  r.vals = mat_vec(sys, r.x);
  r.tight.resize(r.vals.size());
  for (std::size_t i = 0; i < r.vals.size(); ++i) r.tight[i] = sgn(r.vals[i]) == 0;
  return r;
}

// Rays p and q are adjacent in the cone cut by the processed constraints iff no
// third ray is tight everywhere both of them are. Valid because the working
// cone is pointed.
bool adjacent(const std::vector<Ray>& rays, std::size_t p, std::size_t q,
              const std::vector<bool>& processed) {
  for (std::size_t t = 0; t < rays.size(); ++t) {
    if (t == p || t == q) continue;
    bool covers = true;
    for (std::size_t i = 0; i < processed.size() && covers; ++i)
      if (processed[i] && rays[p].tight[i] && rays[q].tight[i] && !rays[t].tight[i])
        covers = false;
    if (covers) return false;
  }
  return true;
}

RationalMatrix inverse(const RationalMatrix& b) {
  const std::size_t n = b.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = b.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug, n);
  require(pivots.size() == n, Err::Internal, "singular basis in double description");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Canonical basis of a column span: reduced row echelon form of the transpose,
// rows normalized, returned as columns.
RationalMatrix canonical_span_basis(const RationalMatrix& cols) {
  RationalMatrix m = cols.transposed();
  auto pivots = rref_in_place(m, m.cols());
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < pivots.size(); ++i) rows.push_back(normalized(m.row(i)));
  return RationalMatrix::from_rows(rows).transposed();
}

}  // namespace

RaySet extreme_rays(const RationalMatrix& constraints, const DdLimits& limits) {
  const std::size_t n = constraints.cols();
  RationalMatrix lin = canonical_span_basis(nullspace(constraints));
  if (lin.cols() == 0) lin = RationalMatrix(n, 0);
  // Append ± rows for each lineality direction: the augmented system is pointed
  // and cuts exactly the pointed part of the original cone.
  RationalMatrix sys = constraints;
  if (sys.cols() == 0 && sys.rows() == 0) sys = RationalMatrix(0, n);
  for (std::size_t d = 0; d < lin.cols(); ++d) {
    RationalVector row = lin.col(d);
    sys.append_row(row);
    for (auto& x : row) x = -x;
    sys.append_row(row);
  }
  const std::size_t m = sys.rows();

  RaySet out;
  out.lineality = lin;
  if (n == 0) {
    out.rays = RationalMatrix(0, 0);
    return out;
  }

  auto base_rows = independent_columns(sys.transposed());
  require(base_rows.size() == n, Err::Internal, "constraint system lost full rank");
  RationalMatrix base(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base.at(i, j) = sys.at(base_rows[i], j);
  RationalMatrix binv = inverse(base);

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < n; ++j) rays.push_back(make_ray(binv.col(j), sys));
  std::vector<bool> processed(m, false);
  for (std::size_t i : base_rows) processed[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      int s = sgn(rays[k].vals[i]);
      if (s > 0) pos.push_back(k);
      else if (s < 0) neg.push_back(k);
    }
    if (!neg.empty()) {
      std::vector<Ray> next;
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (sgn(rays[k].vals[i]) >= 0) next.push_back(rays[k]);
      for (std::size_t p : pos)
        for (std::size_t q : neg) {
          if (!adjacent(rays, p, q, processed)) continue;
          const Rational& sp = rays[p].vals[i];
          const Rational& sq = rays[q].vals[i];
          RationalVector x(n);
          for (std::size_t c = 0; c < n; ++c) x[c] = sp * rays[q].x[c] - sq * rays[p].x[c];
          next.push_back(make_ray(std::move(x), sys));
          require(next.size() <= limits.max_rays, Err::TooLarge,
                  "intermediate ray count exceeds cap");
        }
      // degenerate inputs can produce coinciding directions
      std::sort(next.begin(), next.end(),
                [](const Ray& a, const Ray& b) { return lex_less(a.x, b.x); });
      next.erase(std::unique(next.begin(), next.end(),
                             [](const Ray& a, const Ray& b) { return a.x == b.x; }),
                 next.end());
      rays = std::move(next);
    }
    processed[i] = true;
  }

  std::vector<RationalVector> cols;
  for (const auto& r : rays) cols.push_back(r.x);
  std::sort(cols.begin(), cols.end(), lex_less);
  out.rays = RationalMatrix::from_cols(cols);
  if (out.rays.cols() == 0) out.rays = RationalMatrix(n, 0);
  return out;
}

namespace {

// All members of {rep + lineality·s} with the fewest nonzero entries. Exact for
// lineality dimension <= 1; higher dimensions return the representative as-is.
std::vector<RationalVector> min_support_reps(const RationalVector& rep,
                                             const RationalMatrix& lin) {
  if (lin.cols() != 1) return {rep};
  RationalVector l = lin.col(0);
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < rep.size(); ++i)
    if (sgn(l[i]) != 0) candidates.push_back(-rep[i] / l[i]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t best = rep.size() + 1;
  std::vector<RationalVector> out;
  for (const auto& s : candidates) {
    RationalVector v(rep.size());
    std::size_t support = 0;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      v[i] = rep[i] + s * l[i];
      if (sgn(v[i]) != 0) ++support;
    }
    if (support == 0) continue;
    if (support < best) {
      best = support;
      out.clear();
    }
    if (support == best) out.push_back(std::move(v));
  }
  if (out.empty()) out.push_back(rep);
  return out;
}

}  // namespace

RationalMatrix v_to_h(const RationalMatrix& gen, const DdLimits& limits) {
  const std::size_t n = gen.rows();
  RaySet dual = extreme_rays(gen.transposed(), limits);

  std::vector<RationalVector> rows;
  // implicit equalities (orthogonal complement of the span) as ± pairs
  RationalMatrix eq = dual.lineality;
  for (std::size_t d = 0; d < eq.cols(); ++d) {
    RationalVector row = normalized(eq.col(d));
    rows.push_back(row);
    for (auto& x : row) x = -x;
    rows.push_back(row);
  }
  // coordinate rows valid for the cone
  for (std::size_t i = 0; i < n; ++i) {
    bool valid = true;
    for (std::size_t j = 0; j < gen.cols() && valid; ++j) valid = sgn(gen.at(i, j)) >= 0;
    if (valid) {
      RationalVector e(n);
      e[i] = 1;
      rows.push_back(std::move(e));
    }
  }
  // facets, with minimum-support representatives modulo the equalities
  for (std::size_t k = 0; k < dual.rays.cols(); ++k)
    for (auto& rep : min_support_reps(dual.rays.col(k), eq)) rows.push_back(normalized(rep));

  sort_dedup(rows);
  auto h = RationalMatrix::from_rows(rows);
  if (h.cols() == 0) h = RationalMatrix(0, n);
  return h;
}

RationalMatrix h_to_v(const RationalMatrix& h, const DdLimits& limits) {
  RaySet rs = extreme_rays(h, limits);
  std::vector<RationalVector> cols;
  for (std::size_t j = 0; j < rs.rays.cols(); ++j) cols.push_back(rs.rays.col(j));
  for (std::size_t d = 0; d < rs.lineality.cols(); ++d) {
    RationalVector v = normalized(rs.lineality.col(d));
    cols.push_back(v);
    for (auto& x : v) x = -x;
    cols.push_back(v);
  }
  sort_dedup(cols);
  auto m = RationalMatrix::from_cols(cols);
  if (m.cols() == 0) m = RationalMatrix(h.cols(), 0);
  return m;
}

Cone Cone::from_v(RationalMatrix v) {
  Cone c;
  c.v_ = std::move(v);
  return c;
}

Cone Cone::from_h(RationalMatrix h) {
  Cone c;
  c.h_ = std::move(h);
  return c;
}

Cone Cone::from_both(RationalMatrix v, RationalMatrix h, const DdLimits& limits) {
  require(v.rows() == h.cols(), Err::DimensionMismatch, "v/h ambient dimensions differ");
  for (std::size_t j = 0; j < v.cols(); ++j) {
    for (const auto& val : mat_vec(h, v.col(j)))
      require(sgn(val) >= 0, Err::ConeMismatch, "generator violates an inequality row");
  }
  RationalMatrix hv = h_to_v(h, limits);
  for (std::size_t j = 0; j < hv.cols(); ++j)
    require(is_feasible(lp_feasible(v, hv.col(j))), Err::ConeMismatch,
            "inequality description admits a direction outside the generated cone");
  Cone c;
  c.v_ = std::move(v);
  c.h_ = std::move(h);
  return c;
}

std::size_t Cone::dim() const { return v_ ? v_->rows() : h_->cols(); }

bool cone_contains(const Cone& cone, const RationalVector& z) {
  require(z.size() == cone.dim(), Err::DimensionMismatch, "point dimension mismatch");
  if (cone.h_rep()) {
    for (const auto& val : mat_vec(*cone.h_rep(), z))
      if (sgn(val) < 0) return false;
    return true;
  }
  return is_feasible(lp_feasible(*cone.v_rep(), z));
}

RationalVector tensor_apply(const std::vector<RationalMatrix>& factors, const RationalVector& z) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.cols();
  require(z.size() == total, Err::DimensionMismatch, "tensor point dimension mismatch");

  // contract factor axes right to left; after each step the last axis holds
  // constraint indices of that factor
  RationalVector cur = z;
  std::size_t lead = z.size();  // product of axis sizes to the left of the contracted axis
  std::size_t tailr = 1;        // product of already-contracted row counts
  for (std::size_t t = factors.size(); t-- > 0;) {
    const RationalMatrix& h = factors[t];
    const std::size_t nc = h.cols(), nr = h.rows();
    lead /= nc;
    RationalVector next(lead * nr * tailr);
    for (std::size_t a = 0; a < lead; ++a)
      for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t b = 0; b < tailr; ++b) {
          Rational acc = 0;
          for (std::size_t c = 0; c < nc; ++c) {
            const Rational& hv = h.at(r, c);
            if (sgn(hv) != 0) acc += hv * cur[(a * nc + c) * tailr + b];
          }
          next[(a * nr + r) * tailr + b] = acc;
        }
    cur = std::move(next);
    tailr *= nr;
  }
  return cur;
}

bool tensor_necessity_check(const std::vector<Cone>& cones, const RationalVector& z) {
  std::vector<RationalMatrix> hs;
  hs.reserve(cones.size());
  for (const auto& c : cones) hs.push_back(c.h_rep() ? *c.h_rep() : v_to_h(*c.v_rep()));
  return all_nonneg(tensor_apply(hs, z));
}

}  // namespace sepchoice
