#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "sepchoice/cone.hpp"
#include "sepchoice/error.hpp"
#include "sepchoice/linsolve.hpp"
#include "sepchoice/simplex.hpp"
#include "support/fixtures.hpp"

using namespace sepchoice;

namespace {

std::vector<RationalVector> row_set(const RationalMatrix& m) {
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::sort(rows.begin(), rows.end(), [](const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return rows;
}

std::vector<RationalVector> col_set(const RationalMatrix& m) { return row_set(m.transposed()); }

Err code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Err::Internal;
}

// square-based cone over R^3 with apex at the origin, four extreme rays
RationalMatrix pyramid_h() {
  return RationalMatrix::from_rows({
      {0, 0, 1},
      {-1, 0, 1},
      {1, 0, 1},
      {0, -1, 1},
      {0, 1, 1},
  });
}

}  // namespace

TEST_CASE("extreme_rays on the nonnegative quadrant") {
  auto rs = extreme_rays(RationalMatrix::identity(2));
  CHECK(rs.lineality.cols() == 0);
  CHECK(col_set(rs.rays) == std::vector<RationalVector>{{0, 1}, {1, 0}});
}

TEST_CASE("extreme_rays splits a half-plane into a ray and a line") {
  auto rs = extreme_rays(RationalMatrix::from_rows({{1, 0}}));
  REQUIRE(rs.lineality.cols() == 1);
  CHECK(rs.lineality.col(0) == RationalVector{0, 1});
  REQUIRE(rs.rays.cols() == 1);
  CHECK(rs.rays.col(0) == RationalVector{1, 0});
}

TEST_CASE("extreme_rays with no constraints yields the whole space") {
  auto rs = extreme_rays(RationalMatrix(0, 2));
  CHECK(rs.rays.cols() == 0);
  CHECK(rs.rays.rows() == 2);
  CHECK(row_set(rs.lineality.transposed()) == row_set(RationalMatrix::identity(2)));
}

TEST_CASE("extreme_rays collapses opposing constraints to the origin") {
  auto rs = extreme_rays(RationalMatrix::from_rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  CHECK(rs.rays.cols() == 0);
  CHECK(rs.lineality.cols() == 0);
}

TEST_CASE("extreme_rays finds the corners of a square-based cone") {
  auto rs = extreme_rays(pyramid_h());
  CHECK(rs.lineality.cols() == 0);
  CHECK(col_set(rs.rays) == std::vector<RationalVector>{
                                {-1, -1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, 1}});
}

TEST_CASE("extreme_rays honors the intermediate ray cap") {
  DdLimits tight;
  tight.max_rays = 3;
  CHECK(code_of([&] { extreme_rays(pyramid_h(), tight); }) == Err::TooLarge);
}

TEST_CASE("v_to_h fixes the nonnegative orthant") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto id = RationalMatrix::identity(n);
    CHECK(row_set(v_to_h(id)) == row_set(id));
  }
}

TEST_CASE("v_to_h reproduces the frozen full-scenario facet matrix") {
  auto h = v_to_h(fixtures::fs_type_matrix());
  CHECK(row_set(h) == row_set(fixtures::fs_h_matrix()));
}

TEST_CASE("v_to_h reproduces the frozen dominance facet matrix") {
  auto h = v_to_h(fixtures::fs_restricted_type_matrix());
  CHECK(row_set(h) == row_set(fixtures::fs_restricted_h_matrix()));
}

TEST_CASE("v_to_h emits equality pairs for a ray in the plane") {
  // single generator (1,-1): span complement has dimension 1, and the lone
  // facet reduces to its two one-entry representatives
  auto h = v_to_h(RationalMatrix::from_rows({{1}, {-1}}));
  CHECK(row_set(h) == std::vector<RationalVector>{{-1, -1}, {0, -1}, {1, 0}, {1, 1}});
}

TEST_CASE("h_to_v on the quadrant returns the axes") {
  auto v = h_to_v(RationalMatrix::identity(2));
  CHECK(col_set(v) == std::vector<RationalVector>{{0, 1}, {1, 0}});
}

TEST_CASE("h_to_v emits lineality as paired opposite columns") {
  auto v = h_to_v(RationalMatrix::from_rows({{1, 0}}));
  CHECK(col_set(v) == std::vector<RationalVector>{{0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("h_to_v recovers the deterministic columns from the facet matrix") {
  auto v = h_to_v(fixtures::fs_h_matrix());
  CHECK(col_set(v) == col_set(fixtures::fs_type_matrix()));
}

TEST_CASE("h_to_v recovers the restricted columns from the dominance matrix") {
  auto v = h_to_v(fixtures::fs_restricted_h_matrix());
  CHECK(col_set(v) == col_set(fixtures::fs_restricted_type_matrix()));
}

TEST_CASE("v_to_h then h_to_v preserves the cone on random 0/1 generators") {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::size_t> dim(1, 5), cnt(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = dim(rng), k = cnt(rng);
    RationalMatrix gen(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) gen.at(i, j) = bit(rng);
    auto h = v_to_h(gen);
    for (std::size_t j = 0; j < k; ++j) CHECK(all_nonneg(mat_vec(h, gen.col(j))));
    auto back = h_to_v(h);
    for (std::size_t j = 0; j < back.cols(); ++j)
      CHECK(is_feasible(lp_feasible(gen, back.col(j))));
  }
}

TEST_CASE("v_to_h output is deterministic") {
  auto a = v_to_h(fixtures::fs_restricted_type_matrix());
  auto b = v_to_h(fixtures::fs_restricted_type_matrix());
  CHECK(a == b);
}

TEST_CASE("cone_contains agrees between representations") {
  auto v = fixtures::fs_type_matrix();
  auto cv = Cone::from_v(v);
  auto ch = Cone::from_h(fixtures::fs_h_matrix());
  std::vector<RationalVector> inside = {
      v.col(0),
      v.col(3),
      {rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)},
      {0, 0, 0, 0},
  };
  std::vector<RationalVector> outside = {
      {1, 0, 0, 0},                      // breaks the adding-up equality
      {-1, -1, -1, -1},                  // equality holds but direction is negative
      {rat(1, 2), rat(1, 2), 1, rat(1, 2)},
  };
  for (const auto& z : inside) {
    CHECK(cone_contains(cv, z));
    CHECK(cone_contains(ch, z));
  }
  for (const auto& z : outside) {
    CHECK_FALSE(cone_contains(cv, z));
    CHECK_FALSE(cone_contains(ch, z));
  }
  CHECK(code_of([&] { cone_contains(cv, RationalVector{1, 2, 3}); }) == Err::DimensionMismatch);
}

TEST_CASE("from_both accepts matching descriptions and rejects mismatches") {
  auto c = Cone::from_both(fixtures::fs_type_matrix(), fixtures::fs_h_matrix());
  CHECK(c.v_rep().has_value());
  CHECK(c.h_rep().has_value());
  CHECK(c.dim() == 4);
  // orthant inequalities admit points off the generators' span
  CHECK(code_of([] {
          Cone::from_both(fixtures::fs_type_matrix(), RationalMatrix::identity(4));
        }) == Err::ConeMismatch);
  // orthant generators break the adding-up equality rows
  CHECK(code_of([] {
          Cone::from_both(RationalMatrix::identity(4), fixtures::fs_h_matrix());
        }) == Err::ConeMismatch);
}

TEST_CASE("tensor_necessity_check matches the materialized product") {
  std::mt19937 rng(987123);
  std::uniform_int_distribution<int> entry(-2, 2);
  auto rand_matrix = [&](std::size_t r, std::size_t c) {
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry(rng);
    return m;
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto ha = rand_matrix(3, 2), hb = rand_matrix(2, 3);
    RationalVector z(6);
    for (auto& x : z) x = entry(rng);
    bool direct = all_nonneg(mat_vec(kronecker(ha, hb), z));
    CHECK(tensor_necessity_check({Cone::from_h(ha), Cone::from_h(hb)}, z) == direct);
  }
  // three factors, mixed representations
  auto ha = rand_matrix(2, 2), hb = rand_matrix(3, 2), hc = rand_matrix(2, 2);
  RationalVector z(8);
  int k = 0;
  for (auto& x : z) x = rat(++k, 3);
  bool direct = all_nonneg(mat_vec(kronecker(kronecker(ha, hb), hc), z));
  CHECK(tensor_necessity_check({Cone::from_h(ha), Cone::from_h(hb), Cone::from_h(hc)}, z) ==
        direct);
}

TEST_CASE("tensor_necessity_check accepts and rejects hand-built points") {
  auto quad = Cone::from_h(RationalMatrix::identity(2));
  // product constraints reduce to plain nonnegativity of all four entries
  CHECK(tensor_necessity_check({quad, quad}, {1, 2, 3, 4}));
  CHECK_FALSE(tensor_necessity_check({quad, quad}, {1, 2, rat(-1, 3), 4}));
  CHECK(code_of([&] { tensor_necessity_check({quad, quad}, {1, 2, 3}); }) ==
        Err::DimensionMismatch);
}
