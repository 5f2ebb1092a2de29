#include <algorithm>
#include <random>

#include "doctest.h"
#include "sepchoice/error.hpp"
#include "sepchoice/linsolve.hpp"
#include "sepchoice/matrix.hpp"
#include "sepchoice/rational.hpp"
#include "sepchoice/simplex.hpp"
#include "support/fixtures.hpp"

using namespace sepchoice;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo,
                             int hi, int den_max) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_max);
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rat(num(rng), den(rng));
  return m;
}

RationalVector random_vector(std::mt19937_64& rng, std::size_t n, int lo, int hi, int den_max) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, den_max);
  RationalVector v(n);
  for (auto& x : v) x = rat(num(rng), den(rng));
  return v;
}

}  // namespace

TEST_CASE("rational parse and format round trip") {
  CHECK(to_string(parse_rational("3/6")) == "1/2");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(to_string(parse_rational("0")) == "0");
  CHECK(parse_rational("2/4") == rat(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational(" 1"), Error);
  CHECK_THROWS_AS(parse_rational("+1"), Error);
}

TEST_CASE("rational canonical invariants") {
  Rational q = parse_rational("-6/4");
  CHECK(q.get_den() == 2);
  CHECK(q.get_num() == -3);
  CHECK(sign(q) < 0);
}

TEST_CASE("kronecker identities") {
  auto i2 = RationalMatrix::identity(2);
  CHECK(kronecker(i2, i2) == RationalMatrix::identity(4));

  RationalMatrix two(1, 1);
  two.at(0, 0) = 2;
  RationalMatrix b = RationalMatrix::from_rows({{1, 2}, {3, 4}});
  CHECK(kronecker(two, b) == RationalMatrix::from_rows({{2, 4}, {6, 8}}));
}

TEST_CASE("kronecker block layout on the frozen type matrix") {
  auto a = fixtures::fs_type_matrix();
  auto k = kronecker(a, a);
  REQUIRE(k.rows() == 16);
  REQUIRE(k.cols() == 16);
  // block (i,j) equals a when a[i][j]=1 and zero otherwise
  for (std::size_t bi = 0; bi < 4; ++bi)
    for (std::size_t bj = 0; bj < 4; ++bj)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          CHECK(k.at(4 * bi + i, 4 * bj + j) == a.at(bi, bj) * a.at(i, j));
}

TEST_CASE("kronecker mixed product property") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = random_matrix(rng, 3, 2, -3, 3, 4);
    auto b = random_matrix(rng, 2, 3, -3, 3, 4);
    auto u = random_vector(rng, 2, -3, 3, 4);
    auto v = random_vector(rng, 3, -3, 3, 4);
    auto lhs = mat_vec(kronecker(a, b), kronecker(RationalMatrix::from_cols({u}),
                                                  RationalMatrix::from_cols({v}))
                                            .col(0));
    auto rhs = kronecker(RationalMatrix::from_cols({mat_vec(a, u)}),
                         RationalMatrix::from_cols({mat_vec(b, v)}))
                   .col(0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("rank of the frozen matrices") {
  CHECK(rank(fixtures::fs_type_matrix()) == 3);
  CHECK(rank(fixtures::fs_restricted_type_matrix()) == 3);
  CHECK(rank(RationalMatrix::identity(5)) == 5);
  CHECK(rank(RationalMatrix(3, 4)) == 0);
}

TEST_CASE("rank is permutation invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_matrix(rng, 5, 4, -2, 2, 3);
    std::vector<std::size_t> rp{0, 1, 2, 3, 4}, cp{0, 1, 2, 3};
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    RationalMatrix p(5, 4);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) p.at(i, j) = a.at(rp[i], cp[j]);
    CHECK(rank(a) == rank(p));
  }
}

TEST_CASE("in_span basics") {
  CHECK(in_span(RationalMatrix::identity(3), {rat(1), rat(2), rat(3)}));
  // two columns of the type matrix miss a generic per-menu stochastic vector
  auto two = fixtures::fs_type_matrix().col_subset({0, 1});
  RationalVector generic{rat(1, 2), rat(1, 2), rat(1, 3), rat(2, 3)};
  CHECK_FALSE(in_span(two, generic));
  CHECK(in_span(fixtures::fs_type_matrix(), generic));
}

TEST_CASE("solve_particular identity and consistency") {
  RationalVector b{rat(1, 3), rat(-2), rat(0)};
  auto v = solve_particular(RationalMatrix::identity(3), b);
  REQUIRE(v.has_value());
  CHECK(*v == b);

  // every per-menu stochastic vector has a representation under the full matrix
  auto a = fixtures::fs_type_matrix();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> num(0, 8);
    Rational p = rat(num(rng), 8), q = rat(num(rng), 8);
    RationalVector pcr{p, 1 - p, q, 1 - q};
    auto sol = solve_particular(a, pcr);
    REQUIRE(sol.has_value());
    CHECK(mat_vec(a, *sol) == pcr);
  }
}

TEST_CASE("solve_particular detects inconsistency") {
  auto two = fixtures::fs_type_matrix().col_subset({0, 1});
  CHECK_FALSE(solve_particular(two, {rat(1, 2), rat(1, 2), rat(1, 3), rat(2, 3)}).has_value());
}

TEST_CASE("nullspace spans the kernel") {
  auto a = fixtures::fs_type_matrix();
  auto ns = nullspace(a);
  REQUIRE(ns.cols() == 1);
  CHECK(is_zero(mat_vec(a, ns.col(0))));
  CHECK(rank(ns) == 1);
}

TEST_CASE("lp_feasible frozen examples") {
  SUBCASE("identity system") {
    auto r = lp_feasible(RationalMatrix::identity(2), {rat(1), rat(1)});
    REQUIRE(is_feasible(r));
    CHECK(std::get<Feasible>(r).witness == RationalVector{rat(1), rat(1)});
  }
  SUBCASE("zero rhs") {
    auto r = lp_feasible(RationalMatrix::from_rows({{1, -1}}), {rat(0)});
    REQUIRE(is_feasible(r));
    CHECK(std::get<Feasible>(r).witness == RationalVector{rat(0), rat(0)});
  }
  SUBCASE("sign obstruction") {
    auto a = RationalMatrix::from_rows({{1}});
    RationalVector b{rat(-1)};
    auto r = lp_feasible(a, b);
    REQUIRE_FALSE(is_feasible(r));
    auto y = std::get<Infeasible>(r).farkas;
    CHECK(y == RationalVector{rat(-1)});
    CHECK(check_farkas(a, b, y));
  }
}

TEST_CASE("lp_feasible agrees with solve_particular and certifies") {
  std::mt19937_64 rng(23);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto a = random_matrix(rng, 4, 5, -2, 3, 3);
    RationalVector b;
    if (trial % 2 == 0) {
      // feasible by construction: b = A w for a random nonnegative w
      RationalVector w = random_vector(rng, 5, 0, 3, 2);
      b = mat_vec(a, w);
    } else {
      b = random_vector(rng, 4, -3, 3, 2);
    }
    auto r = lp_feasible(a, b);
    if (is_feasible(r)) {
      ++feasible_seen;
      CHECK(check_witness(a, b, std::get<Feasible>(r).witness));
      CHECK(in_span(a, b));
    } else {
      ++infeasible_seen;
      CHECK(check_farkas(a, b, std::get<Infeasible>(r).farkas));
    }
  }
  CHECK(feasible_seen >= 60);
  CHECK(infeasible_seen >= 10);
}

TEST_CASE("lp_feasible is deterministic") {
  std::mt19937_64 rng(29);
  auto a = random_matrix(rng, 4, 6, -2, 2, 3);
  auto b = random_vector(rng, 4, -2, 2, 3);
  auto r1 = lp_feasible(a, b);
  auto r2 = lp_feasible(a, b);
  REQUIRE(is_feasible(r1) == is_feasible(r2));
  if (is_feasible(r1))
    CHECK(std::get<Feasible>(r1).witness == std::get<Feasible>(r2).witness);
  else
    CHECK(std::get<Infeasible>(r1).farkas == std::get<Infeasible>(r2).farkas);
}

TEST_CASE("prepared feasibility matches one-shot calls") {
  std::mt19937_64 rng(31);
  auto a = random_matrix(rng, 5, 4, -2, 2, 2);
  PreparedFeasibility prep(a);
  for (int trial = 0; trial < 30; ++trial) {
    auto b = random_vector(rng, 5, -2, 2, 2);
    auto r1 = prep.solve(b);
    auto r2 = lp_feasible(a, b);
    REQUIRE(is_feasible(r1) == is_feasible(r2));
  }
  CHECK_THROWS_AS(prep.solve(RationalVector(4)), Error);
}

TEST_CASE("redundant rows do not confuse the solver") {
  // duplicated and linearly dependent rows, same solution set
  auto a = RationalMatrix::from_rows({{1, 1}, {1, 1}, {2, 2}});
  auto r = lp_feasible(a, {rat(1), rat(1), rat(2)});
  REQUIRE(is_feasible(r));
  auto bad = lp_feasible(a, {rat(1), rat(1), rat(3)});
  REQUIRE_FALSE(is_feasible(bad));
  CHECK(check_farkas(a, {rat(1), rat(1), rat(3)}, std::get<Infeasible>(bad).farkas));
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(lp_feasible(RationalMatrix::identity(2), RationalVector(3)), Error);
  CHECK_THROWS_AS(mat_vec(RationalMatrix::identity(2), RationalVector(3)), Error);
}
