#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "sepchoice/matrix.hpp"

namespace sepchoice {

// Certificates for the system {A w = b, w >= 0}.
struct Feasible {
  RationalVector witness;  // w >= 0 with A w = b
};
struct Infeasible {
  RationalVector farkas;  // y with yᵀA <= 0 componentwise and yᵀb > 0
};
using FeasibilityResult = std::variant<Feasible, Infeasible>;

inline bool is_feasible(const FeasibilityResult& r) { return std::holds_alternative<Feasible>(r); }

bool check_witness(const RationalMatrix& a, const RationalVector& b, const RationalVector& w);
bool check_farkas(const RationalMatrix& a, const RationalVector& b, const RationalVector& y);

// Decides {A w = b, w >= 0} by exact Phase-I simplex with Bland's rule after a
// fraction-free row reduction. Certificates are re-verified against (A, b)
// before they are returned; both outcomes are self-checking.
FeasibilityResult lp_feasible(const RationalMatrix& a, const RationalVector& b);

// Same decision procedure with the row reduction of A done once up front, for
// solving many right-hand sides against one coefficient matrix.
class PreparedFeasibility {
 public:
  explicit PreparedFeasibility(RationalMatrix a);

  const RationalMatrix& lhs() const { return a_; }
  FeasibilityResult solve(const RationalVector& b) const;

 private:
  RationalMatrix a_;    // original system
  RationalMatrix red_;  // independent rows of A, in reduced form (nkeep_ x n)
  RationalMatrix tr_;   // m x m transform; rows [0, nkeep_) give red_ = (tr_ A)|top,
                        // rows [nkeep_, m) annihilate A and expose inconsistent rhs
  std::size_t nkeep_ = 0;
};

}  // namespace sepchoice
