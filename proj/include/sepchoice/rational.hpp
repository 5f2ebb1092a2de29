#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sepchoice {

// Exact rational arithmetic. mpq_class keeps values in lowest terms with a
// positive denominator once canonicalized; every constructor path below ends
// canonical, so arithmetic stays exact with no hidden state.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with q > 0 after canonicalization. Throws Err::Parse
// on anything else, including "p/0".
Rational parse_rational(std::string_view text);

// Canonical form: "p" for integers, "p/q" otherwise (q > 1).
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace sepchoice
