#include "sepchoice/rational.hpp"

#include <cctype>

#include "sepchoice/error.hpp"

namespace sepchoice {

namespace {

bool shape_ok(std::string_view s) {
  // mpq_set_str is lenient about whitespace and leading '+'; the wire format is not.
  if (s.empty()) return false;
  std::size_t i = 0;
  auto digits = [&](bool allow_sign) {
    if (allow_sign && i < s.size() && s[i] == '-') ++i;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i > start;
  };
  if (!digits(true)) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  return digits(false) && i == s.size();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  require(shape_ok(text), Err::Parse, "bad rational literal '" + std::string(text) + "'");
  Rational q;
  int rc = mpq_set_str(q.get_mpq_t(), std::string(text).c_str(), 10);
  require(rc == 0, Err::Parse, "bad rational literal '" + std::string(text) + "'");
  require(sgn(q.get_den()) != 0, Err::Parse, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace sepchoice
