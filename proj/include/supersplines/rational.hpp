#ifndef SUPERSPLINES_RATIONAL_HPP
#define SUPERSPLINES_RATIONAL_HPP

// Exact rational scalars and a couple of integer helpers shared by every
// other module. Rationals are GMP fractions. Arithmetic keeps them in lowest
// terms, but the (num, den) constructor does not: use `ratio` instead.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace supersplines {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for precondition violations on arguments (bad ranges, dependent
/// linear forms, non-interior vertices, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// num/den in lowest terms.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q" or "-p/q" (whitespace around the token allowed).
inline Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  std::string tok(text.substr(b, e - b));
  if (tok.empty()) throw InvalidArgument("empty rational literal");
  if (tok.front() == '+') tok.erase(0, 1);
  auto slash = tok.find('/');
  auto valid_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  Rational q;
  if (slash == std::string::npos) {
    if (!valid_int(tok)) throw InvalidArgument("malformed rational literal '" + tok + "'");
    q = Rational(Integer(tok));
  } else {
    std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
      throw InvalidArgument("malformed rational literal '" + tok + "'");
    Integer dz(den);
    if (dz == 0) throw InvalidArgument("zero denominator in '" + tok + "'");
    q = Rational(Integer(num), dz);
    q.canonicalize();
  }
  return q;
}

/// Canonical "p/q" form, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Binomial coefficient with the convention C(a, b) = 0 whenever a < b,
/// including negative a.
inline std::int64_t binom(std::int64_t a, std::int64_t b) {
  if (b < 0) throw InvalidArgument("binom: negative lower index");
  if (a < b) return 0;
  if (b > a - b) b = a - b;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    // exact at every step: result * (a - b + i) is divisible by i
    result = result * (a - b + i) / i;
  }
  return result;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace supersplines

#endif  // SUPERSPLINES_RATIONAL_HPP
