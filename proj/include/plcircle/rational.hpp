#pragma once

// Exact scalars. Every coordinate, slope and rotation number in the library
// is a GMP-backed rational; nothing is ever rounded.

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plcircle {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown on malformed textual input; carries the 1-based line when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer floor_int(const Rational& r);
inline Rational floor(const Rational& r) { return Rational(floor_int(r)); }

/// r - floor(r), always in [0, 1).
Rational frac(const Rational& r);

/// Nearest integer, ties rounded up.
Integer round_int(const Rational& r);

bool is_dyadic(const Rational& r);

/// True iff r = 2^k for some integer k (k may be negative).
bool is_power_of_two(const Rational& r);

/// Parses "p/q" or "p" (optional sign on p). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& r);

/// "p/q" with the denominator always written.
std::string to_fraction_string(const Rational& r);

/// Approximate decimal rendering for display only.
std::string to_decimal_string(const Rational& r, int digits = 12);

}  // namespace plcircle
