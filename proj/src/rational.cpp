#include "plcircle/rational.hpp"

#include <cctype>
#include <sstream>

namespace plcircle {

Integer floor_int(const Rational& r) {
  Integer n = numerator(r);
  Integer d = denominator(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational frac(const Rational& r) { return r - floor(r); }

Integer round_int(const Rational& r) { return floor_int(r + Rational(1, 2)); }

bool is_dyadic(const Rational& r) {
  Integer d = denominator(r);
  return (d & (d - 1)) == 0;
}

bool is_power_of_two(const Rational& r) {
  if (r <= 0) return false;
  Integer n = numerator(r);
  Integer d = denominator(r);
  return (n & (n - 1)) == 0 && (d & (d - 1)) == 0;
}

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  out = Integer(digits);
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  Integer p, q(1);
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, p)) throw ParseError("malformed rational '" + std::string(text) + "'");
  } else {
    std::string_view den = s.substr(slash + 1);
    if (!parse_integer(s.substr(0, slash), p) || den.empty() || den[0] == '-' || den[0] == '+' ||
        !parse_integer(den, q))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(p, q);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << r.convert_to<double>();
  return os.str();
}

}  // namespace plcircle
