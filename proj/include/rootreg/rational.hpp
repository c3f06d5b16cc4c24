#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rootreg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer floor_int(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;
  if (n < 0 && f * d != n) --f;
  return f;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).convert_to<std::string>();
  if (denominator(q) != 1) s += "/" + denominator(q).convert_to<std::string>();
  return s;
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

// Rational with the smallest denominator in the closed interval [lo, hi]
// (continued-fraction descent).  Intervals of width < 1/D^2 contain at most
// one rational with denominator <= D, which is what the regularity
// certification relies on.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
  if (lo == hi) return lo;
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  // 0 < lo < hi
  Integer fl = floor_int(lo);
  if (Rational(fl) == lo) return lo;
  if (hi >= Rational(fl) + 1) return Rational(fl + 1);
  Rational frac = simplest_between(1 / (hi - Rational(fl)), 1 / (lo - Rational(fl)));
  return Rational(fl) + 1 / frac;
}

}  // namespace rootreg
