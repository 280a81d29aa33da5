#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "tame/errors.hpp"

namespace tame {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor division; b must be nonzero.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a modulo |m| in [0, |m|).
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Int floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::int64_t to_i64(const Int& a) {
  if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
    fail(ErrorKind::BadParams, "integer " + a.str() + " does not fit in 64 bits");
  return a.convert_to<std::int64_t>();
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a" or "a/b".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::BadParams, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    fail(ErrorKind::BadParams, "cannot parse rational '" + text + "'");
  }
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime factor of n >= 2.
inline Int smallest_prime_factor(const Int& n) {
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

/// True when q = p^k for some k >= 1.
inline bool is_power_of(Int q, const Int& p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

inline Int pow(const Int& base, unsigned exponent) { return boost::multiprecision::pow(base, exponent); }

inline IntVector to_int_vector(const std::vector<long long>& v) { return IntVector(v.begin(), v.end()); }

}  // namespace tame
