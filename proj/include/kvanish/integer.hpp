#pragma once

// Exact integer and rational scalars used throughout the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace kvanish {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector/matrix shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define KVANISH_ASSERT(cond, msg)                                   \
  do {                                                              \
    if (!(cond)) throw ::kvanish::InternalError(std::string(msg)); \
  } while (0)

namespace num {

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// floor(a / b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Remainder in [0, |b|).
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

inline Integer floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q),
                   boost::multiprecision::denominator(q));
}

inline Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

/// Largest s with s*s <= n, for n >= 0.
inline Integer isqrt(const Integer& n) {
  if (n < 0) throw PreconditionError("isqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

inline bool fits_int64(const Integer& a) {
  return a >= std::numeric_limits<std::int64_t>::min() &&
         a <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace num
}  // namespace kvanish
