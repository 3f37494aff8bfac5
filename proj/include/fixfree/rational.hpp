#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "fixfree/error.hpp"

namespace fixfree {

// Exact rational arithmetic on 64-bit numerator / positive denominator,
// always reduced.  Products and sums are formed in 128 bits first; a value
// that still does not fit after reduction throws Overflow rather than
// silently wrapping.  All Kraft sums, thresholds and certificates in the
// library go through this type, so equality is exact.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rational make(__int128 n, __int128 d) {
    if (d == 0) fail(ErrKind::OutOfRange, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lim = __int128(INT64_MAX);
    if (n > lim || n < -lim || d > lim)
      fail(ErrKind::Overflow, "rational out of 64-bit range");
    Rational r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(__int128(a.num) * b.den + __int128(b.num) * a.den,
                __int128(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(__int128(a.num) * b.den - __int128(b.num) * a.den,
                __int128(a.den) * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(__int128(a.num) * b.num, __int128(a.den) * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) fail(ErrKind::OutOfRange, "rational division by zero");
    return make(__int128(a.num) * b.den, __int128(a.den) * b.num);
  }
  Rational operator-() const { return make(-__int128(num), den); }

  // Exact comparisons via 128-bit cross multiplication.
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num) * b.den < __int128(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return __int128(a.num) * b.den <= __int128(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
};

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace fixfree
