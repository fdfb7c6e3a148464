#pragma once

#include "dobinski/bigint.hpp"

namespace dobinski {

// value = num / 2^exp, exp >= 0, normalized so exp == 0 or num is odd.
struct Dyadic {
  BigInt num;
  BigInt exp;

  Dyadic() : num(0), exp(0) {}
  Dyadic(BigInt n, BigInt e) : num(std::move(n)), exp(std::move(e)) { normalize(); }

  void normalize() {
    if (exp < 0) throw DomainError("dyadic exponent must be >= 0");
    if (num == 0) {
      exp = 0;
      return;
    }
    unsigned long tz = mpz_scan1(num.backend().data(), 0);
    BigInt sh = std::min<BigInt>(BigInt(tz), exp);
    long s = checked_long(sh, 1L << 30, "dyadic shift");
    num >>= s;
    exp -= s;
  }

  Rational value() const {
    return Rational(num) / Rational(pow2(exp));
  }

  static Dyadic from_rational(const Rational& q) {
    BigInt d = den(q);
    if (!is_pow2(d)) throw DomainError("not a dyadic rational");
    return Dyadic(dobinski::num(q), BigInt(floor_log2(d)));
  }

  static bool is_dyadic(const Rational& q) { return is_pow2(den(q)); }

  bool operator==(const Dyadic& o) const { return num == o.num && exp == o.exp; }
};

// Scale space: a length r in (0,1] carried as E = log2(1/r), exact rational.
using ScaleExponent = Rational;

// Ordering of 2^{-a} vs 2^{-b}: inverted relative to the exponents.
inline int compare_scale(const ScaleExponent& a, const ScaleExponent& b) {
  if (a < b) return 1;   // 2^{-a} > 2^{-b}
  if (a > b) return -1;
  return 0;
}

// Dyadic bracket of 2^{-E} at `prec` bits, directed rounding both ways.
std::pair<Rational, Rational> scale_bounds(const ScaleExponent& E, long prec);

}  // namespace dobinski
