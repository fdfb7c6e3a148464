#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "dobinski/bigint.hpp"

namespace dobinski {

// Closed interval [lo, hi] of reals with outward-rounded MPFR endpoints.
// Every operation is sound: the true value of the expression lies inside
// the result whenever it lies inside the operands.
class RealInterval {
 public:
  explicit RealInterval(long prec_bits = 128);
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(const RealInterval& o);
  RealInterval& operator=(RealInterval&& o) noexcept;
  ~RealInterval();

  static RealInterval from_rational(const Rational& q, long prec);
  static RealInterval from_long(long v, long prec);
  static RealInterval pi(long prec);
  static RealInterval ln2(long prec);
  // 2^q for rational q.
  static RealInterval exp2_rational(const Rational& q, long prec);
  // sin(pi*x) for rational x in [0,1] (exact symmetric reduction to [0,1/2]).
  static RealInterval sin_pi(const Rational& x, long prec);

  long precision() const { return prec_; }

  RealInterval operator-() const;
  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

  RealInterval mul_rational(const Rational& q) const;
  RealInterval mul_pow2(long k) const;  // exact
  RealInterval ln() const;              // requires lo > 0
  RealInterval log2() const;            // requires lo > 0
  RealInterval exp() const;
  RealInterval exp2() const;
  RealInterval sqr() const;
  RealInterval abs() const;
  // base^q via exp(q*ln(base)); requires lo > 0.
  RealInterval pow_rational(const Rational& q) const;

  bool certainly_lt(const Rational& q) const;
  bool certainly_gt(const Rational& q) const;
  bool certainly_le(const Rational& q) const;
  bool certainly_ge(const Rational& q) const;
  bool contains(const Rational& q) const;
  bool is_positive() const;

  // Distance check |*this - q| <= eps, certified (true only if guaranteed).
  bool certainly_within(const Rational& q, const Rational& eps) const;

  double midpoint_double() const;
  double lo_double() const;
  double hi_double() const;
  Rational width_upper() const;  // exact rational >= hi-lo

  // The round-to-nearest decimal rendering with `digits` significant digits,
  // if both endpoints agree on it (then it is the correctly rounded rendering
  // of the true value).
  std::optional<std::string> certified_decimal(int digits) const;

  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }

 private:
  long prec_;
  mpfr_t lo_, hi_;
};

// Evaluates f at increasing precision until the value is pinned to `digits`
// correctly rounded significant decimal digits; throws PrecisionError past
// max_bits.  f(prec_bits) -> RealInterval.
template <typename F>
std::string eval_to_digits(F&& f, int digits, long start_bits = 96, long max_bits = 1 << 16) {
  for (long p = start_bits; p <= max_bits; p *= 2) {
    RealInterval v = f(p);
    if (auto s = v.certified_decimal(digits)) return *s;
  }
  throw PrecisionError("requested digits unreachable at working-precision ceiling");
}

template <typename F>
RealInterval eval_to_width(F&& f, const Rational& width, long start_bits = 96, long max_bits = 1 << 16) {
  for (long p = start_bits; p <= max_bits; p *= 2) {
    RealInterval v = f(p);
    if (v.width_upper() <= width) return v;
  }
  throw PrecisionError("requested enclosure width unreachable at working-precision ceiling");
}

}  // namespace dobinski
