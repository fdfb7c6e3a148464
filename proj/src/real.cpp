#include "dobinski/real.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <vector>

namespace dobinski {

RealInterval::RealInterval(long prec_bits) : prec_(std::max(prec_bits, 16L)) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 16);
  mpfr_init2(hi_, 16);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  if (this != &o) {
    prec_ = o.prec_;
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::from_rational(const Rational& q, long prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_, q.backend().data(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.backend().data(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_long(long v, long prec) {
  RealInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::pi(long prec) {
  RealInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::ln2(long prec) {
  RealInterval r(prec);
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exp2_rational(const Rational& q, long prec) {
  RealInterval t = from_rational(q, prec);
  return t.exp2();
}

RealInterval RealInterval::sin_pi(const Rational& x, long prec) {
  if (x < 0 || x > 1) throw DomainError("sin_pi: argument outside [0,1]");
  Rational t = std::min(x, Rational(1) - x);  // sin(pi x) = sin(pi t), t in [0,1/2]
  RealInterval r(prec);
  if (t == Rational(1, 2)) {
    mpfr_set_si(r.lo_, 1, MPFR_RNDD);
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  if (t == 0) return r;  // [0,0]
  RealInterval p = pi(prec);
  mpfr_t alo, ahi;
  mpfr_init2(alo, prec);
  mpfr_init2(ahi, prec);
  mpfr_mul_q(alo, p.lo_, t.backend().data(), MPFR_RNDD);
  mpfr_mul_q(ahi, p.hi_, t.backend().data(), MPFR_RNDU);
  // Half-pi upper bound check: sin is increasing on [0, pi/2].
  mpfr_t half_pi_lo;
  mpfr_init2(half_pi_lo, prec);
  mpfr_div_2si(half_pi_lo, p.lo_, 1, MPFR_RNDD);
  if (mpfr_cmp(ahi, half_pi_lo) <= 0) {
    mpfr_sin(r.lo_, alo, MPFR_RNDD);
    mpfr_sin(r.hi_, ahi, MPFR_RNDU);
  } else {
    // Argument range may straddle the maximum; endpoint min is a sound lower
    // bound (sin is concave on [0,pi]) and 1 a sound upper bound.
    mpfr_t s2;
    mpfr_init2(s2, prec);
    mpfr_sin(r.lo_, alo, MPFR_RNDD);
    mpfr_sin(s2, ahi, MPFR_RNDD);
    if (mpfr_cmp(s2, r.lo_) < 0) mpfr_set(r.lo_, s2, MPFR_RNDD);
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    mpfr_clear(s2);
  }
  if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
  mpfr_clear(alo);
  mpfr_clear(ahi);
  mpfr_clear(half_pi_lo);
  return r;
}

RealInterval RealInterval::operator-() const {
  RealInterval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_t c[4];
  for (auto& m : c) mpfr_init2(m, r.prec_);
  mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDD);
  mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDD);
  mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDD);
  mpfr_set(r.lo_, c[0], MPFR_RNDD);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.lo_) < 0) mpfr_set(r.lo_, c[i], MPFR_RNDD);
  mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDU);
  mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDU);
  mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDU);
  mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDU);
  mpfr_set(r.hi_, c[0], MPFR_RNDU);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.hi_) > 0) mpfr_set(r.hi_, c[i], MPFR_RNDU);
  for (auto& m : c) mpfr_clear(m);
  return r;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
    throw DomainError("interval division by interval containing zero");
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_t c[4];
  for (auto& m : c) mpfr_init2(m, r.prec_);
  mpfr_div(c[0], a.lo_, b.lo_, MPFR_RNDD);
  mpfr_div(c[1], a.lo_, b.hi_, MPFR_RNDD);
  mpfr_div(c[2], a.hi_, b.lo_, MPFR_RNDD);
  mpfr_div(c[3], a.hi_, b.hi_, MPFR_RNDD);
  mpfr_set(r.lo_, c[0], MPFR_RNDD);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.lo_) < 0) mpfr_set(r.lo_, c[i], MPFR_RNDD);
  mpfr_div(c[0], a.lo_, b.lo_, MPFR_RNDU);
  mpfr_div(c[1], a.lo_, b.hi_, MPFR_RNDU);
  mpfr_div(c[2], a.hi_, b.lo_, MPFR_RNDU);
  mpfr_div(c[3], a.hi_, b.hi_, MPFR_RNDU);
  mpfr_set(r.hi_, c[0], MPFR_RNDU);
  for (int i = 1; i < 4; ++i)
    if (mpfr_cmp(c[i], r.hi_) > 0) mpfr_set(r.hi_, c[i], MPFR_RNDU);
  for (auto& m : c) mpfr_clear(m);
  return r;
}

RealInterval RealInterval::mul_rational(const Rational& q) const {
  RealInterval r(prec_);
  if (q >= 0) {
    mpfr_mul_q(r.lo_, lo_, q.backend().data(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, hi_, q.backend().data(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_, hi_, q.backend().data(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, lo_, q.backend().data(), MPFR_RNDU);
  }
  return r;
}

RealInterval RealInterval::mul_pow2(long k) const {
  RealInterval r(prec_);
  mpfr_mul_2si(r.lo_, lo_, k, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::ln() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("ln: interval not strictly positive");
  RealInterval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::log2() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("log2: interval not strictly positive");
  RealInterval r(prec_);
  mpfr_log2(r.lo_, lo_, MPFR_RNDD);
  mpfr_log2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exp() const {
  RealInterval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exp2() const {
  RealInterval r(prec_);
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::sqr() const {
  RealInterval r(prec_);
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b;
    mpfr_init2(a, prec_);
    mpfr_init2(b, prec_);
    mpfr_sqr(a, lo_, MPFR_RNDU);
    mpfr_sqr(b, hi_, MPFR_RNDU);
    mpfr_set(r.hi_, mpfr_cmp(a, b) > 0 ? a : b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
  }
  return r;
}

RealInterval RealInterval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  RealInterval r(prec_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_t a;
  mpfr_init2(a, prec_);
  mpfr_neg(a, lo_, MPFR_RNDU);
  mpfr_set(r.hi_, mpfr_cmp(a, hi_) > 0 ? a : hi_, MPFR_RNDU);
  mpfr_clear(a);
  return r;
}

RealInterval RealInterval::pow_rational(const Rational& q) const {
  if (q == 0) return from_long(1, prec_);
  if (q == 1) return *this;
  if (is_integer(q) && den(q) == 1 && num(q) == 2) return sqr();
  return ln().mul_rational(q).exp();
}

bool RealInterval::certainly_lt(const Rational& q) const { return mpfr_cmp_q(hi_, q.backend().data()) < 0; }
bool RealInterval::certainly_gt(const Rational& q) const { return mpfr_cmp_q(lo_, q.backend().data()) > 0; }
bool RealInterval::certainly_le(const Rational& q) const { return mpfr_cmp_q(hi_, q.backend().data()) <= 0; }
bool RealInterval::certainly_ge(const Rational& q) const { return mpfr_cmp_q(lo_, q.backend().data()) >= 0; }

bool RealInterval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.backend().data()) <= 0 && mpfr_cmp_q(hi_, q.backend().data()) >= 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }

bool RealInterval::certainly_within(const Rational& q, const Rational& eps) const {
  return certainly_le(q + eps) && certainly_ge(q - eps);
}

double RealInterval::midpoint_double() const {
  return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2.0;
}

double RealInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

Rational RealInterval::width_upper() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(w) < 0) {
    mpfr_clear(w);
    throw DomainError("inverted interval");
  }
  mpq_t q;
  mpq_init(q);
  if (mpfr_zero_p(w)) {
    mpfr_clear(w);
    Rational zero(0);
    mpq_clear(q);
    return zero;
  }
  mpfr_get_q(q, w);
  Rational out(q);
  mpq_clear(q);
  mpfr_clear(w);
  return out;
}

std::optional<std::string> RealInterval::certified_decimal(int digits) const {
  if (digits < 1) digits = 1;
  std::vector<char> a(digits + 32), b(digits + 32);
  mpfr_snprintf(a.data(), a.size(), "%.*RNe", digits - 1, lo_);
  mpfr_snprintf(b.data(), b.size(), "%.*RNe", digits - 1, hi_);
  if (std::strcmp(a.data(), b.data()) == 0) return std::string(a.data());
  return std::nullopt;
}

}  // namespace dobinski
