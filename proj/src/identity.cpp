#include "dobinski/identity.hpp"

#include <vector>

#include "dobinski/dyadic.hpp"

namespace dobinski {

namespace {

Rational frac(const Rational& q) { return q - Rational(floor_rat(q)); }

// sin(pi t) over a rational interval [lo, hi] subset of [0, 1]
RealInterval sin_pi_hull(const Rational& lo, const Rational& hi, long prec) {
  RealInterval a = RealInterval::sin_pi(lo, prec);
  RealInterval b = RealInterval::sin_pi(hi, prec);
  RealInterval r(prec);
  mpfr_min(r.lo_mut(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  if (lo <= Rational(1, 2) && Rational(1, 2) <= hi)
    mpfr_set_ui(r.hi_mut(), 1, MPFR_RNDU);
  else
    mpfr_max(r.hi_mut(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

// digit-horizon bracket of the value of p, guaranteed inside (0, 1)
std::pair<Rational, Rational> value_bracket(const DigitProgram& p, long start_horizon) {
  long H = start_horizon;
  while (true) {
    std::string bits = digits(p, H);
    if (bits.find('0') != std::string::npos && bits.find('1') != std::string::npos) {
      BigInt V = 0;
      for (char c : bits) V = 2 * V + (c - '0');
      Rational v = Rational(V) / Rational(pow2(H));
      return {v, v + pow2_rat(BigInt(-H))};
    }
    H *= 2;  // constant prefix so far; a non-dyadic stream must break it
  }
}

// sin(pi x) for the value of a program, exact argument when available
RealInterval sin_pi_program(const DigitProgram& p, long prec) {
  if (auto x = exact_value(p)) return RealInterval::sin_pi(frac(*x), prec);
  auto [lo, hi] = value_bracket(p, prec + 16);
  return sin_pi_hull(lo, hi, prec);
}

}  // namespace

RealInterval abs_tan_pi(const Rational& u, long prec) {
  Rational f = frac(u);
  if (f == 0 || f == Rational(1, 2))
    throw DomainError("tangent zero or pole at " + rat_str(u));
  RealInterval s = RealInterval::sin_pi(f, prec);
  RealInterval c = RealInterval::sin_pi(frac(u + Rational(1, 2)), prec);
  return s / c;
}

RealInterval tan_factor(const Rational& x, long j, long prec) {
  Rational u = frac(Rational(pow2(j)) * x);
  RealInterval t = abs_tan_pi(u, prec);
  if (j == 0) return t;
  return t.pow_rational(Rational(1, pow2(j)));
}

RealInterval tan_product_direct(const Rational& x, long n, long prec) {
  if (n < 0) throw DomainError("stage must be >= 0");
  if (Dyadic::is_dyadic(x)) throw DomainError("dyadic point: tangent product undefined");
  RealInterval acc = RealInterval::from_long(1, prec);
  for (long j = 0; j <= n; ++j) acc = acc * tan_factor(x, j, prec);
  return acc;
}

RealInterval tan_product_closed(const Rational& x, long n, long prec) {
  if (n < 0) throw DomainError("stage must be >= 0");
  if (Dyadic::is_dyadic(x)) throw DomainError("dyadic point: tangent product undefined");
  Rational xr = frac(x);
  Rational f = frac(Rational(pow2(n + 1)) * x);
  RealInterval tail = RealInterval::sin_pi(f, prec).pow_rational(Rational(1, pow2(n)));
  RealInterval head = RealInterval::exp2_rational(Rational(2) - Rational(1, pow2(n)), prec);
  return head * RealInterval::sin_pi(xr, prec).sqr() / tail;
}

RealInterval tan_product_target(const Rational& x, long prec) {
  RealInterval s = RealInterval::sin_pi(frac(x), prec);
  return s.sqr().mul_pow2(2);
}

ProductTrace product_trace(const DigitProgram& p, long n, long prec) {
  if (n < 0) throw DomainError("stage must be >= 0");
  if (is_dyadic_stream(p)) throw DomainError("dyadic point: tangent product undefined");
  RealInterval sx = sin_pi_program(p, prec);
  RealInterval tail(prec);
  if (auto x = exact_value(p)) {
    Rational f = frac(Rational(pow2(n + 1)) * *x);
    tail = RealInterval::sin_pi(f, prec);
  } else {
    DigitProgram ps = shift_program(p, BigInt(n + 1));
    auto [lo, hi] = value_bracket(ps, prec + 16);
    tail = sin_pi_hull(lo, hi, prec);
  }
  tail = tail.pow_rational(Rational(1, pow2(n)));
  RealInterval head = RealInterval::exp2_rational(Rational(2) - Rational(1, pow2(n)), prec);
  RealInterval partial = head * sx.sqr() / tail;
  RealInterval target = sx.sqr().mul_pow2(2);
  return ProductTrace{n, std::move(partial), std::move(tail), std::move(target)};
}

TailBounds tail_factor_bound(const DigitProgram& p, long n, long prec) {
  if (n < 1) throw DomainError("tail bound needs n >= 1");
  if (is_dyadic_stream(p)) throw DomainError("dyadic point: tangent product undefined");
  RunLen rl = run_length(p, BigInt(n + 1));
  if (rl.unbounded) throw DomainError("constant tail: no finite run length");
  const BigInt& z = rl.z;
  Rational scale = Rational(1, pow2(n));
  // dist(2^{n+1} x, Z) lies in [2^{-(z+1)}, 2^{-z}]:
  // upper via sin(pi t) <= pi t, lower via sin(pi t) >= 2 t
  RealInterval up_exp = (RealInterval::pi(prec).log2() + RealInterval::from_rational(Rational(-z), prec))
                            .mul_rational(scale);
  RealInterval upper = up_exp.exp2();
  RealInterval lower = RealInterval::exp2_rational(Rational(-z) * scale, prec);
  return TailBounds{std::move(lower), std::move(upper), z};
}

BigInt bell_recurrence(long n) {
  if (n < 0) throw DomainError("Bell numbers need n >= 0");
  std::vector<BigInt> b;
  b.reserve(static_cast<std::size_t>(n) + 1);
  b.push_back(1);
  for (long m = 0; m < n; ++m) {
    BigInt next = 0;
    BigInt binom = 1;  // C(m, 0)
    for (long k = 0; k <= m; ++k) {
      next += binom * b[static_cast<std::size_t>(k)];
      binom = binom * (m - k) / (k + 1);
    }
    b.push_back(next);
  }
  return b.back();
}

RealInterval bell_series(long n, long K, long prec) {
  if (n < 0) throw DomainError("Bell numbers need n >= 0");
  if (K < 1) throw DomainError("series cut must be >= 1");
  // rho bounds t_{k+1}/t_k past the cut; the tail is then geometric
  Rational rho = Rational(BigInt(K + 2), BigInt(K + 1));
  Rational rp = 1;
  for (long i = 0; i < n; ++i) rp *= rho;
  rp /= K + 2;
  if (rp > Rational(1, 2))
    throw PrecisionError("series cut too small: tail ratio above 1/2");
  Rational S = n == 0 ? Rational(1) : Rational(0);  // k = 0 term
  BigInt fact = 1;
  for (long k = 1; k <= K + 1; ++k) {
    fact *= k;
    BigInt p = 1;
    BigInt kk(k);
    for (long i = 0; i < n; ++i) p *= kk;
    if (k <= K)
      S += Rational(p, fact);
    else {
      // first cut term bounds the geometric tail by twice itself
      Rational t1 = Rational(p, fact);
      RealInterval E = RealInterval::from_long(1, prec).exp();
      RealInterval lo_v = RealInterval::from_rational(S, prec) / E;
      RealInterval hi_v = RealInterval::from_rational(S + 2 * t1, prec) / E;
      RealInterval out(prec);
      mpfr_set(out.lo_mut(), lo_v.lo_raw(), MPFR_RNDD);
      mpfr_set(out.hi_mut(), hi_v.hi_raw(), MPFR_RNDU);
      return out;
    }
  }
  throw DomainError("unreachable");
}

}  // namespace dobinski
