#include "dobinski/dyadic.hpp"

#include "dobinski/real.hpp"

namespace dobinski {

namespace {
Rational mpfr_to_rational(mpfr_srcptr v) {
  if (!mpfr_number_p(v)) throw PrecisionError("non-finite endpoint");
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, v);
  Rational out;
  mpq_set(out.backend().data(), q);
  mpq_clear(q);
  return out;
}
}  // namespace

std::pair<Rational, Rational> scale_bounds(const ScaleExponent& E, long prec) {
  if (E < 0) throw DomainError("scale exponent must be >= 0");
  RealInterval v = RealInterval::exp2_rational(Rational(-E), prec);
  Rational lo = mpfr_to_rational(v.lo_raw());
  Rational hi = mpfr_to_rational(v.hi_raw());
  if (lo <= 0) throw PrecisionError("scale lower bound underflowed");
  return {lo, hi};
}

}  // namespace dobinski
