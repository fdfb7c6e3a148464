#pragma once

#include "dobinski/digit_program.hpp"
#include "dobinski/real.hpp"

namespace dobinski {

// |tan(pi u)| for rational u, evaluated as sin(pi {u}) / sin(pi {u + 1/2})
// with exact rational argument reduction. DomainError at dyadic u (pole or zero).
RealInterval abs_tan_pi(const Rational& u, long prec);

// One factor |tan(2^j pi x)|^{2^{-j}}.
RealInterval tan_factor(const Rational& x, long j, long prec);

// prod_{j=0}^{n} |tan(2^j pi x)|^{2^{-j}}, multiplied term by term.
RealInterval tan_product_direct(const Rational& x, long n, long prec);

// Same value through the telescoped form
// 2^{2 - 2^{-n}} sin(pi x)^2 / sin(pi {2^{n+1} x})^{2^{-n}}.
RealInterval tan_product_closed(const Rational& x, long n, long prec);

// Limit candidate (2 sin pi x)^2.
RealInterval tan_product_target(const Rational& x, long prec);

// One evaluated stage of a digit program: the partial product, the leftover
// sine factor |sin(2^{n+1} pi x)|^{2^{-n}}, and the limit candidate.
// Invariant: partial * tail = 2^{2 - 2^{-n}} sin(pi x)^2.
struct ProductTrace {
  long n;
  RealInterval partial;
  RealInterval tail;
  RealInterval target;
};
// Argument reduction is exact digit shifting; programs without a rational
// value are bracketed from their digits at a precision-scaled horizon.
// Dyadic programs are rejected (some 2^j x lands on a tangent pole or zero).
ProductTrace product_trace(const DigitProgram& p, long n, long prec);

// Bounds on the leftover sine factor |sin(2^{n+1} pi x)|^{2^{-n}} at stage n,
// driven by the run length z = z_{n+1}(x) of the binary tail: the factor lies
// in [2^{-z 2^{-n}}, 2^{(log2 pi - z) 2^{-n}}].
struct TailBounds {
  RealInterval lower;
  RealInterval upper;
  BigInt z;
};
TailBounds tail_factor_bound(const DigitProgram& p, long n, long prec);

// B_n by the binomial recurrence, exact.
BigInt bell_recurrence(long n);

// B_n as e^{-1} sum_{k<=K} k^n / k!, enclosed. The cut tail is certified
// against a geometric majorant; PrecisionError when K is too small for n.
RealInterval bell_series(long n, long K, long prec);

}  // namespace dobinski
