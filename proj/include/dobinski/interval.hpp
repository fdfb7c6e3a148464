#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dobinski/dyadic.hpp"

namespace dobinski {

// r = mantissa * 2^{-exp2} with mantissa > 0 rational and exp2 >= 0 rational,
// or a certified dyadic bracket [lo,hi] (gauge images that have no exact form).
struct Radius {
  Rational mantissa{1};
  Rational exp2{0};
  bool bracket = false;
  Rational lo{0};
  Rational hi{0};

  static Radius from_rational(const Rational& r) {
    if (r <= 0) throw DomainError("radius must be positive");
    Radius out;
    out.mantissa = r;
    out.exp2 = 0;
    return out;
  }
  static Radius pow2_scale(const Rational& E) {
    if (E < 0) throw DomainError("scale exponent must be >= 0");
    Radius out;
    out.exp2 = E;
    return out;
  }
  static Radius scaled_pow2(const Rational& m, const Rational& E) {
    if (m <= 0) throw DomainError("radius mantissa must be positive");
    if (E < 0) throw DomainError("scale exponent must be >= 0");
    Radius out;
    out.mantissa = m;
    out.exp2 = E;
    return out;
  }
  static Radius make_bracket(const Rational& l, const Rational& h) {
    if (l <= 0 || h < l) throw DomainError("bad radius bracket");
    Radius out;
    out.bracket = true;
    out.lo = l;
    out.hi = h;
    return out;
  }

  bool is_rational() const {
    if (bracket) return lo == hi;
    return is_integer(exp2);
  }
  Rational rational_value(long cap = kDefaultExponentCap) const;
  // -log2 r when the radius is a pure power of two.
  std::optional<Rational> log2_exact() const {
    if (!bracket && mantissa == 1) return exp2;
    return std::nullopt;
  }
  // Dyadic enclosure [lo, hi] of r at `prec` bits.
  std::pair<Rational, Rational> bounds(long prec) const;
};

struct Interval {
  Rational center;  // dyadic in every produced family
  Radius radius;

  Interval() = default;
  Interval(Rational c, Radius r) : center(std::move(c)), radius(std::move(r)) {}
  static Interval from_endpoints(const Rational& a, const Rational& b) {
    if (b <= a) throw DomainError("empty interval");
    return Interval((a + b) / 2, Radius::from_rational((b - a) / 2));
  }
};

struct IntervalFamily {
  std::vector<Interval> members;

  void add(const Interval& iv) { members.push_back(iv); }
  size_t size() const { return members.size(); }
  bool all_rational() const {
    for (const auto& iv : members)
      if (!iv.radius.is_rational()) return false;
    return true;
  }
};

// Clipped endpoints [max(0,c-r), min(1,c+r)] given exact rational radii.
std::vector<std::pair<Rational, Rational>> clipped_segments(const IntervalFamily& f,
                                                            long cap = kDefaultExponentCap);

// Lebesgue measure of the clipped union. Throws DomainError when any radius
// is irrational; use measure_enclosure for those.
Rational exact_measure(const IntervalFamily& f, long cap = kDefaultExponentCap);

// Certified [lo,hi] for families with irrational radii: exact sweeps at
// bracketed radii, doubling precision until width <= tol.
std::pair<Rational, Rational> measure_enclosure(const IntervalFamily& f,
                                                const Rational& tol,
                                                long max_prec = 1L << 16);

Rational intersect_measure(const IntervalFamily& f, const IntervalFamily& g,
                           long cap = kDefaultExponentCap);
std::pair<Rational, Rational> intersect_measure_enclosure(const IntervalFamily& f,
                                                          const IntervalFamily& g,
                                                          const Rational& tol,
                                                          long max_prec = 1L << 16);

inline Rational default_measure_tol() { return Rational(1) / pow2(40); }

}  // namespace dobinski
