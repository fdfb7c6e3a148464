#pragma once

#include <string>

#include "dobinski/interval.hpp"
#include "dobinski/real.hpp"

namespace dobinski {

// h(r) = r^s (Power) or h(r) = 1/(log 1/r)^s (LogPower), s > 0 rational.
struct Gauge {
  enum class Kind { Power, LogPower };
  Kind kind = Kind::Power;
  Rational s{1};

  static Gauge power(const Rational& s) {
    if (s <= 0) throw DomainError("gauge exponent must be positive");
    return Gauge{Kind::Power, s};
  }
  static Gauge logpower(const Rational& s) {
    if (s <= 0) throw DomainError("gauge exponent must be positive");
    return Gauge{Kind::LogPower, s};
  }

  // h(x)/x non-increasing near 0 (the dilation hypothesis).
  bool mtp_ok() const { return kind == Kind::LogPower || s <= 1; }

  // Power only: h(2^{-E}) = 2^{-sE}, exact in scale space.
  Rational eval_scale(const Rational& E) const;

  // h(2^{-E}) as a certified enclosure. LogPower: 1/(E ln2)^s, requires E > 0.
  RealInterval eval(const Rational& E, long prec) const;

  // Correctly rounded `digits` significant figures of h(2^{-E}).
  std::string eval_decimal(const Rational& E, int digits = 15) const;

  // Radius image h(r) for dilation: exact for Power on pure scales, bracket otherwise.
  Radius apply(const Radius& r, long prec = 96) const;

  std::string to_string() const;
};

Gauge parse_gauge(const std::string& text);  // "power:s" | "logpower:s"

}  // namespace dobinski
