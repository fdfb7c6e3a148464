#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dobinski/digit_program.hpp"
#include "dobinski/gauge.hpp"
#include "dobinski/interval.hpp"

namespace dobinski {

// Closed forms for the target-size function phi(n).
struct PhiSpec {
  enum class Kind { Constant, PowerDecay, DoubleExp, SuperExp };
  Kind kind = Kind::Constant;
  Rational c{1};      // Constant
  Rational alpha{1};  // PowerDecay: 2^{-n a}; SuperExp: 2^{-2^{n a}}
  long k = 1;         // DoubleExp: 2^n 2^{-2^n/k}

  // Exact rational log2 phi(n) when the form has one.
  std::optional<Rational> log2_value(long n) const;
  // phi(n) materialized; CapError when the exponent exceeds cap.
  Rational value(long n, long cap = kDefaultExponentCap) const;
  bool sup_bounded() const;  // sup_n phi(n) < infinity
  std::string to_string() const;
};

PhiSpec parse_phi(const std::string& text);  // const:c | pow:alpha | dexp:k | sexp:alpha

// Stage-family generators over the grid Q_n = {j/2^n}.
struct SetSpec {
  enum class Kind { DobinskiK, UniformGrid, RunAtLeast, RunAtLeastExp, BPhi };
  Kind kind = Kind::DobinskiK;
  long k = 1;             // DobinskiK
  Rational omega{1, 4};   // UniformGrid constant
  Rational alpha{1};      // RunAtLeast / RunAtLeastExp
  PhiSpec phi;            // BPhi

  // Radius at stage n. DobinskiK: 2^{-2^n/k}; UniformGrid: omega*2^{-n};
  // RunAtLeast: 2^{-n(1+alpha)}; RunAtLeastExp: 2^{-(n+2^{n alpha})};
  // BPhi: phi(n)*2^{-n}.
  Radius stage_radius(long n, long cap = kDefaultExponentCap) const;
  std::string to_string() const;
};

SetSpec parse_set(const std::string& text);
// dobinski:k | grid:p/q | runlin:alpha | runexp:alpha | bphi:<phi>

// Stage counts and scale without enumeration.
struct StageInfo {
  BigInt count;            // grid centers, 2^n + 1
  bool scale_exact;        // radius is a pure power 2^{-E} with rational E
  Rational scale_log2;     // E when exact
};
StageInfo stage_info(const SetSpec& spec, long n, long cap = kDefaultExponentCap);

IntervalFamily stage_family(const SetSpec& spec, long n, long cap = kDefaultExponentCap);

// Inner/outer families for DobinskiK with k not dividing 2^n:
// radii 2^{-ceil(2^n/k)} and 2^{-floor(2^n/k)}.
std::pair<IntervalFamily, IntervalFamily> stage_bracket_families(const SetSpec& spec, long n,
                                                                 long cap = kDefaultExponentCap);

IntervalFamily dilate_by_gauge(const IntervalFamily& f, const Gauge& h, long prec = 96);

enum class Tri { True, False, Unknown };
Tri membership_in_stage(const DigitProgram& p, const SetSpec& spec, long n,
                        long refine_horizon = 1L << 12);

struct QuasiRow {
  long n, m;
  Rational mu_n, mu_m, mu_inter, ratio;
};
struct QuasiAudit {
  std::vector<QuasiRow> rows;
  Rational max_ratio{0};
  long argmax_n = 0, argmax_m = 0;
};
// Exact ratios |U_n ∩ U_m| / (|U_n||U_m|) over 1 <= n < m <= nmax, constant omega.
QuasiAudit quasi_independence_audit(const Rational& omega, long nmax);

}  // namespace dobinski
