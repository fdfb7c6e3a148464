#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dobinski/gauge.hpp"
#include "dobinski/setspec.hpp"

namespace dobinski {

// Why sum_n theta(n) converges or diverges, in checkable form.
struct Certificate {
  enum class Kind {
    ConstantTerm,        // theta(n) = C > 0 for all n >= from_n
    Geometric,           // theta(n+1)/theta(n) = 2^{ratio_log2} exactly
    EventuallyGeometric, // one-sided ratio bound from from_n on
    SuperExponential,    // log2 theta(n) <= -c 2^{n}/k + n eventually
    BoundedBelow,        // theta(n) >= 2^{bound_log2} for n >= from_n
    PSeries,             // term ~ q^p (log q)^{-L}
    Unsupported
  };
  Kind kind = Kind::Unsupported;
  Rational ratio_log2{0};
  Rational bound_log2{0};
  Rational p{0};
  Rational L{0};
  long from_n = 0;
  int side = 0;  // -1 lower bound, +1 upper bound, 0 exact
  std::string note;
};

enum class SeriesVerdict { Converges, Diverges, Inconclusive };

struct SeriesTermRow {
  long n = 0;
  std::optional<Rational> log2_term;  // exact when available
  double term_float = 0.0;
};

struct SeriesReport {
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  Certificate cert;
  std::vector<SeriesTermRow> rows;
  // boundedness hypotheses of the dichotomy: sup phi(n) and sup theta(n)
  bool sup_phi_violation = false;
  bool sup_theta_violation = false;
};

// theta(n) = 2^n h(phi(n) 2^{-n}) for the covering series of B_phi.
SeriesReport series_classify(const PhiSpec& phi, const Gauge& h, long nmax_rows = 30,
                             long prec = 192);

// sum over the family of h(radius), certified.
RealInterval covering_sum(const IntervalFamily& f, const Gauge& h, long prec = 192);

// Approximation-function forms for the arithmetic series.
struct PsiSpec {
  enum class Kind { PowerDecay, LogReciprocal, SuperLiouville };
  Kind kind = Kind::PowerDecay;
  Rational alpha{2};  // PowerDecay: q^{-alpha}; SuperLiouville: 2^{-q^alpha}
  std::string to_string() const;
};
PsiSpec parse_psi(const std::string& text);  // pow:alpha | logrecip | sliou:alpha

// sum_q psi(q); terms over q >= 2.
SeriesReport khintchine_series(const PsiSpec& psi, long qmax_rows = 30, long prec = 192);
// sum_q q h(psi(q)/q).
SeriesReport jarnik_series(const PsiSpec& psi, const Gauge& h, long qmax_rows = 30,
                           long prec = 192);

// Exact critical exponent s* for the gauge family against the covering series,
// when the pair has one in closed form.
std::optional<Rational> critical_exponent(const PhiSpec& phi, Gauge::Kind gauge_kind);
std::optional<Rational> jarnik_critical(const PsiSpec& psi, Gauge::Kind gauge_kind);

}  // namespace dobinski
