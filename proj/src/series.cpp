#include "dobinski/series.hpp"

#include <sstream>

namespace dobinski {

// ---- gauge evaluation ----

Rational Gauge::eval_scale(const Rational& E) const {
  if (kind != Kind::Power) throw DomainError("exact scale arithmetic is Power-only");
  return s * E;
}

RealInterval Gauge::eval(const Rational& E, long prec) const {
  if (kind == Kind::Power) return RealInterval::exp2_rational(-s * E, prec);
  if (E <= 0) throw DomainError("log gauge needs scale exponent > 0 (h at 1 is infinite)");
  // 1 / (E ln 2)^s
  RealInterval L = RealInterval::ln2(prec).mul_rational(E);
  return RealInterval::from_long(1, prec) / L.pow_rational(s);
}

std::string Gauge::eval_decimal(const Rational& E, int digits) const {
  return eval_to_digits([&](long p) { return eval(E, p); }, digits);
}

Radius Gauge::apply(const Radius& r, long prec) const {
  if (kind == Kind::Power) {
    if (!r.bracket) {
      // (m 2^{-E})^s = m^s 2^{-sE}
      if (r.mantissa == 1) return Radius::pow2_scale(s * r.exp2);
      if (is_integer(s)) {
        long si = checked_long(num(s), 1L << 20, "gauge exponent");
        Rational m = 1;
        for (long i = 0; i < si; ++i) m *= r.mantissa;
        return Radius::scaled_pow2(m, s * r.exp2);
      }
    }
    auto [lo, hi] = r.bounds(prec);
    RealInterval vlo = RealInterval::from_rational(lo, prec).pow_rational(s);
    RealInterval vhi = RealInterval::from_rational(hi, prec).pow_rational(s);
    auto blo = RealInterval(vlo).width_upper();  // silence unused warn path
    (void)blo;
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, vlo.lo_raw());
    Rational out_lo;
    mpq_set(out_lo.backend().data(), q);
    mpfr_get_q(q, vhi.hi_raw());
    Rational out_hi;
    mpq_set(out_hi.backend().data(), q);
    mpq_clear(q);
    if (out_lo <= 0) out_lo = out_hi / 2;  // keep the bracket positive
    return Radius::make_bracket(out_lo, out_hi);
  }
  // LogPower: h(r) = 1 / (ln(1/r))^s, increasing in r
  auto [lo, hi] = r.bounds(prec);
  if (hi >= 1) throw DomainError("log gauge needs radius < 1");
  auto value = [&](const Rational& rr) {
    RealInterval v = RealInterval::from_rational(rr, prec);
    return RealInterval::from_long(1, prec) / (-v.ln()).pow_rational(s);
  };
  RealInterval vlo = value(lo);
  RealInterval vhi = value(hi);
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, vlo.lo_raw());
  Rational out_lo;
  mpq_set(out_lo.backend().data(), q);
  mpfr_get_q(q, vhi.hi_raw());
  Rational out_hi;
  mpq_set(out_hi.backend().data(), q);
  mpq_clear(q);
  if (out_lo <= 0) out_lo = out_hi / 2;
  return Radius::make_bracket(out_lo, out_hi);
}

std::string Gauge::to_string() const {
  return (kind == Kind::Power ? "power:" : "logpower:") + rat_str(s);
}

Gauge parse_gauge(const std::string& text) {
  auto tail = [](const std::string& t, size_t at) {
    std::string rest = t.substr(at);
    if (rest.rfind("s=", 0) == 0) rest = rest.substr(2);
    return rest;
  };
  if (text.rfind("power:", 0) == 0) return Gauge::power(parse_rational(tail(text, 6)));
  if (text.rfind("logpower:", 0) == 0)
    return Gauge::logpower(parse_rational(tail(text, 9)));
  throw DomainError("unknown gauge: '" + text + "'");
}

RealInterval covering_sum(const IntervalFamily& f, const Gauge& h, long prec) {
  Rational sum_lo = 0, sum_hi = 0;
  for (const auto& iv : f.members) {
    Radius img = h.apply(iv.radius, prec);
    auto [lo, hi] = img.bounds(prec);
    sum_lo += lo;
    sum_hi += hi;
  }
  RealInterval out(prec);
  RealInterval a = RealInterval::from_rational(sum_lo, prec);
  RealInterval b = RealInterval::from_rational(sum_hi, prec);
  mpfr_set(out.lo_mut(), a.lo_raw(), MPFR_RNDD);
  mpfr_set(out.hi_mut(), b.hi_raw(), MPFR_RNDU);
  return out;
}

// ---- covering series ----

namespace {

// ln 2 bracket for integer-only certificates
const Rational kLn2Lo(693, 1000);

// scale exponent E_n = n - log2 phi(n), exact when phi has rational log2
std::optional<Rational> scale_exponent(const PhiSpec& phi, long n) {
  auto l2 = phi.log2_value(n);
  if (!l2) return std::nullopt;
  return Rational(n) - *l2;
}

RealInterval theta_value(const PhiSpec& phi, const Gauge& h, long n, long prec) {
  if (auto E = scale_exponent(phi, n)) return h.eval(*E, prec).mul_pow2(n);
  // irrational pieces: Constant c (log2 c irrational) or SuperExp fractional n*alpha
  if (phi.kind == PhiSpec::Kind::Constant) {
    RealInterval c = RealInterval::from_rational(phi.c, prec);
    if (h.kind == Gauge::Kind::Power)
      return c.pow_rational(h.s) * RealInterval::exp2_rational(Rational(n) * (Rational(1) - h.s), prec);
    RealInterval L = RealInterval::ln2(prec).mul_rational(Rational(n)) - c.ln();
    return (RealInterval::from_long(1, prec) / L.pow_rational(h.s)).mul_pow2(n);
  }
  if (phi.kind == PhiSpec::Kind::SuperExp) {
    RealInterval E = RealInterval::exp2_rational(Rational(n) * phi.alpha, prec) +
                     RealInterval::from_long(n, prec);
    if (h.kind == Gauge::Kind::Power)
      return (RealInterval::from_long(n, prec) - E.mul_rational(h.s)).exp2();
    RealInterval L = E * RealInterval::ln2(prec);
    return (RealInterval::from_long(1, prec) / L.pow_rational(h.s)).mul_pow2(n);
  }
  throw DomainError("unsupported combination for term evaluation");
}

// exact log2 theta(n) where one exists
std::optional<Rational> theta_log2(const PhiSpec& phi, const Gauge& h, long n) {
  if (h.kind != Gauge::Kind::Power) return std::nullopt;  // log gauge values are never 2-powers
  auto E = scale_exponent(phi, n);
  if (!E) return std::nullopt;
  if (phi.kind == PhiSpec::Kind::Constant && phi.log2_value(n) == std::nullopt) return std::nullopt;
  return Rational(n) - h.s * *E;
}

void fill_rows(SeriesReport& rep, const PhiSpec& phi, const Gauge& h, long n_start, long nmax,
               long prec) {
  for (long n = n_start; n <= nmax; ++n) {
    SeriesTermRow row;
    row.n = n;
    row.log2_term = theta_log2(phi, h, n);
    row.term_float = theta_value(phi, h, n, prec).midpoint_double();
    rep.rows.push_back(std::move(row));
  }
}

// first n from which the log gauge is defined (E_n > 0)
long log_gauge_start(const PhiSpec& phi) {
  if (phi.kind != PhiSpec::Kind::Constant) return phi.kind == PhiSpec::Kind::PowerDecay ? 1 : 0;
  // need n > log2 c
  long L = phi.c >= 1 ? bit_length(ceil_rat(phi.c)) : 0;
  return L + 1;
}

}  // namespace

SeriesReport series_classify(const PhiSpec& phi, const Gauge& h, long nmax_rows, long prec) {
  SeriesReport rep;
  rep.sup_phi_violation = !phi.sup_bounded();

  if (h.kind == Gauge::Kind::Power) {
    const Rational& s = h.s;
    switch (phi.kind) {
      case PhiSpec::Kind::Constant: {
        // theta = c^s 2^{n(1-s)}
        Rational ratio = Rational(1) - s;
        fill_rows(rep, phi, h, 0, nmax_rows, prec);
        if (ratio == 0) {
          rep.verdict = SeriesVerdict::Diverges;
          rep.cert.kind = Certificate::Kind::ConstantTerm;
          rep.cert.note = "term is c^s for every n";
        } else {
          rep.cert.kind = Certificate::Kind::Geometric;
          rep.cert.ratio_log2 = ratio;
          rep.verdict = ratio < 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
          rep.sup_theta_violation = ratio > 0;
        }
        return rep;
      }
      case PhiSpec::Kind::PowerDecay: {
        // theta = 2^{n(1 - s(1+alpha))}, exact
        Rational ratio = Rational(1) - s * (Rational(1) + phi.alpha);
        fill_rows(rep, phi, h, 0, nmax_rows, prec);
        if (ratio == 0) {
          rep.verdict = SeriesVerdict::Diverges;
          rep.cert.kind = Certificate::Kind::ConstantTerm;
          rep.cert.note = "term is exactly 1 at the critical exponent";
        } else {
          rep.cert.kind = Certificate::Kind::Geometric;
          rep.cert.ratio_log2 = ratio;
          rep.verdict = ratio < 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
          rep.sup_theta_violation = ratio > 0;
        }
        return rep;
      }
      case PhiSpec::Kind::DoubleExp: {
        // theta = 2^{n - s 2^n / k}
        fill_rows(rep, phi, h, 0, nmax_rows, prec);
        rep.verdict = SeriesVerdict::Converges;
        rep.cert.kind = Certificate::Kind::SuperExponential;
        long n0 = 0;
        while (Rational(pow2(n0)) * s < 2 * phi.k && n0 < 64) ++n0;
        rep.cert.from_n = n0;  // ratio <= 1/2 from here on
        rep.cert.note = "term ratio 2^{1 - s 2^n/k} falls below 1/2";
        return rep;
      }
      case PhiSpec::Kind::SuperExp: {
        // theta = 2^{n(1-s) - s 2^{n alpha}}
        fill_rows(rep, phi, h, 0, nmax_rows, prec);
        rep.verdict = SeriesVerdict::Converges;
        rep.cert.kind = Certificate::Kind::SuperExponential;
        long n0 = 1;
        while (n0 < 512 && Rational(pow2(floor_rat(Rational(n0) * phi.alpha))) * s <
                               Rational(n0) * (Rational(1) - s) + 2)
          ++n0;
        rep.cert.from_n = n0;
        rep.cert.note = "doubly exponential decay dominates the linear factor";
        return rep;
      }
    }
  }

  // LogPower gauge
  const Rational& s = h.s;
  switch (phi.kind) {
    case PhiSpec::Kind::Constant:
    case PhiSpec::Kind::PowerDecay: {
      long n_start = phi.kind == PhiSpec::Kind::Constant ? log_gauge_start(phi) : 1;
      fill_rows(rep, phi, h, n_start, std::max(nmax_rows, n_start + 4), prec);
      // theta = 2^n / (E_n ln2)^s with E_n growing linearly: the 2^n wins.
      // ln(theta(n+1)/theta(n)) >= ln2 - s/E_n >= ln2/2 once E_n >= 2s/ln2.
      Rational need = 2 * s / kLn2Lo;  // ln2 >= 0.693
      long n0 = n_start;
      auto En = [&](long n) {
        return phi.kind == PhiSpec::Kind::Constant
                   ? Rational(n) - Rational(bit_length(ceil_rat(phi.c)))  // <= true E_n
                   : Rational(n) * (Rational(1) + phi.alpha);
      };
      while (En(n0) < need || En(n0) <= 0) ++n0;
      rep.verdict = SeriesVerdict::Diverges;
      rep.cert.kind = Certificate::Kind::EventuallyGeometric;
      rep.cert.ratio_log2 = Rational(1, 2);
      rep.cert.side = -1;
      rep.cert.from_n = n0;
      rep.cert.note = "term ratio stays at or above sqrt(2); terms are unbounded";
      rep.sup_theta_violation = true;
      return rep;
    }
    case PhiSpec::Kind::DoubleExp: {
      // theta = k^s 2^{n(1-s)} / (ln2)^s, exactly geometric
      fill_rows(rep, phi, h, 0, nmax_rows, prec);
      Rational ratio = Rational(1) - s;
      if (ratio == 0) {
        rep.verdict = SeriesVerdict::Diverges;
        rep.cert.kind = Certificate::Kind::ConstantTerm;
        rep.cert.note = "term is exactly k/ln2 for every n";
      } else {
        rep.cert.kind = Certificate::Kind::Geometric;
        rep.cert.ratio_log2 = ratio;
        rep.verdict = ratio < 0 ? SeriesVerdict::Converges : SeriesVerdict::Diverges;
        rep.sup_theta_violation = ratio > 0;
      }
      return rep;
    }
    case PhiSpec::Kind::SuperExp: {
      fill_rows(rep, phi, h, 0, nmax_rows, prec);
      Rational crit = Rational(1) / phi.alpha;
      if (s <= crit) {
        // E_n <= 2^{n alpha + 1} once n <= 2^{n alpha}:
        // theta >= 2^{n(1 - s alpha) - s} (using 1/ln2 >= 1)
        long n1 = 1;
        {
          long guard = std::max<long>(8, checked_long(ceil_rat(Rational(2) / phi.alpha), 1L << 20,
                                                      "alpha floor"));
          n1 = guard;
          while (Rational(pow2(floor_rat(Rational(n1) * phi.alpha))) < n1) ++n1;
        }
        rep.verdict = SeriesVerdict::Diverges;
        rep.cert.kind = Certificate::Kind::BoundedBelow;
        rep.cert.bound_log2 = Rational(n1) * (Rational(1) - s * phi.alpha) - s;
        rep.cert.from_n = n1;
        rep.cert.note = "terms bounded below via n + 2^{n a} <= 2^{n a + 1}";
        rep.sup_theta_violation = s * phi.alpha < 1;
        return rep;
      }
      // E_n >= 2^{n alpha}: theta <= (1/ln2)^s 2^{n(1 - s alpha)}, s alpha > 1
      rep.verdict = SeriesVerdict::Converges;
      rep.cert.kind = Certificate::Kind::EventuallyGeometric;
      rep.cert.ratio_log2 = Rational(1) - s * phi.alpha;
      rep.cert.side = +1;
      rep.cert.from_n = 0;
      rep.cert.note = "geometric majorant via E_n >= 2^{n a}";
      return rep;
    }
  }
  rep.verdict = SeriesVerdict::Inconclusive;
  rep.cert.kind = Certificate::Kind::Unsupported;
  return rep;
}

// ---- arithmetic approximation series ----

std::string PsiSpec::to_string() const {
  switch (kind) {
    case Kind::PowerDecay:
      return "pow:alpha=" + rat_str(alpha);
    case Kind::LogReciprocal:
      return "logrecip";
    case Kind::SuperLiouville:
      return "sliou:alpha=" + rat_str(alpha);
  }
  return "?";
}

PsiSpec parse_psi(const std::string& text) {
  PsiSpec p;
  if (text.rfind("pow:alpha=", 0) == 0) {
    p.kind = PsiSpec::Kind::PowerDecay;
    p.alpha = parse_rational(text.substr(10));
    if (p.alpha <= 0) throw DomainError("alpha must be positive");
    return p;
  }
  if (text == "logrecip") {
    p.kind = PsiSpec::Kind::LogReciprocal;
    return p;
  }
  if (text.rfind("sliou:alpha=", 0) == 0) {
    p.kind = PsiSpec::Kind::SuperLiouville;
    p.alpha = parse_rational(text.substr(12));
    if (p.alpha <= 0) throw DomainError("alpha must be positive");
    return p;
  }
  throw DomainError("unknown psi form: '" + text + "'");
}

namespace {

// psi(q) as an enclosure
RealInterval psi_value(const PsiSpec& psi, long q, long prec) {
  RealInterval Q = RealInterval::from_long(q, prec);
  switch (psi.kind) {
    case PsiSpec::Kind::PowerDecay:
      return RealInterval::from_long(1, prec) / Q.pow_rational(psi.alpha);
    case PsiSpec::Kind::LogReciprocal:
      return RealInterval::from_long(1, prec) / (Q * Q.ln());
    case PsiSpec::Kind::SuperLiouville:
      return (-Q.pow_rational(psi.alpha)).exp2();
  }
  throw DomainError("unreachable");
}

void verdict_from_pseries(SeriesReport& rep, const Rational& p, const Rational& L,
                          const std::string& note) {
  rep.cert.kind = Certificate::Kind::PSeries;
  rep.cert.p = p;
  rep.cert.L = L;
  rep.cert.note = note;
  if (p > -1 || (p == -1 && L <= 1))
    rep.verdict = SeriesVerdict::Diverges;
  else
    rep.verdict = SeriesVerdict::Converges;
  rep.sup_theta_violation = p > 0;
}

}  // namespace

SeriesReport khintchine_series(const PsiSpec& psi, long qmax_rows, long prec) {
  SeriesReport rep;
  for (long q = 2; q <= qmax_rows + 1; ++q) {
    SeriesTermRow row;
    row.n = q;
    if (psi.kind == PsiSpec::Kind::PowerDecay && is_pow2(BigInt(q)))
      row.log2_term = -psi.alpha * floor_log2(BigInt(q));
    if (psi.kind == PsiSpec::Kind::SuperLiouville && is_integer(Rational(q) * Rational(1))) {
      // exact only for integer q^alpha
      Rational e = 0;
      bool exact = false;
      if (is_integer(psi.alpha)) {
        BigInt qa = 1;
        for (BigInt i = 0; i < num(psi.alpha); ++i) qa *= q;
        e = -Rational(qa);
        exact = true;
      }
      if (exact) row.log2_term = e;
    }
    row.term_float = psi_value(psi, q, prec).midpoint_double();
    rep.rows.push_back(std::move(row));
  }
  switch (psi.kind) {
    case PsiSpec::Kind::PowerDecay:
      verdict_from_pseries(rep, -psi.alpha, Rational(0), "sum of q^{-a}");
      return rep;
    case PsiSpec::Kind::LogReciprocal:
      verdict_from_pseries(rep, Rational(-1), Rational(1), "sum of 1/(q ln q)");
      return rep;
    case PsiSpec::Kind::SuperLiouville:
      rep.verdict = SeriesVerdict::Converges;
      rep.cert.kind = Certificate::Kind::SuperExponential;
      rep.cert.note = "2^{-q^a} is eventually dominated by 2^{-q}";
      return rep;
  }
  rep.verdict = SeriesVerdict::Inconclusive;
  return rep;
}

SeriesReport jarnik_series(const PsiSpec& psi, const Gauge& h, long qmax_rows, long prec) {
  SeriesReport rep;
  const Rational& s = h.s;
  for (long q = 2; q <= qmax_rows + 1; ++q) {
    SeriesTermRow row;
    row.n = q;
    // term = q h(psi(q)/q)
    RealInterval Q = RealInterval::from_long(q, prec);
    RealInterval arg = psi_value(psi, q, prec) / Q;
    RealInterval val(prec);
    if (h.kind == Gauge::Kind::Power)
      val = arg.pow_rational(s) * Q;
    else
      val = Q / (-arg.ln()).pow_rational(s);
    row.term_float = val.midpoint_double();
    rep.rows.push_back(std::move(row));
  }
  switch (psi.kind) {
    case PsiSpec::Kind::PowerDecay: {
      if (h.kind == Gauge::Kind::Power) {
        // q (q^{-(1+a)})^s = q^{1 - s(1+a)}
        verdict_from_pseries(rep, Rational(1) - s * (Rational(1) + psi.alpha), Rational(0),
                             "power-decay target under a power gauge");
      } else {
        // q / ((1+a) ln q)^s
        verdict_from_pseries(rep, Rational(1), s, "linear growth against a log power");
      }
      return rep;
    }
    case PsiSpec::Kind::LogReciprocal: {
      if (h.kind == Gauge::Kind::Power) {
        // q (q^{-2}/ln q)^s = q^{1-2s} (ln q)^{-s}
        verdict_from_pseries(rep, Rational(1) - 2 * s, s, "term q^{1-2s} (log q)^{-s}");
      } else {
        verdict_from_pseries(rep, Rational(1), s, "linear growth against a log power");
      }
      return rep;
    }
    case PsiSpec::Kind::SuperLiouville: {
      if (h.kind == Gauge::Kind::Power) {
        rep.verdict = SeriesVerdict::Converges;
        rep.cert.kind = Certificate::Kind::SuperExponential;
        rep.cert.note = "q 2^{-s q^a} q^{-s} decays doubly fast";
        return rep;
      }
      // ln(1/(psi/q)) = q^a ln2 + ln q, sandwiched between q^a ln2 and 2 q^a ln2.
      // term between q^{1} (2 q^a ln2)^{-s} and q (q^a ln2)^{-s}: p = 1 - s a.
      verdict_from_pseries(rep, Rational(1) - s * psi.alpha, Rational(0),
                           "sandwich q^a <= q^a + log2 q <= 2 q^a");
      return rep;
    }
  }
  rep.verdict = SeriesVerdict::Inconclusive;
  return rep;
}

std::optional<Rational> critical_exponent(const PhiSpec& phi, Gauge::Kind gauge_kind) {
  if (gauge_kind == Gauge::Kind::Power) {
    switch (phi.kind) {
      case PhiSpec::Kind::Constant:
        return Rational(1);
      case PhiSpec::Kind::PowerDecay:
        return Rational(1) / (Rational(1) + phi.alpha);
      case PhiSpec::Kind::DoubleExp:
      case PhiSpec::Kind::SuperExp:
        return Rational(0);  // converges for every positive exponent
    }
    return std::nullopt;
  }
  switch (phi.kind) {
    case PhiSpec::Kind::DoubleExp:
      return Rational(1);
    case PhiSpec::Kind::SuperExp:
      return Rational(1) / phi.alpha;
    default:
      return std::nullopt;  // diverges for every log-power exponent
  }
}

std::optional<Rational> jarnik_critical(const PsiSpec& psi, Gauge::Kind gauge_kind) {
  if (gauge_kind == Gauge::Kind::Power) {
    switch (psi.kind) {
      case PsiSpec::Kind::PowerDecay:
        return Rational(2) / (Rational(1) + psi.alpha);
      case PsiSpec::Kind::LogReciprocal:
        return Rational(1);
      case PsiSpec::Kind::SuperLiouville:
        return Rational(0);
    }
    return std::nullopt;
  }
  switch (psi.kind) {
    case PsiSpec::Kind::SuperLiouville:
      return Rational(2) / psi.alpha;
    default:
      return std::nullopt;
  }
}

}  // namespace dobinski
