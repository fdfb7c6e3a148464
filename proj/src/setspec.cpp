#include "dobinski/setspec.hpp"

#include <sstream>

namespace dobinski {

namespace {

constexpr long kEnumStageCap = 22;  // stage families of 2^n+1 members stay enumerable

Rational key_rational(const std::string& text, const std::string& key) {
  if (text.rfind(key + "=", 0) != 0)
    throw DomainError("expected '" + key + "=...', got '" + text + "'");
  return parse_rational(text.substr(key.size() + 1));
}

long key_long(const std::string& text, const std::string& key, long lo) {
  Rational v = key_rational(text, key);
  if (!is_integer(v)) throw DomainError(key + " must be an integer");
  long out = checked_long(num(v), 1L << 30, key.c_str());
  if (out < lo) throw DomainError(key + " must be >= " + std::to_string(lo));
  return out;
}

// 2^{n alpha} for integer n*alpha; nullopt otherwise
std::optional<BigInt> pow2_if_integer(long n, const Rational& alpha) {
  Rational e = Rational(n) * alpha;
  if (!is_integer(e)) return std::nullopt;
  return pow2(num(e), 1L << 26);
}

}  // namespace

std::optional<Rational> PhiSpec::log2_value(long n) const {
  switch (kind) {
    case Kind::Constant: {
      if (num(c) == 1 && is_pow2(den(c))) return Rational(-floor_log2(den(c)));
      if (den(c) == 1 && is_pow2(num(c))) return Rational(floor_log2(num(c)));
      return std::nullopt;
    }
    case Kind::PowerDecay:
      return -Rational(n) * alpha;
    case Kind::DoubleExp:
      return Rational(n) - Rational(pow2(n, 1L << 26), k);
    case Kind::SuperExp: {
      auto p = pow2_if_integer(n, alpha);
      if (!p) return std::nullopt;
      return Rational(-*p);
    }
  }
  return std::nullopt;
}

Rational PhiSpec::value(long n, long cap) const {
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::DoubleExp: {
      BigInt e = pow2(n, cap);
      if (e % k != 0) throw DomainError("phi(n) is irrational here: k does not divide 2^n");
      return Rational(e) * pow2_rat(-(e / k), cap);
    }
    default:
      break;
  }
  auto l2 = log2_value(n);
  if (!l2 || !is_integer(*l2)) throw DomainError("phi(n) is not rational here");
  return pow2_rat(num(*l2), cap);
}

bool PhiSpec::sup_bounded() const {
  // every supported form decays eventually; the sup over n >= 1 is finite
  return true;
}

std::string PhiSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant:
      os << "const:c=" << rat_str(c);
      break;
    case Kind::PowerDecay:
      os << "pow:alpha=" << rat_str(alpha);
      break;
    case Kind::DoubleExp:
      os << "dexp:k=" << k;
      break;
    case Kind::SuperExp:
      os << "sexp:alpha=" << rat_str(alpha);
      break;
  }
  return os.str();
}

PhiSpec parse_phi(const std::string& text) {
  PhiSpec p;
  if (text.rfind("const:", 0) == 0) {
    p.kind = PhiSpec::Kind::Constant;
    p.c = key_rational(text.substr(6), "c");
    if (p.c <= 0) throw DomainError("constant phi must be positive");
    return p;
  }
  if (text.rfind("pow:", 0) == 0) {
    p.kind = PhiSpec::Kind::PowerDecay;
    p.alpha = key_rational(text.substr(4), "alpha");
    if (p.alpha <= 0) throw DomainError("decay exponent must be positive");
    return p;
  }
  if (text.rfind("dexp:", 0) == 0) {
    p.kind = PhiSpec::Kind::DoubleExp;
    p.k = key_long(text.substr(5), "k", 1);
    return p;
  }
  if (text.rfind("sexp:", 0) == 0) {
    p.kind = PhiSpec::Kind::SuperExp;
    p.alpha = key_rational(text.substr(5), "alpha");
    if (p.alpha <= 0) throw DomainError("decay exponent must be positive");
    return p;
  }
  throw DomainError("unknown phi form: '" + text + "'");
}

Radius SetSpec::stage_radius(long n, long cap) const {
  if (n < 0) throw DomainError("stage must be >= 0");
  switch (kind) {
    case Kind::DobinskiK:
      return Radius::pow2_scale(Rational(pow2(n, cap), k));
    case Kind::UniformGrid:
      return Radius::scaled_pow2(omega, Rational(n));
    case Kind::RunAtLeast:
      return Radius::pow2_scale(Rational(n) * (Rational(1) + alpha));
    case Kind::RunAtLeastExp: {
      auto p = pow2_if_integer(n, alpha);
      if (!p) throw DomainError("n*alpha must be an integer at this stage; use the bracket families");
      return Radius::pow2_scale(Rational(n) + Rational(*p));
    }
    case Kind::BPhi: {
      switch (phi.kind) {
        case PhiSpec::Kind::Constant:
          return Radius::scaled_pow2(phi.c, Rational(n));
        case PhiSpec::Kind::PowerDecay:
          return Radius::pow2_scale(Rational(n) + Rational(n) * phi.alpha);
        case PhiSpec::Kind::DoubleExp:
          return Radius::pow2_scale(Rational(pow2(n, cap), phi.k));
        case PhiSpec::Kind::SuperExp: {
          auto p = pow2_if_integer(n, phi.alpha);
          if (!p) throw DomainError("n*alpha must be an integer at this stage; use the bracket families");
          return Radius::pow2_scale(Rational(n) + Rational(*p));
        }
      }
      break;
    }
  }
  throw DomainError("unreachable");
}

std::string SetSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::DobinskiK:
      os << "dobinski:k=" << k;
      break;
    case Kind::UniformGrid:
      os << "grid:omega=" << rat_str(omega);
      break;
    case Kind::RunAtLeast:
      os << "runlin:alpha=" << rat_str(alpha);
      break;
    case Kind::RunAtLeastExp:
      os << "runexp:alpha=" << rat_str(alpha);
      break;
    case Kind::BPhi:
      os << "bphi:" << phi.to_string();
      break;
  }
  return os.str();
}

SetSpec parse_set(const std::string& text) {
  SetSpec s;
  if (text.rfind("dobinski:", 0) == 0) {
    s.kind = SetSpec::Kind::DobinskiK;
    s.k = key_long(text.substr(9), "k", 1);
    return s;
  }
  if (text.rfind("grid:", 0) == 0) {
    s.kind = SetSpec::Kind::UniformGrid;
    s.omega = key_rational(text.substr(5), "omega");
    if (s.omega <= 0) throw DomainError("omega must be positive");
    return s;
  }
  if (text.rfind("runlin:", 0) == 0) {
    s.kind = SetSpec::Kind::RunAtLeast;
    s.alpha = key_rational(text.substr(7), "alpha");
    if (s.alpha <= 0) throw DomainError("alpha must be positive");
    return s;
  }
  if (text.rfind("runexp:", 0) == 0) {
    s.kind = SetSpec::Kind::RunAtLeastExp;
    s.alpha = key_rational(text.substr(7), "alpha");
    if (s.alpha <= 0) throw DomainError("alpha must be positive");
    return s;
  }
  if (text.rfind("bphi:", 0) == 0) {
    s.kind = SetSpec::Kind::BPhi;
    s.phi = parse_phi(text.substr(5));
    return s;
  }
  throw DomainError("unknown set form: '" + text + "'");
}

StageInfo stage_info(const SetSpec& spec, long n, long cap) {
  StageInfo info;
  info.count = pow2(n, cap) + 1;
  Radius r = spec.stage_radius(n, cap);
  auto l2 = r.log2_exact();
  info.scale_exact = l2.has_value();
  info.scale_log2 = l2 ? *l2 : Rational(0);
  return info;
}

IntervalFamily stage_family(const SetSpec& spec, long n, long cap) {
  if (n < 0) throw DomainError("stage must be >= 0");
  if (n > kEnumStageCap) throw CapError("stage family too large to enumerate");
  Radius r = spec.stage_radius(n, cap);
  BigInt denom = pow2(n);
  IntervalFamily f;
  f.members.reserve(static_cast<std::size_t>(1L << n) + 1);
  for (BigInt j = 0; j <= denom; ++j) f.add(Interval(Rational(j, denom), r));
  return f;
}

std::pair<IntervalFamily, IntervalFamily> stage_bracket_families(const SetSpec& spec, long n,
                                                                 long cap) {
  if (n < 0) throw DomainError("stage must be >= 0");
  if (n > kEnumStageCap) throw CapError("stage family too large to enumerate");
  Rational E;
  switch (spec.kind) {
    case SetSpec::Kind::DobinskiK:
      E = Rational(pow2(n, cap), spec.k);
      break;
    case SetSpec::Kind::RunAtLeast:
      E = Rational(n) * (Rational(1) + spec.alpha);
      break;
    case SetSpec::Kind::RunAtLeastExp: {
      // 2^{n alpha} bracketed by integer-exponent powers
      Rational e = Rational(n) * spec.alpha;
      Rational lo = Rational(n) + Rational(pow2(floor_rat(e), 1L << 26));
      Rational hi = Rational(n) + Rational(pow2(ceil_rat(e), 1L << 26));
      IntervalFamily inner, outer;
      Radius rin = Radius::pow2_scale(hi);  // larger exponent, smaller radius
      Radius rout = Radius::pow2_scale(lo);
      BigInt denom = pow2(n);
      for (BigInt j = 0; j <= denom; ++j) {
        inner.add(Interval(Rational(j, denom), rin));
        outer.add(Interval(Rational(j, denom), rout));
      }
      return {inner, outer};
    }
    default:
      throw DomainError("bracket families exist for scale-exponent specs only");
  }
  IntervalFamily inner, outer;
  Radius rin = Radius::pow2_scale(Rational(ceil_rat(E)));
  Radius rout = Radius::pow2_scale(Rational(floor_rat(E)));
  BigInt denom = pow2(n);
  for (BigInt j = 0; j <= denom; ++j) {
    inner.add(Interval(Rational(j, denom), rin));
    outer.add(Interval(Rational(j, denom), rout));
  }
  return {inner, outer};
}

IntervalFamily dilate_by_gauge(const IntervalFamily& f, const Gauge& h, long prec) {
  IntervalFamily out;
  out.members.reserve(f.size());
  for (const auto& iv : f.members) out.add(Interval(iv.center, h.apply(iv.radius, prec)));
  return out;
}

Tri membership_in_stage(const DigitProgram& p, const SetSpec& spec, long n, long refine_horizon) {
  Radius r = spec.stage_radius(n);
  NearestDyadic nd = nearest_dyadic(p, n);
  if (nd.dist_zero) return Tri::True;  // on the grid

  // pure power radius against the run-length sandwich
  if (auto E = r.log2_exact()) {
    if (is_integer(*E)) {
      BigInt e = num(*E);
      if (e <= nd.sand_hi) return Tri::True;    // dist <= 2^{-(n+z)} <= r
      if (e > nd.sand_lo) return Tri::False;    // dist >= 2^{-(n+z+1)} > r
    }
  }

  if (nd.dist) {
    const Rational& d = *nd.dist;
    if (r.is_rational()) return d <= r.rational_value() ? Tri::True : Tri::False;
    // rational distance vs irrational radius: refine until separated
    for (long prec = 96; prec <= 1L << 16; prec *= 2) {
      auto [rlo, rhi] = r.bounds(prec);
      if (d <= rlo) return Tri::True;
      if (d > rhi) return Tri::False;
    }
    return Tri::Unknown;
  }

  // digit-horizon brackets of the distance
  for (long H = std::max<long>(n + 8, 64); H <= refine_horizon; H *= 2) {
    auto [dlo, dhi] = distance_bracket(p, n, H);
    auto [rlo, rhi] = r.bounds(std::max<long>(96, H));
    if (dhi <= rlo) return Tri::True;
    if (dlo > rhi) return Tri::False;
  }
  return Tri::Unknown;
}

QuasiAudit quasi_independence_audit(const Rational& omega, long nmax) {
  if (omega <= 0 || omega > Rational(1, 2))
    throw DomainError("quasi-independence audit needs constant omega in (0, 1/2]");
  if (nmax < 2) throw DomainError("need nmax >= 2");
  if (nmax > kEnumStageCap) throw CapError("nmax too large to enumerate");
  SetSpec spec;
  spec.kind = SetSpec::Kind::UniformGrid;
  spec.omega = omega;
  std::vector<IntervalFamily> fams;
  std::vector<Rational> mus;
  for (long n = 1; n <= nmax; ++n) {
    fams.push_back(stage_family(spec, n));
    mus.push_back(exact_measure(fams.back()));
  }
  QuasiAudit audit;
  for (long n = 1; n <= nmax; ++n) {
    for (long m = n + 1; m <= nmax; ++m) {
      QuasiRow row;
      row.n = n;
      row.m = m;
      row.mu_n = mus[static_cast<std::size_t>(n - 1)];
      row.mu_m = mus[static_cast<std::size_t>(m - 1)];
      row.mu_inter = intersect_measure(fams[static_cast<std::size_t>(n - 1)],
                                       fams[static_cast<std::size_t>(m - 1)]);
      row.ratio = row.mu_inter / (row.mu_n * row.mu_m);
      if (row.ratio > audit.max_ratio) {
        audit.max_ratio = row.ratio;
        audit.argmax_n = n;
        audit.argmax_m = m;
      }
      audit.rows.push_back(row);
    }
  }
  return audit;
}

}  // namespace dobinski
