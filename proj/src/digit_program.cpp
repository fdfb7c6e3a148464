#include "dobinski/digit_program.hpp"

#include <algorithm>
#include <sstream>

namespace dobinski {

namespace {

// bound on positions we will materialize digit-by-digit
constexpr long kStreamCap = 1L << 22;
// bound on run-start exponents we will expand into run lengths
constexpr long kRunExpCap = 1L << 26;

bool all_bits(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

bool constant_bits(const std::string& s) {
  return !s.empty() && (s.find('0') == std::string::npos || s.find('1') == std::string::npos);
}

BigInt parse_int(const std::string& s) {
  if (s.empty() || (!isdigit(static_cast<unsigned char>(s[0])) && s[0] != '-'))
    throw DomainError("bad integer: '" + s + "'");
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw DomainError("bad integer: '" + s + "'");
  }
}

// splits "a,b,c" at top level (no nesting in our grammar fields)
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string expect_key(const std::string& field, const std::string& key) {
  if (field.rfind(key + "=", 0) != 0)
    throw DomainError("expected '" + key + "=...', got '" + field + "'");
  return field.substr(key.size() + 1);
}

void validate_runs(const std::vector<RunSpec>& runs) {
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].n < 0) throw DomainError("run position must be >= 0");
    if (runs[i].len < 1) throw DomainError("run length must be >= 1");
    if (runs[i].digit != 0 && runs[i].digit != 1) throw DomainError("run digit must be 0 or 1");
    if (i > 0) {
      if (runs[i].n <= runs[i - 1].n) throw DomainError("run positions must be strictly increasing");
      if (runs[i - 1].n + runs[i - 1].len >= runs[i].n)
        throw DomainError("run " + std::to_string(i - 1) + " must end before the next run starts");
    }
  }
}

GenSpec parse_gen(const std::string& body, GenSpec::Kind kind) {
  auto fields = split(body, ',');
  if (fields.size() != 4) throw DomainError("generator needs n1, ratio/step, k, digit");
  GenSpec g;
  g.kind = kind;
  const char* second_key = kind == GenSpec::Kind::Geometric ? "ratio" : "step";
  g.n1 = checked_long(parse_int(expect_key(fields[0], "n1")), kStreamCap, "n1");
  g.ratio_or_step = checked_long(parse_int(expect_key(fields[1], second_key)), kStreamCap, second_key);
  g.k = checked_long(parse_int(expect_key(fields[2], "k")), kStreamCap, "k");
  std::string d = expect_key(fields[3], "digit");
  if (d != "0" && d != "1") throw DomainError("generator digit must be 0 or 1");
  g.digit = d[0] - '0';
  if (g.n1 < 1) throw DomainError("generator n1 must be >= 1");
  if (kind == GenSpec::Kind::Geometric && g.ratio_or_step < 2)
    throw DomainError("generator ratio must be >= 2");
  if (kind == GenSpec::Kind::Linear && g.ratio_or_step < 1)
    throw DomainError("generator step must be >= 1");
  if (g.k < 1) throw DomainError("generator k must be >= 1");
  return g;
}

// run length at start n: ceil(2^n / k)
BigInt gen_len(const BigInt& n, long k) {
  return ceil_div(pow2(n, kRunExpCap), BigInt(k));
}

// Kept runs of a schedule whose start position does not exceed `bound`.
// Generated candidates that would begin at or before the previous kept run's
// trailing guard are dropped.
std::vector<RunSpec> kept_runs(const DigitProgram& p, const BigInt& bound) {
  if (!p.gen) {
    std::vector<RunSpec> out;
    for (const auto& r : p.runs)
      if (r.n <= bound) out.push_back(r);
    return out;
  }
  std::vector<RunSpec> out;
  const GenSpec& g = *p.gen;
  BigInt n = g.n1;
  BigInt prev_end = -1;
  while (n <= bound) {
    if (n >= prev_end) {  // dropped candidates never materialize a length
      BigInt len = gen_len(n, g.k);
      out.push_back(RunSpec{n, len, g.digit});
      prev_end = n + len + 1;
    }
    if (g.kind == GenSpec::Kind::Geometric)
      n *= g.ratio_or_step;
    else
      n += g.ratio_or_step;
  }
  return out;
}

int fill_digit(const std::string& fill, const BigInt& pos) {
  BigInt idx = (pos - 1) % BigInt(static_cast<long>(fill.size()));
  return fill[static_cast<std::size_t>(idx.convert_to<unsigned long>())] - '0';
}

// digit of a schedule at absolute position q >= 1 (offset already applied)
int schedule_digit(const DigitProgram& p, const BigInt& q) {
  auto runs = kept_runs(p, q);
  // latest run starting at or before q decides guard/body; earlier ones ended
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
    if (it->n > q) continue;
    if (q == it->n && it->n > 0) return 1 - it->digit;   // leading guard
    if (q >= it->n + 1 && q <= it->n + it->len) return it->digit;
    if (q == it->n + it->len + 1) return 1 - it->digit;  // trailing guard
    break;
  }
  return fill_digit(p.fill, q);
}

}  // namespace

DigitProgram parse_program(const std::string& text) {
  DigitProgram p;
  if (text.rfind("finite:", 0) == 0) {
    p.kind = DigitProgram::Kind::Finite;
    p.finite_bits = text.substr(7);
    if (!all_bits(p.finite_bits)) throw DomainError("finite program digits must be 0/1");
    return p;
  }
  if (text.rfind("periodic:", 0) == 0) {
    p.kind = DigitProgram::Kind::Periodic;
    auto parts = split(text.substr(9), ';');
    if (parts.size() != 2) throw DomainError("periodic program needs '<prefix>;<period>'");
    p.prefix = parts[0];
    p.period = parts[1];
    if (!all_bits(p.prefix) || !all_bits(p.period)) throw DomainError("digits must be 0/1");
    if (p.period.empty()) throw DomainError("period must be non-empty");
    return p;
  }
  if (text.rfind("schedule:", 0) == 0) {
    p.kind = DigitProgram::Kind::Schedule;
    std::string rest = text.substr(9);
    auto semi = rest.find(';');
    if (semi == std::string::npos) throw DomainError("schedule needs 'fill=...;'");
    p.fill = expect_key(rest.substr(0, semi), "fill");
    if (p.fill.empty() || !all_bits(p.fill)) throw DomainError("fill must be non-empty 0/1 digits");
    std::string tail = rest.substr(semi + 1);
    // optional trailing ';offset=<n>' (produced by shift)
    auto osemi = tail.rfind(";offset=");
    if (osemi != std::string::npos) {
      p.offset = parse_int(tail.substr(osemi + 8));
      if (p.offset < 0) throw DomainError("offset must be >= 0");
      tail = tail.substr(0, osemi);
    }
    if (tail.rfind("runs=[", 0) == 0 && tail.back() == ']') {
      std::string body = tail.substr(6, tail.size() - 7);
      if (!body.empty()) {
        if (body.front() != '(' || body.back() != ')') throw DomainError("runs must be (n,L,b) tuples");
        for (const auto& tup : split(body.substr(1, body.size() - 2), ')')) {
          std::string t = tup;
          if (!t.empty() && t[0] == ',') t = t.substr(1);
          if (!t.empty() && t[0] == '(') t = t.substr(1);
          auto f = split(t, ',');
          if (f.size() != 3) throw DomainError("run tuple needs (n,L,b)");
          RunSpec r;
          r.n = parse_int(f[0]);
          r.len = parse_int(f[1]);
          std::string d = f[2];
          if (d != "0" && d != "1") throw DomainError("run digit must be 0 or 1");
          r.digit = d[0] - '0';
          p.runs.push_back(r);
        }
      }
      validate_runs(p.runs);
      return p;
    }
    if (tail.rfind("geom(", 0) == 0 && tail.back() == ')') {
      p.gen = parse_gen(tail.substr(5, tail.size() - 6), GenSpec::Kind::Geometric);
      return p;
    }
    if (tail.rfind("lin(", 0) == 0 && tail.back() == ')') {
      p.gen = parse_gen(tail.substr(4, tail.size() - 5), GenSpec::Kind::Linear);
      return p;
    }
    throw DomainError("schedule needs runs=[...], geom(...) or lin(...)");
  }
  throw DomainError("unknown digit program: '" + text + "'");
}

std::string program_to_string(const DigitProgram& p) {
  std::ostringstream os;
  switch (p.kind) {
    case DigitProgram::Kind::Finite:
      os << "finite:" << p.finite_bits;
      break;
    case DigitProgram::Kind::Periodic:
      os << "periodic:" << p.prefix << ";" << p.period;
      break;
    case DigitProgram::Kind::Schedule:
      os << "schedule:fill=" << p.fill << ";";
      if (p.gen) {
        const GenSpec& g = *p.gen;
        os << (g.kind == GenSpec::Kind::Geometric ? "geom(n1=" : "lin(n1=") << g.n1
           << (g.kind == GenSpec::Kind::Geometric ? ",ratio=" : ",step=") << g.ratio_or_step
           << ",k=" << g.k << ",digit=" << g.digit << ")";
      } else {
        os << "runs=[";
        for (std::size_t i = 0; i < p.runs.size(); ++i) {
          if (i) os << ",";
          os << "(" << p.runs[i].n.str() << "," << p.runs[i].len.str() << "," << p.runs[i].digit
             << ")";
        }
        os << "]";
      }
      if (p.offset != 0) os << ";offset=" << p.offset.str();
      break;
  }
  return os.str();
}

int digit_at(const DigitProgram& p, const BigInt& pos) {
  if (pos < 1) throw DomainError("digit positions are 1-indexed");
  switch (p.kind) {
    case DigitProgram::Kind::Finite: {
      if (pos > static_cast<long>(p.finite_bits.size())) return 0;
      return p.finite_bits[static_cast<std::size_t>(pos.convert_to<unsigned long>()) - 1] - '0';
    }
    case DigitProgram::Kind::Periodic: {
      long a = static_cast<long>(p.prefix.size());
      if (pos <= a) return p.prefix[static_cast<std::size_t>(pos.convert_to<unsigned long>()) - 1] - '0';
      BigInt idx = (pos - 1 - a) % BigInt(static_cast<long>(p.period.size()));
      return p.period[static_cast<std::size_t>(idx.convert_to<unsigned long>())] - '0';
    }
    case DigitProgram::Kind::Schedule:
      return schedule_digit(p, pos + p.offset);
  }
  throw DomainError("unreachable");
}

std::string digits(const DigitProgram& p, long N) {
  if (N < 1) throw DomainError("need N >= 1");
  if (N > kStreamCap) throw CapError("digit horizon exceeds stream cap");
  std::string out;
  out.reserve(static_cast<std::size_t>(N));
  for (long j = 1; j <= N; ++j) out += static_cast<char>('0' + digit_at(p, BigInt(j)));
  return out;
}

namespace {
BigInt bits_int(const std::string& bits) {
  BigInt v = 0;
  if (!bits.empty()) mpz_set_str(v.backend().data(), bits.c_str(), 2);
  return v;
}
}  // namespace

std::optional<Rational> exact_value(const DigitProgram& p) {
  switch (p.kind) {
    case DigitProgram::Kind::Finite: {
      long N = static_cast<long>(p.finite_bits.size());
      return Rational(bits_int(p.finite_bits)) / Rational(pow2(N));
    }
    case DigitProgram::Kind::Periodic: {
      long a = static_cast<long>(p.prefix.size());
      long b = static_cast<long>(p.period.size());
      Rational y = Rational(bits_int(p.period)) / Rational(pow2(b) - 1);
      return (Rational(bits_int(p.prefix)) + y) / Rational(pow2(a));
    }
    case DigitProgram::Kind::Schedule: {
      if (p.gen) return std::nullopt;
      BigInt last = 0;
      if (!p.runs.empty()) last = p.runs.back().n + p.runs.back().len + 1;
      long M = checked_long(last, kStreamCap, "schedule horizon");
      DigitProgram base = p;
      base.offset = 0;
      BigInt H = 0;
      for (long j = 1; j <= M; ++j) H = 2 * H + schedule_digit(base, BigInt(j));
      Rational x = Rational(H) / Rational(pow2(M));
      long L = static_cast<long>(p.fill.size());
      BigInt R = 0;
      for (long j = M + 1; j <= M + L; ++j) R = 2 * R + fill_digit(p.fill, BigInt(j));
      x += Rational(R) / Rational(pow2(L) - 1) / Rational(pow2(M));
      if (p.offset != 0) {
        // digits shifted left: value is frac(2^offset x)
        BigInt n2 = num(x) * pow2(p.offset, kStreamCap);
        x = Rational(n2 % den(x), den(x));
      }
      return x;
    }
  }
  return std::nullopt;
}

bool is_dyadic_stream(const DigitProgram& p) {
  switch (p.kind) {
    case DigitProgram::Kind::Finite:
      return true;
    case DigitProgram::Kind::Periodic:
      return constant_bits(p.period);
    case DigitProgram::Kind::Schedule:
      return !p.gen && constant_bits(p.fill);
  }
  return false;
}

DigitProgram shift_program(const DigitProgram& p, const BigInt& n) {
  if (n < 0) throw DomainError("shift must be >= 0");
  if (n == 0) return p;
  DigitProgram out = p;
  switch (p.kind) {
    case DigitProgram::Kind::Finite: {
      if (n >= static_cast<long>(p.finite_bits.size()))
        out.finite_bits.clear();
      else
        out.finite_bits = p.finite_bits.substr(static_cast<std::size_t>(n.convert_to<unsigned long>()));
      return out;
    }
    case DigitProgram::Kind::Periodic: {
      BigInt a(static_cast<long>(p.prefix.size()));
      if (n <= a) {
        out.prefix = p.prefix.substr(static_cast<std::size_t>(n.convert_to<unsigned long>()));
        return out;
      }
      BigInt rot = (n - a) % BigInt(static_cast<long>(p.period.size()));
      std::size_t r = static_cast<std::size_t>(rot.convert_to<unsigned long>());
      out.prefix.clear();
      out.period = p.period.substr(r) + p.period.substr(0, r);
      return out;
    }
    case DigitProgram::Kind::Schedule:
      out.offset = p.offset + n;
      return out;
  }
  return out;
}

std::vector<RunSpec> scheduled_runs(const DigitProgram& p, const BigInt& horizon) {
  if (p.kind != DigitProgram::Kind::Schedule) return {};
  return kept_runs(p, horizon);
}

RunLen run_length(const DigitProgram& p, const BigInt& n) {
  if (n < 0) throw DomainError("run_length needs n >= 0");
  const BigInt start = n + 1;
  const int d = digit_at(p, start);

  switch (p.kind) {
    case DigitProgram::Kind::Finite: {
      BigInt N(static_cast<long>(p.finite_bits.size()));
      BigInt q = start + 1;
      while (q <= N && digit_at(p, q) == d) ++q;
      if (q > N && d == 0) return RunLen{true, 0};
      return RunLen{false, q - start};
    }
    case DigitProgram::Kind::Periodic: {
      BigInt a(static_cast<long>(p.prefix.size()));
      BigInt b(static_cast<long>(p.period.size()));
      if (constant_bits(p.period)) {
        int c = p.period[0] - '0';
        if (start > a) return RunLen{true, 0};  // inside the constant tail
        BigInt q = start + 1;
        while (q <= a && digit_at(p, q) == d) ++q;
        if (q > a) {
          if (c == d) return RunLen{true, 0};
          return RunLen{false, q - start};
        }
        return RunLen{false, q - start};
      }
      // non-constant period: a change occurs within prefix + two periods
      BigInt limit = start + a + 2 * b + 2;
      BigInt q = start + 1;
      while (q <= limit && digit_at(p, q) == d) ++q;
      return RunLen{false, q - start};
    }
    case DigitProgram::Kind::Schedule:
      break;
  }

  // schedule: jump region to region instead of stepping through run bodies
  const BigInt s0 = start + p.offset;  // absolute stream position
  DigitProgram base = p;
  base.offset = 0;
  BigInt q = s0;
  const bool fill_const = constant_bits(p.fill);
  while (true) {
    if (schedule_digit(base, q) != d) return RunLen{false, q - s0};
    auto runs = kept_runs(base, q);
    const RunSpec* cur = nullptr;
    if (!runs.empty() && runs.back().n <= q && q <= runs.back().n + runs.back().len + 1)
      cur = &runs.back();
    if (cur) {
      if (q >= cur->n + 1 && q <= cur->n + cur->len) {
        q = cur->n + cur->len + 1;  // hop over the constant body
      } else {
        ++q;  // guard positions are single digits
      }
      continue;
    }
    // filler region
    if (!fill_const) {
      ++q;  // a differing filler digit shows up within one pattern length
      continue;
    }
    // constant filler: hop to the next run's influence, if any
    std::optional<BigInt> next_start;
    if (!base.gen) {
      for (const auto& r : base.runs)
        if (r.n > q) {
          next_start = r.n;
          break;
        }
      if (!next_start) return RunLen{true, 0};  // constant filler tail
    } else {
      BigInt bound = q * 2 + 16;
      while (!next_start) {
        for (const auto& r : kept_runs(base, bound))
          if (r.n > q) {
            next_start = r.n;
            break;
          }
        bound *= 2;  // gen_len caps the search when runs outgrow memory
      }
    }
    q = *next_start > 0 ? *next_start : BigInt(1);
  }
}

NearestDyadic nearest_dyadic(const DigitProgram& p, long n) {
  if (n < 1) throw DomainError("nearest_dyadic needs n >= 1");
  if (n > kStreamCap) throw CapError("stage exceeds stream cap");
  NearestDyadic out;
  BigInt H = 0;
  for (long j = 1; j <= n; ++j) H = 2 * H + digit_at(p, BigInt(j));
  Rational S = Rational(H) / Rational(pow2(n));
  int eps = digit_at(p, BigInt(n + 1));
  out.p_n = eps == 0 ? S : S + pow2_rat(BigInt(-n));

  RunLen rl = run_length(p, BigInt(n));
  if (rl.unbounded) {
    out.dist = Rational(0);
    out.dist_zero = true;
    out.sand_lo = 0;
    out.sand_hi = 0;
    return out;
  }
  out.sand_lo = BigInt(n) + rl.z + 1;
  out.sand_hi = BigInt(n) + rl.z;
  if (auto x = exact_value(p)) {
    Rational dd = *x - out.p_n;
    if (dd < 0) dd = -dd;
    out.dist = dd;
    out.dist_zero = (dd == 0);
  }
  return out;
}

std::pair<Rational, Rational> distance_bracket(const DigitProgram& p, long n, long horizon) {
  if (n < 1 || horizon <= n) throw DomainError("need 1 <= n < horizon");
  if (horizon > kStreamCap) throw CapError("horizon exceeds stream cap");
  int eps = digit_at(p, BigInt(n + 1));
  BigInt V = 0;
  for (long j = n + 1; j <= horizon; ++j) {
    int dj = digit_at(p, BigInt(j));
    V = 2 * V + (eps == 0 ? dj : 1 - dj);
  }
  Rational v = Rational(V) / Rational(pow2(horizon));
  return {v, v + pow2_rat(BigInt(-horizon))};
}

Classification classify_membership(const DigitProgram& p) {
  Classification c;
  if (is_dyadic_stream(p)) {
    c.verdict = Classification::Verdict::InD;
    c.k = 1;
    c.limsup_unbounded = true;
    return c;
  }
  switch (p.kind) {
    case DigitProgram::Kind::Finite:
      break;  // covered above
    case DigitProgram::Kind::Periodic:
      c.verdict = Classification::Verdict::NotInD;
      c.limsup = Rational(0);
      return c;
    case DigitProgram::Kind::Schedule: {
      if (p.gen) {
        // run starts n_i carry z = ceil(2^{n_i}/k): the ratios z/2^{n_i}
        // approach 1/k from above while every other position stays below
        c.verdict = Classification::Verdict::InD;
        c.k = p.gen->k;
        c.limsup = Rational(1, p.gen->k);
        return c;
      }
      if (p.runs.empty()) {
        // pure filler is periodic
        c.verdict = Classification::Verdict::NotInD;
        c.limsup = Rational(0);
        return c;
      }
      c.verdict = Classification::Verdict::Unknown;
      BigInt h = p.runs.back().n + p.runs.back().len + 1 - p.offset;
      if (h < 0) h = 0;
      c.horizon = h;
      return c;
    }
  }
  return c;
}

}  // namespace dobinski
