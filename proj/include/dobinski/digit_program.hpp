#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dobinski/bigint.hpp"

namespace dobinski {

// One scheduled run: digits `digit` at positions n+1..n+len, with guard digits
// 1-digit at position n (skipped when n == 0) and n+len+1.
struct RunSpec {
  BigInt n;
  BigInt len;
  int digit;
};

// Closed-form run generator, L_i = ceil(2^{n_i}/k). geometric: n_{i+1} = ratio*n_i;
// linear: n_{i+1} = n_i + step. Candidates whose run would start at or before the
// previous kept run's trailing guard are dropped.
struct GenSpec {
  enum class Kind { Geometric, Linear };
  Kind kind;
  long n1;
  long ratio_or_step;
  long k;
  int digit;
};

struct DigitProgram {
  enum class Kind { Finite, Periodic, Schedule };
  Kind kind = Kind::Finite;

  std::string finite_bits;

  std::string prefix;
  std::string period;

  std::string fill;
  std::vector<RunSpec> runs;
  std::optional<GenSpec> gen;
  BigInt offset{0};  // shift amount applied to schedule programs

  bool is_schedule() const { return kind == Kind::Schedule; }
};

DigitProgram parse_program(const std::string& text);
std::string program_to_string(const DigitProgram& p);

// 1-indexed digit of the expansion.
int digit_at(const DigitProgram& p, const BigInt& pos);
std::string digits(const DigitProgram& p, long N);

// Exact value when the stream is finitely described as a rational:
// Finite, Periodic, or a Schedule with a finite run list.
std::optional<Rational> exact_value(const DigitProgram& p);

// True when the digit stream is eventually constant (dyadic value).
bool is_dyadic_stream(const DigitProgram& p);

DigitProgram shift_program(const DigitProgram& p, const BigInt& n);

struct RunLen {
  bool unbounded = false;
  BigInt z{0};
};
// z_n: length of the maximal constant run starting at position n+1.
RunLen run_length(const DigitProgram& p, const BigInt& n);

// Kept runs of a generated schedule with n_i <= horizon (explicit runs are
// returned as-is, filtered to the horizon).
std::vector<RunSpec> scheduled_runs(const DigitProgram& p, const BigInt& horizon);

struct NearestDyadic {
  Rational p_n;                      // P_n
  std::optional<Rational> dist;     // exact |x - P_n| when the value is rational
  bool dist_zero = false;           // constant tail from n+1 on
  // Otherwise dist lies in [2^{-sand_lo}, 2^{-sand_hi}] with
  // sand_lo = n+z_n+1, sand_hi = n+z_n.
  BigInt sand_lo{0};
  BigInt sand_hi{0};
};
NearestDyadic nearest_dyadic(const DigitProgram& p, long n);

// Dyadic bracket [v, v+2^{-horizon}] of |x - P_n| from digits n+1..horizon.
std::pair<Rational, Rational> distance_bracket(const DigitProgram& p, long n, long horizon);

struct Classification {
  enum class Verdict { InD, NotInD, Unknown };
  Verdict verdict = Verdict::Unknown;
  long k = 0;                          // InD: smallest certified k
  bool limsup_unbounded = false;       // dyadic streams
  std::optional<Rational> limsup;      // exact when known
  BigInt horizon{0};                   // Unknown: inspected horizon
};
Classification classify_membership(const DigitProgram& p);

}  // namespace dobinski
