#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace dobinski {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Exit-code-aligned error taxonomy (0 ok, 1 usage, 2 domain, 3 cap/precision).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Materialization budget for 2^E style quantities, in bits.
inline constexpr long kDefaultExponentCap = 1L << 20;

inline long checked_long(const BigInt& v, long cap, const char* what) {
  if (v < 0 || v > cap) throw CapError(std::string(what) + ": exponent " + v.str() + " exceeds cap " + std::to_string(cap));
  return static_cast<long>(v);
}

inline BigInt pow2(long e) {
  if (e < 0) throw DomainError("pow2: negative exponent");
  BigInt r = 1;
  r <<= e;
  return r;
}

inline BigInt pow2(const BigInt& e, long cap = kDefaultExponentCap) {
  return pow2(checked_long(e, cap, "pow2"));
}

// Number of bits in |v|; bit_length(0) = 0.  2^(b-1) <= |v| < 2^b.
inline long bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(v.backend().data(), 2));
}

// Largest e with 2^e <= v (v > 0).
inline long floor_log2(const BigInt& v) {
  if (v <= 0) throw DomainError("floor_log2: nonpositive");
  return bit_length(v) - 1;
}

inline bool is_pow2(const BigInt& v) {
  return v > 0 && (v & (v - 1)) == 0;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

inline BigInt num(const Rational& q) { return BigInt(boost::multiprecision::numerator(q)); }
inline BigInt den(const Rational& q) { return BigInt(boost::multiprecision::denominator(q)); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline BigInt floor_rat(const Rational& q) { return floor_div(num(q), den(q)); }
inline BigInt ceil_rat(const Rational& q) { return ceil_div(num(q), den(q)); }

// Exact 2^e for integer e (may be negative), as a rational.
inline Rational pow2_rat(const BigInt& e, long cap = kDefaultExponentCap) {
  if (e >= 0) return Rational(pow2(e, cap));
  return Rational(1, pow2(BigInt(-e), cap));
}

// q as "p" or "p/q" (canonical, no spaces).
inline std::string rat_str(const Rational& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw DomainError("not a rational: " + s);
  }
}

}  // namespace dobinski
