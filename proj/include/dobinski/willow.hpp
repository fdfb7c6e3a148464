#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dobinski/gauge.hpp"
#include "dobinski/interval.hpp"

namespace dobinski {

enum class WillowMode { True, Tamed };

// Exponent law per branch family. g = n_k + j.
// True: e = g + 2^g. Tamed(c): e = (1+c) g.
BigInt willow_exponent(WillowMode mode, long c, const BigInt& g,
                       long cap = kDefaultExponentCap);

struct GenRecord {
  long k = 1;
  std::optional<BigInt> n;  // materialized when it fits
  std::optional<BigInt> M;
  std::string n_form;  // always set, e.g. "2^147458"
  std::string M_form;
  bool enumerable = false;   // e(k,j) listed for every j
  std::vector<BigInt> e;     // filled iff enumerable
};

struct WillowSchedule {
  WillowMode mode = WillowMode::Tamed;
  long c = 2;  // tamed slack
  std::vector<GenRecord> gens;
};

// Generation planner. Seeds n_1, M_1; then M_k = 2^{e(k-1, M_{k-1})} + 1 and
// n_k the least value with n_k + M_k < e(k,1) and n_k > n_{k-1} + M_{k-1}.
WillowSchedule plan_schedule(WillowMode mode, long c, long K, long n1, long M1,
                             long cap = kDefaultExponentCap,
                             long enum_limit = 1L << 16);

// e(k, j) on demand; requires n_k materialized.
BigInt schedule_exponent(const WillowSchedule& s, long k, const BigInt& j,
                         long cap = kDefaultExponentCap);

struct ConstraintCheck {
  std::string name;
  bool pass = false;
  bool exact = false;  // exact arithmetic vs closed-form certificate
  std::string detail;
};
struct ConstraintReport {
  std::vector<ConstraintCheck> checks;
  bool all_pass = false;
};
// Separation M_k > 2^{e(k-1,M_{k-1})}, per-parent count ratios, the
// grid-interval bound, and the gap condition n_k + M_k < e(k,1).
ConstraintReport check_constraints(const WillowSchedule& s,
                                   long cap = kDefaultExponentCap,
                                   std::uint64_t probe_seed = 1,
                                   long probes = 64);

// Two-level mass distribution for a K=2 schedule whose first generation is
// enumerable: generation 1 fully listed, generation 2 stored per
// (parent, family) as count + uniform leaf weight.
struct Gen1Node {
  long j = 1;
  Rational left{0};
  BigInt e;
  Rational weight{0};
};
struct AggNode {
  std::size_t parent = 0;  // index into gen1
  BigInt j;                // family index within generation 2
  BigInt grid_g;           // leaves sit on grid 2^{-g}
  BigInt e;                // leaf length 2^{-e}
  BigInt count;            // leaves inside the parent
  Rational weight{0};      // per leaf
};
struct MeasureTree {
  WillowSchedule schedule;
  std::vector<Gen1Node> gen1;
  std::vector<AggNode> agg;
};
MeasureTree build_tree(const WillowSchedule& s, long cap = kDefaultExponentCap);

// Exact mu(I) for dyadic I = [r 2^{-t}, (r+1) 2^{-t}].
Rational tree_measure(const MeasureTree& tree, const Rational& a, const Rational& b,
                      long cap = kDefaultExponentCap);

struct AuditProbe {
  BigInt t;
  BigInt r;
  Rational mu;
  double ratio = 0.0;  // mu(I) / h(|I|)
};
struct AuditResult {
  std::string gauge;
  double max_ratio = 0.0;
  BigInt argmax_t;
  BigInt argmax_r;
  long probes = 0;
  std::uint64_t seed = 0;
  std::vector<AuditProbe> rows;     // kept small; full set summarized
  std::vector<double> node_ratios;  // per-node deterministic branch
  double node_max_ratio = 0.0;
};
// Random dyadic probes I = [r 2^{-t}, (r+1) 2^{-t}], t uniform on
// [0, e(K, M_K)], r uniform t-bit. t = 0 contributes ratio 0 by the
// h(1) = +infinity convention. Also evaluates every tree node's own
// interval as a deterministic branch.
AuditResult frostman_audit(const MeasureTree& tree, const Gauge& h, long probes,
                           std::uint64_t seed, long prec = 128);

struct Eq9Row {
  long k = 1;
  BigInt g_min;
  bool pass = false;
  bool exact = false;
};
struct Eq9Report {
  std::vector<Eq9Row> rows;
  bool all_pass = false;
};
// 2^g >= (ln 2 / 2)(g + 2^g) for every branch exponent in the schedule,
// checked exactly for small g and by a monotone bound past g = 6.
Eq9Report check_eq9(const WillowSchedule& s);

struct RatioDecayRow {
  long k = 1;
  Rational bound;  // r_k <= bound * r_{k-1}
  bool shrinking = false;
};
// Certified non-increase of the per-generation audit ratio after
// generation 1: r_k <= 4 r_{k-1} / e(k-1, 1).
std::vector<RatioDecayRow> ratio_decay(const WillowSchedule& s,
                                       long cap = kDefaultExponentCap);

}  // namespace dobinski
