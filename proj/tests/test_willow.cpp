#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>

#include "dobinski/willow.hpp"

using namespace dobinski;

namespace {

bool has_check(const ConstraintReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return true;
  return false;
}

// hand-built two-generation schedule small enough for full enumeration
WillowSchedule toy_schedule() {
  WillowSchedule s;
  s.mode = WillowMode::Tamed;
  s.c = 1;
  GenRecord r1;
  r1.k = 1;
  r1.n = BigInt(1);
  r1.M = BigInt(2);
  r1.n_form = "1";
  r1.M_form = "2";
  r1.enumerable = true;
  r1.e = {BigInt(4), BigInt(6)};
  GenRecord r2;
  r2.k = 2;
  r2.n = BigInt(7);
  r2.M = BigInt(3);
  r2.n_form = "7";
  r2.M_form = "3";
  r2.enumerable = true;
  r2.e = {BigInt(16), BigInt(18), BigInt(20)};
  s.gens = {r1, r2};
  return s;
}

}  // namespace

TEST_CASE("branch exponent law") {
  CHECK(willow_exponent(WillowMode::True, 0, 4) == 20);
  CHECK(willow_exponent(WillowMode::True, 0, 5) == 37);
  CHECK(willow_exponent(WillowMode::True, 0, 10) == 1034);
  CHECK(willow_exponent(WillowMode::Tamed, 2, 4) == 12);
  CHECK(willow_exponent(WillowMode::Tamed, 2, 5) == 15);
  CHECK(willow_exponent(WillowMode::Tamed, 1, 7) == 14);
  CHECK_THROWS_AS(willow_exponent(WillowMode::True, 0, 0), DomainError);
  CHECK_THROWS_AS(willow_exponent(WillowMode::Tamed, 0, 4), DomainError);
  CHECK_THROWS_AS(willow_exponent(WillowMode::True, 0, BigInt(1) << 21), CapError);
}

TEST_CASE("true-mode schedule from seed (3,2)") {
  WillowSchedule s = plan_schedule(WillowMode::True, 0, 3, 3, 2);
  REQUIRE(s.gens.size() == 3);
  CHECK(s.gens[0].enumerable);
  REQUIRE(s.gens[0].e.size() == 2);
  CHECK(s.gens[0].e[0] == 20);
  CHECK(s.gens[0].e[1] == 37);

  REQUIRE(s.gens[1].n.has_value());
  REQUIRE(s.gens[1].M.has_value());
  CHECK(*s.gens[1].n == 37);
  CHECK(*s.gens[1].M == pow2(37) + 1);
  CHECK_FALSE(s.gens[1].enumerable);
  CHECK(s.gens[1].M_form == "2^37+1");

  // generation 3 exists only symbolically
  CHECK_FALSE(s.gens[2].n.has_value());
  CHECK_FALSE(s.gens[2].M.has_value());
  CHECK_FALSE(s.gens[2].n_form.empty());
  CHECK_FALSE(s.gens[2].M_form.empty());

  CHECK(schedule_exponent(s, 1, 1) == 20);
  CHECK(schedule_exponent(s, 1, 2) == 37);
  CHECK(schedule_exponent(s, 2, 1) == willow_exponent(WillowMode::True, 0, 38));

  ConstraintReport rep = check_constraints(s);
  CHECK(rep.all_pass);
  for (const char* name : {"A k=1", "B k=1", "C k=1 certificate", "D k=1", "A k=2",
                           "B k=2", "C k=2 certificate", "D k=2"})
    CHECK(has_check(rep, name));
  for (const auto& c : rep.checks) CHECK(c.pass);

  Eq9Report eq9 = check_eq9(s);
  CHECK(eq9.all_pass);
  REQUIRE(eq9.rows.size() == 3);
  CHECK(eq9.rows[0].g_min == 4);
  CHECK(eq9.rows[0].exact);
  for (const auto& row : eq9.rows) CHECK(row.pass);

  auto decay = ratio_decay(s);
  REQUIRE(decay.size() == 2);
  CHECK(decay[0].bound == Rational(1, 5));
  CHECK(decay[0].shrinking);
  CHECK(decay[1].bound == Rational(4) / Rational(BigInt(38) + pow2(38)));
  CHECK(decay[1].shrinking);
}

TEST_CASE("tamed schedule from seed (3,2)") {
  WillowSchedule s = plan_schedule(WillowMode::Tamed, 2, 3, 3, 2);
  REQUIRE(s.gens.size() == 3);
  REQUIRE(s.gens[0].e.size() == 2);
  CHECK(s.gens[0].e[0] == 12);
  CHECK(s.gens[0].e[1] == 15);
  CHECK(*s.gens[1].n == 16384);
  CHECK(*s.gens[1].M == 32769);
  CHECK(s.gens[1].enumerable);
  CHECK(s.gens[1].e.size() == 32769);
  CHECK(willow_exponent(WillowMode::Tamed, 2, *s.gens[1].n + *s.gens[1].M) == 147459);
  CHECK(*s.gens[2].M == pow2(147459) + 1);
  CHECK(*s.gens[2].n == pow2(147458));
  CHECK(s.gens[2].M_form == "2^147459+1");
  CHECK(s.gens[2].n_form == "2^147458");
  CHECK(check_constraints(s).all_pass);
}

TEST_CASE("tamed seed (1,2): schedule, tree, and audit") {
  WillowSchedule s = plan_schedule(WillowMode::Tamed, 2, 3, 1, 2);
  REQUIRE(s.gens.size() == 3);
  REQUIRE(s.gens[0].e.size() == 2);
  CHECK(s.gens[0].e[0] == 6);
  CHECK(s.gens[0].e[1] == 9);
  CHECK(*s.gens[1].n == 256);
  CHECK(*s.gens[1].M == 513);
  CHECK(s.gens[1].enumerable);
  REQUIRE(s.gens[1].e.size() == 513);
  CHECK(s.gens[1].e[0] == 771);
  CHECK(s.gens[1].e[512] == 2307);
  CHECK(*s.gens[2].M == pow2(2307) + 1);
  CHECK(*s.gens[2].n == pow2(2306));

  ConstraintReport rep = check_constraints(s);
  CHECK(rep.all_pass);
  CHECK(has_check(rep, "C k=2 probes"));
  CHECK(check_eq9(s).all_pass);

  MeasureTree tree = build_tree(s);
  REQUIRE(tree.gen1.size() == 8);
  REQUIRE(tree.agg.size() == 8 * 513);
  for (const auto& p : tree.gen1) CHECK(p.weight == Rational(1, 8));

  // exact conservation: families of each parent return its full weight
  for (std::size_t p = 0; p < 8; ++p) {
    Rational sum = 0;
    for (std::size_t i = p * 513; i < (p + 1) * 513; ++i)
      sum += Rational(tree.agg[i].count) * tree.agg[i].weight;
    CHECK(sum == tree.gen1[p].weight);
  }

  // leaf counts per family: grid 2^{-(256+j)} inside a parent of length 2^{-6}
  CHECK(tree.agg[0].count == pow2(257 - 6));
  CHECK(tree.agg[1].count == pow2(258 - 6 - 1));

  CHECK(tree_measure(tree, Rational(0), Rational(1)) == 1);
  CHECK(tree_measure(tree, Rational(0), pow2_rat(-BigInt(6))) == Rational(1, 8));

  // probe growth keeps the max ratio stable at a fixed seed
  Gauge h = Gauge::logpower(Rational(1));
  AuditResult a1 = frostman_audit(tree, h, 1000, 42);
  AuditResult a2 = frostman_audit(tree, h, 10000, 42);
  CHECK(a2.max_ratio >= a1.max_ratio);
  CHECK(a2.max_ratio - a1.max_ratio < 0.05 * a1.max_ratio);
  // the deterministic node branch attains (1/8) / h(2^{-9}) = 9 ln2 / 8
  CHECK(std::fabs(a1.node_max_ratio - 9.0 * std::log(2.0) / 8.0) < 1e-9);
}

TEST_CASE("toy schedule: tree equals brute-force enumeration") {
  WillowSchedule s = toy_schedule();
  MeasureTree tree = build_tree(s);
  REQUIRE(tree.gen1.size() == 8);
  REQUIRE(tree.agg.size() == 8 * 3);

  // enumerate candidate leaves directly from the grid definition
  long total_leaves = 0;
  Rational total_mass = 0;
  for (const auto& nd : tree.agg) {
    const auto& par = tree.gen1[nd.parent];
    long g = nd.grid_g.convert_to<long>();
    Rational len = pow2_rat(-nd.e);
    Rational plen = pow2_rat(-par.e);
    BigInt denom = pow2(g);
    BigInt cnt = 0;
    for (BigInt l = 0; l < denom; ++l) {
      if (nd.j >= 2 && l % 2 == 0) continue;
      Rational x(l, denom);
      if (x >= par.left && x + len <= par.left + plen) ++cnt;
    }
    CHECK(cnt == nd.count);
    total_leaves += cnt.convert_to<long>();
    total_mass += Rational(cnt) * nd.weight;
  }
  CHECK(total_leaves == 320);
  CHECK(total_mass == 1);

  for (std::size_t p = 0; p < 8; ++p) {
    const auto& par = tree.gen1[p];
    BigInt c1 = tree.agg[p * 3].count;
    BigInt c2 = tree.agg[p * 3 + 1].count;
    BigInt c3 = tree.agg[p * 3 + 2].count;
    if (par.e == 4) {
      CHECK(c1 == 16);
      CHECK(c2 == 16);
      CHECK(c3 == 32);
    } else {
      CHECK(c1 == 4);
      CHECK(c2 == 4);
      CHECK(c3 == 8);
    }
  }

  // exact measure of dyadic boxes vs weight-times-overlap enumeration
  for (long t = 0; t <= 12; ++t) {
    for (BigInt r = 0; r < pow2(t); r += (t < 4 ? 1 : 37)) {
      Rational a(r, pow2(t)), b(r + 1, pow2(t));
      Rational oracle = 0;
      for (const auto& nd : tree.agg) {
        const auto& par = tree.gen1[nd.parent];
        long g = nd.grid_g.convert_to<long>();
        Rational len = pow2_rat(-nd.e);
        Rational plen = pow2_rat(-par.e);
        BigInt denom = pow2(g);
        for (BigInt l = 0; l < denom; ++l) {
          if (nd.j >= 2 && l % 2 == 0) continue;
          Rational x(l, denom);
          if (!(x >= par.left && x + len <= par.left + plen)) continue;
          Rational lo = a > x ? a : x;
          Rational hi = b < x + len ? b : x + len;
          if (hi > lo) oracle += nd.weight * (hi - lo) / len;
        }
      }
      CHECK(tree_measure(tree, a, b) == oracle);
    }
  }

  // the toy spacing is deliberately too tight for constraint (A) at k=2
  ConstraintReport rep = check_constraints(s);
  bool a2_failed = false;
  for (const auto& c : rep.checks)
    if (c.name == "A k=2") a2_failed = !c.pass;
  CHECK(a2_failed);
  CHECK_FALSE(rep.all_pass);
}

TEST_CASE("audit detail on the small tamed tree") {
  WillowSchedule s = plan_schedule(WillowMode::Tamed, 2, 2, 1, 2);
  MeasureTree tree = build_tree(s);
  AuditResult a = frostman_audit(tree, Gauge::logpower(Rational(1)), 100, 7);
  CHECK(a.gauge == "logpower:1");
  CHECK(a.probes == 100);
  CHECK(a.seed == 7);
  CHECK(a.max_ratio == a.node_max_ratio);
  CHECK(std::fabs(a.max_ratio - 0.7797905781299385) < 1e-12);
  CHECK(a.argmax_t == 9);
  CHECK(a.node_ratios.size() == 8 + 8 * 513);

  // same seed reproduces the result bit for bit
  AuditResult b = frostman_audit(tree, Gauge::logpower(Rational(1)), 100, 7);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.argmax_t == b.argmax_t);
  CHECK(a.argmax_r == b.argmax_r);

  AuditResult ap = frostman_audit(tree, Gauge::power(Rational(1, 2)), 100, 7);
  CHECK(ap.max_ratio > 0);
}

TEST_CASE("planner and tree input validation") {
  CHECK_THROWS_AS(plan_schedule(WillowMode::Tamed, 2, 0, 3, 2), DomainError);
  CHECK_THROWS_AS(plan_schedule(WillowMode::Tamed, 2, 3, 0, 2), DomainError);
  CHECK_THROWS_AS(plan_schedule(WillowMode::Tamed, 2, 3, 3, 1), DomainError);
  CHECK_THROWS_AS(plan_schedule(WillowMode::Tamed, 0, 3, 3, 2), DomainError);

  // true-mode generation 2 has 2^37+1 families: far past the node cap
  WillowSchedule big = plan_schedule(WillowMode::True, 0, 2, 3, 2);
  CHECK_THROWS_AS(build_tree(big), CapError);

  WillowSchedule one = plan_schedule(WillowMode::Tamed, 2, 1, 1, 2);
  CHECK_THROWS_AS(build_tree(one), DomainError);

  WillowSchedule s = plan_schedule(WillowMode::True, 0, 3, 3, 2);
  CHECK_THROWS_AS(schedule_exponent(s, 0, 1), DomainError);
  CHECK_THROWS_AS(schedule_exponent(s, 3, 1), DomainError);
  CHECK_THROWS_AS(schedule_exponent(s, 1, 0), DomainError);
  CHECK_THROWS_AS(schedule_exponent(s, 1, 3), DomainError);

  // a tighter enumeration limit keeps generation 2 symbolic but materialized
  WillowSchedule lim = plan_schedule(WillowMode::Tamed, 2, 3, 1, 2, kDefaultExponentCap, 100);
  CHECK(*lim.gens[1].n == 256);
  CHECK(*lim.gens[1].M == 513);
  CHECK_FALSE(lim.gens[1].enumerable);
  CHECK(lim.gens[1].e.empty());
}
