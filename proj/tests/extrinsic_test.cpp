#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/extrinsic.hpp"

using namespace cantor;

namespace {

RationalIFS cantor_third() { return ifs_from_spec("missing-digit b=3 W=0,2"); }

Rat rat(long n, long d) { return make_rat(Int(n), Int(d)); }

const std::string kMixed =
    "dim 1\n"
    "map\nA 1\nq 3\nb 0\ns 1\n"
    "map\nA -1\nq 5\nb 4\ns 5\n";

}  // namespace

TEST_CASE("schedule values and validation") {
  PhiSchedule cl = PhiSchedule::inverse_ceil_log2();
  CHECK(cl.value_at(Rat(256)) == rat(1, 8));
  CHECK(cl.value_at(Rat(257)) == rat(1, 9));
  CHECK(cl.value_at(rat(4782969, 2)) == rat(1, 22));
  CHECK_THROWS_AS(cl.value_at(Rat(1)), Error);

  PhiSchedule pw = PhiSchedule::inverse_power(rat(1, 2), Rat(2));
  CHECK(pw.value_at(Rat(10)) == rat(1, 200));
  CHECK_THROWS_AS(PhiSchedule::inverse_power(Rat(0), Rat(2)), Error);
  CHECK_THROWS_AS(PhiSchedule::inverse_power(Rat(1), Rat(-1)), Error);

  PhiSchedule tb = PhiSchedule::table({{Rat(10), rat(1, 4)}, {Rat(100), rat(1, 8)}});
  CHECK(tb.value_at(Rat(50)) == rat(1, 4));
  CHECK(tb.value_at(Rat(100)) == rat(1, 8));
  CHECK(tb.value_at(Rat(100000)) == rat(1, 8));
  CHECK_THROWS_AS(tb.value_at(Rat(9)), Error);
  CHECK_THROWS_AS(PhiSchedule::table({}), Error);
  CHECK_THROWS_AS(PhiSchedule::table({{Rat(10), rat(1, 4)}, {Rat(5), rat(1, 8)}}), Error);
  CHECK_THROWS_AS(PhiSchedule::table({{Rat(10), rat(1, 4)}, {Rat(20), rat(1, 2)}}), Error);
}

TEST_CASE("schedule certified comparisons in scaled form") {
  PhiSchedule cl = PhiSchedule::inverse_ceil_log2();
  // Phi(2^30) = 1/30 < 1/18, Phi(2^15) = 1/15 >= 1/18
  CHECK(cl.below_inverse(ScaledPow{Rat(1), Int(2), Int(30)}, ScaledPow{Rat(18), Int(2), Int(0)}));
  CHECK_FALSE(
      cl.below_inverse(ScaledPow{Rat(1), Int(2), Int(15)}, ScaledPow{Rat(18), Int(2), Int(0)}));

  PhiSchedule tb = PhiSchedule::table({{Rat(10), rat(1, 4)}, {Rat(100), rat(1, 8)}});
  CHECK(tb.below_inverse(ScaledPow{Rat(50), Int(2), Int(0)}, ScaledPow{Rat(3), Int(2), Int(0)}));
  CHECK_FALSE(
      tb.below_inverse(ScaledPow{Rat(50), Int(2), Int(0)}, ScaledPow{Rat(5), Int(2), Int(0)}));
}

TEST_CASE("staircase over the middle-third set, marker above filler") {
  RationalIFS ifs = cantor_third();
  LiouvilleBuild b =
      liouville_build(ifs, 0, 1, PhiSchedule::inverse_ceil_log2(), 2);
  REQUIRE(b.digit_system);
  REQUIRE(b.a.size() == 3);
  CHECK(b.a[0] == 1);
  CHECK(b.a[1] == 17);
  CHECK(b.a[2] == 536870929);  // 17 + 2^29
  CHECK(b.monotone_ok);

  const LiouvilleStage& s1 = b.stages[0];
  CHECK(s1.q_k.materialize() == Rat(3));
  REQUIRE(s1.theta.has_value());
  CHECK(*s1.theta == rat(2, 3));
  REQUIRE(s1.big_q_value.has_value());
  CHECK(*s1.big_q_value == rat(4782969, 2));  // 3^14 / 2
  REQUIRE(s1.phi_value.has_value());
  CHECK(*s1.phi_value == rat(1, 22));
  REQUIRE(s1.margin.has_value());
  CHECK(*s1.margin == rat(1, 52612659));
  CHECK(s1.legendre_ok);
  CHECK(s1.gap_ok);
  CHECK(s1.contraction_ok);
  REQUIRE(s1.err_low.has_value());

  const LiouvilleStage& s2 = b.stages[1];
  REQUIRE(s2.theta.has_value());
  CHECK(*s2.theta == rat(86093444, 129140163));  // den 3^17, reduced
  CHECK(s2.q_k.materialize() == Rat(129140163));
  CHECK_FALSE(s2.big_q_value.has_value());  // ~8.5e8 bits, not materialized
  CHECK(s2.legendre_ok);
  CHECK(s2.gap_ok);

  Real xi = liouville_value(b);
  RatInterval low = xi.enclose(3);
  CHECK(low.lo == rat(2, 3));  // first stage point carries coarse precisions
  RatInterval fine = xi.enclose(64);
  CHECK(fine.lo == *s2.theta);
  CHECK(fine.width() <= make_rat(Int(1), Int(1) << 64));
}

TEST_CASE("staircase with the marker below the filler") {
  RationalIFS ifs = cantor_third();
  LiouvilleBuild b =
      liouville_build(ifs, 1, 0, PhiSchedule::inverse_ceil_log2(), 1);
  REQUIRE(b.digit_system);
  CHECK(b.a[1] == 17);  // symmetric conditions, same endpoint
  const LiouvilleStage& s1 = b.stages[0];
  REQUIRE(s1.theta.has_value());
  CHECK(*s1.theta == rat(1, 3));  // 1 - 2/3, denominator cq * b = 3
  CHECK(s1.q_k.materialize() == Rat(3));

  Real xi = liouville_value(b);
  RatInterval v = xi.enclose(10);
  CHECK(v.hi == rat(1, 3));  // limit approaches from below
  CHECK(v.lo < rat(1, 3));
}

TEST_CASE("staircase input validation") {
  RationalIFS ifs = cantor_third();
  PhiSchedule cl = PhiSchedule::inverse_ceil_log2();
  CHECK_THROWS_AS(liouville_build(ifs, 0, 1, cl, 0), Error);
  CHECK_THROWS_AS(liouville_build(ifs, 0, 0, cl, 1), Error);
  CHECK_THROWS_AS(liouville_build(ifs, 0, 7, cl, 1), Error);
  CHECK_THROWS_AS(liouville_build(ifs, 0, 1, cl, 1, Int(0)), Error);
  // digit difference 2 shares a factor with base 4
  RationalIFS even = ifs_from_spec("missing-digit b=4 W=0,2");
  CHECK_THROWS_AS(liouville_build(even, 0, 1, cl, 1), Error);
}

TEST_CASE("witness scan of the first stage is exhaustive and clean") {
  RationalIFS ifs = cantor_third();
  LiouvilleBuild b =
      liouville_build(ifs, 0, 1, PhiSchedule::inverse_ceil_log2(), 2);
  WitnessScan ws = liouville_witness_check(b, 1, 1);
  CHECK(ws.passed);
  CHECK_FALSE(ws.violation.has_value());
  CHECK(ws.q_limit == 2391484);
  CHECK(ws.margin == rat(1, 52612659));
  // the window clears 1/(3q) of 2/3 for every admissible q, so the stage
  // point itself is the only fraction the enumeration can produce
  CHECK(ws.members == 1);
  CHECK(ws.candidates == 1);

  // deeper stages are out of scan range by design
  CHECK_THROWS_AS(liouville_witness_check(b, 2, 1), Error);
  CHECK_THROWS_AS(liouville_witness_check(b, 3, 1), Error);
}

TEST_CASE("staircase over a system without digit structure") {
  RationalIFS ifs = parse_ifs_text(kMixed);
  REQUIRE_FALSE(ifs.missing_digit().has_value());
  LiouvilleBuild b =
      liouville_build(ifs, 0, 1, PhiSchedule::inverse_power(Rat(1), Rat(2)), 2);
  CHECK_FALSE(b.digit_system);
  REQUIRE(b.stages.size() == 2);
  const LiouvilleStage& s1 = b.stages[0];
  REQUIRE(s1.theta.has_value());
  CHECK(*s1.theta == rat(4, 5));  // marker image of the filler fixed point
  CHECK(s1.q_k.materialize() == Rat(5));
  CHECK(s1.legendre_ok);
  CHECK(s1.gap_ok);
  REQUIRE(s1.big_q_value.has_value());
  REQUIRE(s1.margin.has_value());
  CHECK_FALSE(s1.err_low.has_value());  // one-sided bounds only
  // denominators grow across stages
  CHECK(b.stages[1].q_k.materialize() > Rat(5));

  Real xi = liouville_value(b);
  RatInterval v = xi.enclose(10);
  RatInterval w = xi.enclose(20);
  CHECK(v.width() <= rat(1, 1024));
  CHECK(v.lo <= w.hi);  // refinements stay consistent
  CHECK(w.lo <= v.hi);

  CHECK_THROWS_AS(liouville_witness_check(b, 1, 1), Error);
}

TEST_CASE("outside approximation, progression branch") {
  MissingDigitSet set(Int(3), {Int(0), Int(2)});
  ExtrinsicResult r = uniform_extrinsic(set, Real(Rat(0)), Rat(3));
  CHECK(r.branch == "progression");
  CHECK(r.approximant == rat(4, 3));
  CHECK(r.steps == 5);  // 0, 1/3, 2/3, 1 are all members
  CHECK(r.error.is_point());
  CHECK(r.error_upper == rat(4, 3));
  CHECK(r.realized_k == Rat(4));

  // a target inside the set: nearby grid points leave it quickly
  ExtrinsicResult r2 = uniform_extrinsic(set, Real(rat(1, 4)), Rat(10));
  CHECK(r2.approximant.get_den() <= 10);
  CHECK_FALSE(set.is_member(r2.approximant).member);
  CHECK(r2.error_upper > 0);

  CHECK_THROWS_AS(uniform_extrinsic(set, Real(Rat(0)), rat(1, 2)), Error);
  CHECK_THROWS_AS(uniform_extrinsic(set, Real(Rat(0)), Rat(1), "auto", 0), Error);
  CHECK_THROWS_AS(uniform_extrinsic(set, Real(Rat(0)), Rat(3), "sideways"), Error);
}

TEST_CASE("outside approximation, prime branch") {
  // two digits out of five: digit exponent below 1/2, prime route opens
  MissingDigitSet set(Int(5), {Int(0), Int(4)});
  Real target = Real::sqrt_of(Rat(2)) - Real(Rat(1));
  ExtrinsicResult r = uniform_extrinsic(set, target, Rat(10));
  CHECK(r.branch == "prime");
  CHECK(r.approximant == rat(2, 5));
  CHECK(r.steps == 1);
  CHECK_FALSE(set.is_member(r.approximant).member);
  CHECK(r.error_upper > 0);
  CHECK(r.realized_k > 0);

  // forcing the progression branch still works on the same input
  ExtrinsicResult rp = uniform_extrinsic(set, target, Rat(10), "progression");
  CHECK(rp.branch == "progression");
  CHECK_FALSE(set.is_member(rp.approximant).member);
}

TEST_CASE("distance floor audit") {
  MissingDigitSet set(Int(3), {Int(0), Int(2)});

  LowerBoundCheck mid = extrinsic_lower_bound_check(set, rat(1, 2));
  CHECK(mid.distance == rat(1, 6));
  CHECK_FALSE(mid.pretest);  // 2*2*(1/6) < 1, the full comparison runs
  CHECK(mid.ok);
  CHECK(mid.bound.hi < rat(1, 6));
  CHECK(mid.bound.lo > 0);

  LowerBoundCheck nine = extrinsic_lower_bound_check(set, rat(5, 9));
  CHECK(nine.distance == rat(1, 9));
  CHECK(nine.pretest);  // 2*9*(1/9) = 2 >= 1
  CHECK(nine.ok);

  LowerBoundCheck far = extrinsic_lower_bound_check(set, rat(3, 2));
  CHECK(far.distance == rat(1, 2));
  CHECK(far.ok);

  CHECK_THROWS_AS(extrinsic_lower_bound_check(set, rat(1, 3)), Error);
}
