#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/digitset.hpp"

using namespace cantor;

namespace {

MissingDigitSet c32() { return MissingDigitSet(Int(3), {Int(0), Int(2)}); }

std::vector<Int> word(std::initializer_list<long> ds) {
  std::vector<Int> w;
  for (long d : ds) w.emplace_back(d);
  return w;
}

}  // namespace

TEST_CASE("base expansions with located cycles") {
  auto e = expand(Rat(1, 7), Int(10));
  CHECK(e.pre.empty());
  CHECK(digits_to_word(e.period, Int(10)) == "142857");
  CHECK(!e.terminating);

  auto f = expand(Rat(1, 6), Int(10));
  CHECK(digits_to_word(f.pre, Int(10)) == "1");
  CHECK(digits_to_word(f.period, Int(10)) == "6");

  auto g = expand(Rat(1, 4), Int(2));
  CHECK(digits_to_word(g.pre, Int(2)) == "01");
  CHECK(digits_to_word(g.period, Int(2)) == "0");
  CHECK(g.terminating);

  auto z = expand(Rat(0), Int(3));
  CHECK(z.terminating);

  // measured pair always matches the closed form; sweep a block of rationals
  for (long q = 2; q <= 60; ++q) {
    for (long p = 0; p <= q; ++p) {
      Rat x = make_rat(Int(p), Int(q));
      auto m = expand(x, Int(3));
      auto c = expansion_lengths_formula(x, Int(3));
      CHECK(m.pre.size() == c.preperiod);
      CHECK(m.period.size() == c.period);
      CHECK(m.terminating == c.terminating);
    }
  }

  // x == 1 only has the all-(b-1) form, which counts as non-terminating
  auto one = expand(Rat(1), Int(3));
  CHECK(one.period == word({2}));
  CHECK(!one.terminating);
  CHECK(!expansion_lengths_formula(Rat(1), Int(3)).terminating);

  CHECK(parse_digit_word("042", Int(5)) == word({0, 4, 2}));
  CHECK_THROWS_AS(parse_digit_word("09", Int(5)), Error);
  CHECK_THROWS_AS(expand(Rat(3, 2), Int(10)), Error);
}

TEST_CASE("membership certificates") {
  MissingDigitSet c = c32();

  auto q = c.is_member(Rat(1, 4));
  CHECK(q.member);
  REQUIRE(q.witness.has_value());
  for (const Int& d : q.witness->period) CHECK(c.has_digit(d));

  auto t = c.is_member(Rat(1, 3));
  CHECK(t.member);
  CHECK(t.used_dual);  // 1/3 = 0.1 = 0.0222... in base 3

  auto h = c.is_member(Rat(1, 2));
  CHECK(!h.member);
  CHECK(h.first_bad_index.value() == 0);
  CHECK(h.first_bad_digit.value() == 1);

  CHECK(c.is_member(Rat(0)).member);
  CHECK(c.is_member(Rat(1)).member);
  CHECK(c.is_member(Rat(107, 120)).member);  // non-ternary denominator, genuine member
  CHECK_THROWS_AS(c.is_member(Rat(5, 4)), Error);

  // the fast walker agrees with the certified one on a full sweep
  for (int64_t den = 1; den <= 150; ++den) {
    for (int64_t num = 0; num <= den; ++num) {
      bool fast = c.member_fast(num, den);
      bool slow = c.is_member(make_rat(Int(num), Int(den))).member;
      CHECK(fast == slow);
    }
  }

  int64_t bad = -1;
  CHECK(!c.member_fast(1, 2, &bad));
  CHECK(bad == 0);
}

TEST_CASE("first bad digit and escape ratios") {
  MissingDigitSet c = c32();
  CHECK(c.first_bad_digit(Rat(1, 2)).value() == 0);
  CHECK(!c.first_bad_digit(Rat(7, 9)).has_value());  // 0.21 -> alternate 0.20222...
  CHECK(c.first_bad_digit(Rat(7, 9), true).value() == 1);
  CHECK(!c.first_bad_digit(Rat(1, 4)).has_value());

  auto er = c.escape_index_ratio(Rat(1, 2));
  CHECK(er.index == 0);
  CHECK(er.ratio.lo == 0);
  CHECK_THROWS_AS(c.escape_index_ratio(Rat(1, 4)), Error);

  // 0.0000000011 in base 3: first digit outside {0,2} at index 8
  auto deep = c.escape_index_ratio(Rat(4, 59049));
  CHECK(deep.index == 8);
}

TEST_CASE("nearest point in the set") {
  MissingDigitSet c = c32();

  auto n1 = c.nearest_point(Rat(1, 2));
  CHECK(n1.point == Rat(1, 3));  // ties resolve toward the smaller point
  CHECK(n1.distance == Rat(1, 6));
  CHECK(periodic_fixed_point(c.to_ifs(), n1.witness)[0] == Rat(1, 3));

  auto n2 = c.nearest_point(Rat(1, 4));
  CHECK(n2.point == Rat(1, 4));
  CHECK(n2.distance == 0);

  auto n3 = c.nearest_point(Rat(4, 9));
  CHECK(n3.point == Rat(1, 3));
  CHECK(n3.distance == Rat(1, 9));

  // distances are never beaten by a member sweep at small denominators
  for (int64_t den = 1; den <= 80; ++den) {
    for (int64_t num = 0; num <= den; ++num) {
      Rat x = make_rat(Int(num), Int(den));
      Rat d = c.nearest_point(x).distance;
      for (int64_t mq = 1; mq <= 80; ++mq) {
        for (int64_t mp = 0; mp <= mq; ++mp) {
          if (!c.member_fast(mp, mq)) continue;
          CHECK(abs_rat(x - make_rat(Int(mp), Int(mq))) >= d);
        }
      }
    }
  }
}

TEST_CASE("periodic pattern arithmetic") {
  auto pg = gcd_pattern(Int(3), word({0, 2}));
  CHECK(pg.g == 2);
  CHECK(pg.reduced_den == 4);

  auto pg2 = gcd_pattern(Int(3), word({2, 0}));
  CHECK(pg2.g == 2);
  CHECK(pg2.reduced_den == 4);

  CHECK_THROWS_AS(gcd_pattern(Int(3), word({0, 0})), Error);
  CHECK_THROWS_AS(gcd_pattern(Int(3), word({2, 0, 2, 0})), Error);

  auto dd = divisor_digit_sets(Int(3), 4, Int(2));
  CHECK(dd.dprime == 40);  // 1111 in base 3
  CHECK(dd.word == word({1, 1, 1, 1}));
  CHECK(dd.digit_set == word({1}));

  auto d2 = divisor_digit_sets(Int(3), 2, Int(8));
  CHECK(d2.dprime == 1);
  CHECK(d2.word == word({0, 1}));
  CHECK(d2.digit_set == word({0, 1}));

  CHECK_THROWS_AS(divisor_digit_sets(Int(3), 4, Int(7)), Error);
}

TEST_CASE("safe prime scan") {
  auto recs = safe_prime_scan(Int(3), Int(20));
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].p == 5);
  CHECK(recs[0].order == 4);
  CHECK(recs[0].index == 1);
  CHECK(recs[1].p == 7);
  CHECK(recs[1].order == 6);
  CHECK(recs[1].index == 1);
  CHECK(recs[2].p == 11);
  CHECK(recs[2].order == 5);
  CHECK(recs[2].index == 2);

  // primes dividing the base are skipped
  auto r10 = safe_prime_scan(Int(10), Int(12));
  for (const auto& r : r10) CHECK(r.p != 5);

  // index divides p-1 and order * index == p - 1 throughout
  for (const auto& r : safe_prime_scan(Int(3), Int(500))) {
    CHECK(r.order * r.index == r.p - 1);
  }
}

TEST_CASE("set descriptors") {
  MissingDigitSet c = c32();
  CHECK(c.min_point() == 0);
  CHECK(c.max_point() == 1);
  CHECK(c.diameter() == 1);
  CHECK(c.count() == 2);
  CHECK(c.digit_index(Int(2)).value() == 1);
  CHECK(!c.digit_index(Int(1)).has_value());

  MissingDigitSet shifted(Int(5), {Int(1), Int(3)});
  CHECK(shifted.min_point() == Rat(1, 4));
  CHECK(shifted.max_point() == Rat(3, 4));
  CHECK(shifted.diameter() == Rat(1, 2));

  auto back = MissingDigitSet::from_ifs(c.to_ifs());
  CHECK(back.base() == 3);
  CHECK(back.digits() == word({0, 2}));
}
