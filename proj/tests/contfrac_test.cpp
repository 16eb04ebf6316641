#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/contfrac.hpp"

using namespace cantor;

TEST_CASE("rational expansions terminate by Euclid") {
  ContinuedFraction cf(Rat(1, 3));
  cf.extend_to(10);
  REQUIRE(cf.convergents().size() == 2);
  CHECK(cf.terminated());
  CHECK(cf.convergents()[0].u == 0);
  CHECK(cf.convergents()[0].v == 1);
  CHECK(cf.convergents()[1].u == 1);
  CHECK(cf.convergents()[1].v == 3);
  CHECK(!cf.extend());

  ContinuedFraction cg(Rat(355, 113));
  cg.extend_to(100);
  CHECK(cg.terminated());
  const auto& back = cg.convergents().back();
  CHECK(back.u == 355);
  CHECK(back.v == 113);
  // every convergent is in lowest terms
  for (const auto& c : cg.convergents()) CHECK(gcd(c.u, c.v) == 1);
}

TEST_CASE("quadratic irrationals") {
  Real s2 = Real::sqrt_of(Rat(2));
  auto run = convergents_of(s2, 4);
  REQUIRE(run.convergents.size() == 4);
  CHECK(!run.terminated);
  Int us[] = {Int(1), Int(3), Int(7), Int(17)};
  Int vs[] = {Int(1), Int(2), Int(5), Int(12)};
  Int as[] = {Int(1), Int(2), Int(2), Int(2)};
  for (int i = 0; i < 4; ++i) {
    CHECK(run.convergents[i].u == us[i]);
    CHECK(run.convergents[i].v == vs[i]);
    CHECK(run.convergents[i].a == as[i]);
  }

  // golden ratio: all quotients 1, Fibonacci convergents
  Real phi = Rat(1, 2) * (Rat(1) + Real::sqrt_of(Rat(5)));
  auto fib = convergents_of(phi, 10);
  Int a = 1, b = 1;
  for (const auto& c : fib.convergents) {
    CHECK(c.a == 1);
    CHECK(c.v == a);
    CHECK(c.u == b);
    Int t = a + b;
    a = b;
    b = t;
  }
}

TEST_CASE("two-sided gap certificates") {
  Real s2 = Real::sqrt_of(Rat(2));
  ContinuedFraction cf(s2);
  auto rep = convergent_sandwich_check(s2, cf, 1);
  CHECK(rep.index == 1);
  CHECK(rep.u == 3);
  CHECK(rep.v == 2);
  CHECK(rep.vnext == 5);
  CHECK(rep.lower == Rat(1, 20));
  CHECK(rep.upper == Rat(1, 10));
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.gap.lo >= rep.lower);
  CHECK(rep.gap.hi <= rep.upper);

  for (size_t t = 0; t < 12; ++t) {
    auto r = convergent_sandwich_check(s2, cf, t);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
  }

  Real third(Rat(1, 3));
  ContinuedFraction cr(Rat(1, 3));
  CHECK_THROWS_AS(convergent_sandwich_check(third, cr, 1), Error);
}

TEST_CASE("mediant enumeration of a denominator-bounded band") {
  auto farey5 = stern_brocot_enumerate(Rat(0), Rat(1), Int(5));
  REQUIRE(farey5.size() == 11);
  CHECK(farey5.front() == 0);
  CHECK(farey5.back() == 1);
  CHECK(farey5[1] == Rat(1, 5));
  CHECK(farey5[5] == Rat(1, 2));
  for (size_t i = 1; i < farey5.size(); ++i) CHECK(farey5[i - 1] < farey5[i]);

  auto band = stern_brocot_enumerate(Rat(33, 50), Rat(67, 100), Int(100));
  CHECK(band.size() == 19);
  CHECK(band.front() == Rat(33, 50));  // endpoints inclusive
  CHECK(band.back() == Rat(67, 100));
  for (const auto& r : band) {
    CHECK(r >= Rat(33, 50));
    CHECK(r <= Rat(67, 100));
    CHECK(r.get_den() <= 100);
  }

  // a singleton hit
  auto one = stern_brocot_enumerate(Rat(1, 2), Rat(1, 2), Int(2));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Rat(1, 2));

  CHECK_THROWS_AS(stern_brocot_enumerate(Rat(0), Rat(1), Int(1000000), 10), Error);
}
