#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/numtheory.hpp"

using namespace cantor;

TEST_CASE("primality") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(3)));
  CHECK(!is_prime(Int(1)));
  CHECK(!is_prime(Int(0)));
  CHECK(!is_prime(Int(561)));  // Carmichael number
  CHECK(is_prime(Int(104729)));
  Int m61("2305843009213693951");  // 2^61 - 1
  CHECK(is_prime(m61));
  Int beyond("170141183460469231731687303715884105727");  // 2^127 - 1
  CHECK_THROWS_AS(is_prime(beyond), Error);  // outside the deterministic witness range
}

TEST_CASE("factorization") {
  auto f = factor(Int(360));
  REQUIRE(f.size() == 3);
  CHECK(f[Int(2)] == 3);
  CHECK(f[Int(3)] == 2);
  CHECK(f[Int(5)] == 1);

  CHECK(factor(Int(1)).empty());
  auto g = factor(Int(97));
  REQUIRE(g.size() == 1);
  CHECK(g[Int(97)] == 1);

  CHECK_THROWS_AS(factor(Int(0)), Error);
}

TEST_CASE("phi and carmichael from factorizations") {
  CHECK(euler_phi_from_factors(factor(Int(12))) == 4);
  CHECK(euler_phi_from_factors(factor(Int(1))) == 1);
  CHECK(euler_phi_from_factors(factor(Int(97))) == 96);

  CHECK(carmichael_from_factors(factor(Int(8))) == 2);
  CHECK(carmichael_from_factors(factor(Int(12))) == 2);
  CHECK(carmichael_from_factors(factor(Int(561))) == 80);
}

TEST_CASE("multiplicative order") {
  CHECK(mult_order(Int(3), Int(13)) == 3);
  CHECK(mult_order(Int(10), Int(7)) == 6);
  CHECK(mult_order(Int(2), Int(7)) == 3);
  CHECK(mult_order(Int(3), Int(1)) == 1);
  CHECK(mult_order(Int(10), Int(9)) == 1);
  CHECK_THROWS_AS(mult_order(Int(3), Int(9)), Error);  // not coprime
}

TEST_CASE("prime tables") {
  auto ps = primes_up_to(20);
  std::vector<uint64_t> want{2, 3, 5, 7, 11, 13, 17, 19};
  CHECK(ps == want);

  auto sp = safe_primes_up_to(20);
  std::vector<uint64_t> want_sp{5, 7, 11};
  CHECK(sp == want_sp);

  CHECK(primes_up_to(1).empty());
}

TEST_CASE("perfect power decomposition") {
  auto p = primitive_power(Int(64));
  CHECK(p.root == 2);
  CHECK(p.exponent == 6);

  auto q = primitive_power(Int(36));
  CHECK(q.root == 6);
  CHECK(q.exponent == 2);

  auto r = primitive_power(Int(12));
  CHECK(r.root == 12);
  CHECK(r.exponent == 1);

  CHECK(exact_root(Int(27), 3).value() == 3);
  CHECK(!exact_root(Int(28), 3).has_value());
  CHECK(exact_root(Int(1), 5).value() == 1);
}
