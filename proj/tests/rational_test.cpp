#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/rational.hpp"

using namespace cantor;

TEST_CASE("construction and parsing") {
  CHECK(make_rat(Int(4), Int(6)) == Rat(2, 3));
  CHECK(make_rat(Int(1), Int(-2)) == Rat(-1, 2));
  CHECK(make_rat(Int(0), Int(-7)) == 0);
  CHECK_THROWS_AS(make_rat(Int(1), Int(0)), Error);

  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-6/8") == Rat(-3, 4));
  CHECK(parse_rat("5") == 5);
  CHECK(parse_rat("-1.25") == Rat(-5, 4));
  CHECK(parse_rat("0.5") == Rat(1, 2));
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("abc"), Error);
  CHECK_THROWS_AS(parse_rat(""), Error);

  CHECK(rat_str(Rat(3, 4)) == "3/4");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK(rat_str(Rat(-1, 2)) == "-1/2");
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(rat_decimal(Rat(1, 3), 4) == "0.3333");
  CHECK(rat_decimal(Rat(2, 3), 2) == "0.67");
  CHECK(rat_decimal(Rat(1, 8), 2) == "0.13");
  CHECK(rat_decimal(Rat(-1, 8), 2) == "-0.13");
  CHECK(rat_decimal(Rat(7, 2), 1) == "3.5");
  CHECK(rat_decimal(Rat(100), 2) == "100.00");
}

TEST_CASE("floor ceil and round") {
  CHECK(floor_rat(Rat(-3, 2)) == -2);
  CHECK(floor_rat(Rat(3, 2)) == 1);
  CHECK(floor_rat(Rat(4)) == 4);
  CHECK(ceil_rat(Rat(-3, 2)) == -1);
  CHECK(ceil_rat(Rat(3, 2)) == 2);
  CHECK(ceil_rat(Rat(4)) == 4);

  // ties go down
  CHECK(round_rat_half_down(Rat(1, 2)) == 0);
  CHECK(round_rat_half_down(Rat(5, 2)) == 2);
  CHECK(round_rat_half_down(Rat(-1, 2)) == -1);
  CHECK(round_rat_half_down(Rat(3, 4)) == 1);
  CHECK(round_rat_half_down(Rat(-3, 4)) == -1);
  CHECK(round_rat_half_down(Rat(7)) == 7);

  CHECK(abs_rat(Rat(-2, 3)) == Rat(2, 3));
  CHECK(abs_rat(Rat(2, 3)) == Rat(2, 3));
}

TEST_CASE("interval arithmetic is outward exact") {
  RatInterval a(Rat(1, 3), Rat(1, 2));
  RatInterval b(Rat(-2), Rat(3));

  CHECK((a + b).lo == Rat(1, 3) - 2);
  CHECK((a + b).hi == Rat(7, 2));
  CHECK((a - b).lo == Rat(1, 3) - 3);
  CHECK((a - b).hi == Rat(5, 2));

  // products take the extreme corner
  RatInterval p = a * b;
  CHECK(p.lo == -1);            // 1/2 * -2
  CHECK(p.hi == Rat(3, 2));     // 1/2 * 3
  RatInterval nn = RatInterval(Rat(-3), Rat(-1)) * RatInterval(Rat(-2), Rat(-1));
  CHECK(nn.lo == 1);
  CHECK(nn.hi == 6);

  CHECK_THROWS_AS(a / b, Error);  // divisor straddles zero
  RatInterval q = a / RatInterval(Rat(2), Rat(4));
  CHECK(q.lo == Rat(1, 12));
  CHECK(q.hi == Rat(1, 4));

  CHECK(RatInterval(Rat(-3), Rat(-1)).abs().lo == 1);
  CHECK(RatInterval(Rat(-3), Rat(-1)).abs().hi == 3);
  CHECK(RatInterval(Rat(-1), Rat(2)).abs().lo == 0);
  CHECK(RatInterval(Rat(-1), Rat(2)).abs().hi == 2);

  CHECK_THROWS_AS(RatInterval(Rat(1), Rat(0)), Error);

  RatInterval i1(Rat(0), Rat(2)), i2(Rat(1), Rat(3));
  CHECK(i1.intersect(i2).lo == 1);
  CHECK(i1.intersect(i2).hi == 2);
  CHECK_THROWS_AS(i1.intersect(RatInterval(Rat(5), Rat(6))), Error);
  CHECK(i1.hull(RatInterval(Rat(5), Rat(6))).hi == 6);

  CHECK(i1.contains(Rat(2)));
  CHECK(!i1.contains(Rat(5, 2)));
  CHECK(RatInterval(Rat(-1), Rat(1)).contains_zero());
  CHECK(!i2.contains_zero());
}

TEST_CASE("interval comparisons decide only by separation") {
  RatInterval a(Rat(1), Rat(2));
  CHECK(interval_cmp(a, Rat(3)) == -1);
  CHECK(interval_cmp(a, Rat(0)) == 1);
  CHECK(!interval_cmp(a, Rat(3, 2)).has_value());
  CHECK(interval_cmp(RatInterval::point(Rat(5)), Rat(5)) == 0);

  CHECK(interval_cmp(a, RatInterval(Rat(3), Rat(4))) == -1);
  CHECK(interval_cmp(RatInterval(Rat(3), Rat(4)), a) == 1);
  CHECK(!interval_cmp(a, RatInterval(Rat(2), Rat(3))).has_value());
}

TEST_CASE("small exact linear algebra") {
  RatMat m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  CHECK(mat_det(m) == -2);

  RatMat id = RatMat::identity(3);
  CHECK(mat_det(id) == 1);

  RatVec x = solve_linear(m, {Rat(5), Rat(11)});
  CHECK(x[0] == 1);
  CHECK(x[1] == 2);

  RatMat sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(0, 1) = 2;
  sing.at(1, 0) = 2;
  sing.at(1, 1) = 4;
  CHECK_THROWS_AS(solve_linear(sing, {Rat(1), Rat(1)}), Error);

  RatMat prod = mat_mul(m, RatMat::identity(2));
  CHECK(prod.at(1, 1) == 4);

  RatVec mv = mat_vec(m, {Rat(1), Rat(1)});
  CHECK(mv[0] == 3);
  CHECK(mv[1] == 7);

  CHECK(sup_norm({Rat(-3), Rat(2)}) == 3);
  CHECK(sup_dist({Rat(1), Rat(0)}, {Rat(0), Rat(2)}) == 2);
}
