#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/ifs.hpp"

using namespace cantor;

namespace {

RationalIFS middle_third() { return ifs_from_spec("missing-digit b=3 W=0,2"); }

bool encloses(const Real& x, double v, double tol = 1e-9) {
  RatInterval iv = x.enclose(128);
  Rat rv(v), t(tol);
  return iv.lo <= rv + t && rv - t <= iv.hi;
}

}  // namespace

TEST_CASE("missing-digit shorthand") {
  RationalIFS c = middle_third();
  CHECK(c.dim() == 1);
  CHECK(c.branch_count() == 2);
  CHECK(c.tau() == Rat(1, 3));
  CHECK(c.diameter_ub() == 1);
  REQUIRE(c.missing_digit().has_value());
  CHECK(c.missing_digit()->base == 3);
  REQUIRE(c.missing_digit()->digits.size() == 2);
  CHECK(c.missing_digit()->digits[0] == 0);
  CHECK(c.missing_digit()->digits[1] == 2);
  CHECK(c.attractor_box()[0].lo == 0);
  CHECK(c.attractor_box()[0].hi == 1);
  CHECK(c.unimodular());

  CHECK(encloses(c.dimension_ub(), 0.6309297535714574));
  CHECK(encloses(c.digit_exponent(), 0.6309297535714574));
  CHECK(encloses(c.similarity_exponent(), -1.0));

  CHECK_THROWS_AS(ifs_from_spec("missing-digit b=3 W=0,1,2"), Error);
  CHECK_THROWS_AS(ifs_from_spec("missing-digit b=3 W=0"), Error);
  CHECK_THROWS_AS(ifs_from_spec("missing-digit b=3 W=0,5"), Error);
}

TEST_CASE("general map format") {
  RationalIFS c = parse_ifs_text("dim 1 map A 1 q 3 b 0 s 1 map A 1 q 3 b 2 s 3");
  CHECK(c.dim() == 1);
  CHECK(c.tau() == Rat(1, 3));
  CHECK(!c.missing_digit().has_value());
  RatVec img = c.maps()[1].apply({Rat(1, 2)});
  CHECK(img[0] == Rat(5, 6));

  // contraction is enforced at construction
  CHECK_THROWS_AS(parse_ifs_text("dim 1 map A 3 q 3 b 0 s 1"), Error);
  CHECK_THROWS_AS(parse_ifs_text("dim 1 map A 1 q 3"), Error);

  RationalIFS rot = parse_ifs_text(
      "dim 2 map A 0 1 -1 0 q 3 b 0 0 s 1 map A 0 1 -1 0 q 3 b 2 2 s 3");
  CHECK(rot.dim() == 2);
  CHECK(rot.unimodular());
  CHECK(rot.tau() == Rat(1, 3));
  CHECK(rot.maps()[0].abs_det() == 1);
}

TEST_CASE("prefix evaluation and periodic points") {
  RationalIFS c = middle_third();
  CHECK(eval_prefix(c, {0, 1}, {Rat(0)})[0] == Rat(2, 9));
  CHECK(eval_prefix(c, {1, 1, 1}, {Rat(0)})[0] == Rat(26, 27));
  CHECK(eval_prefix(c, {}, {Rat(1, 2)})[0] == Rat(1, 2));

  Address a01{{}, {0, 1}};
  CHECK(periodic_fixed_point(c, a01)[0] == Rat(1, 4));
  Address a0_1{{0}, {1}};
  CHECK(periodic_fixed_point(c, a0_1)[0] == Rat(1, 3));
  Address all0{{}, {0}};
  CHECK(periodic_fixed_point(c, all0)[0] == 0);
  Address all1{{}, {1}};
  CHECK(periodic_fixed_point(c, all1)[0] == 1);
  CHECK_THROWS_AS(periodic_fixed_point(c, Address{{0}, {}}), Error);

  auto box = address_enclosure(c, a01, 6);
  CHECK(box[0].contains(Rat(1, 4)));
  CHECK(box[0].width() <= Rat(2, 729));

  Real v = address_value(c, a01);
  RatInterval iv = v.enclose_width(Rat(1, 1000000));
  CHECK(iv.contains(Rat(1, 4)));
}

TEST_CASE("address recovery by inverse iteration") {
  RationalIFS c = middle_third();
  for (const Rat& x : {Rat(0), Rat(1), Rat(1, 4), Rat(1, 3), Rat(2, 9), Rat(107, 120)}) {
    auto rec = rational_to_address(c, {x});
    CHECK(periodic_fixed_point(c, rec.address)[0] == x);
  }
  // 1/4 has the purely periodic expansion (02)^inf; recovery finds a
  // preperiod-free description of the same point
  auto quarter = rational_to_address(c, {Rat(1, 4)});
  CHECK(quarter.address.period_length() == 2);

  RationalIFS rot = parse_ifs_text(
      "dim 2 map A 0 1 -1 0 q 3 b 0 0 s 1 map A 0 1 -1 0 q 3 b 2 2 s 3");
  Address spin{{0}, {1, 0}};
  RatVec p = periodic_fixed_point(rot, spin);
  auto back = rational_to_address(rot, p);
  RatVec p2 = periodic_fixed_point(rot, back.address);
  CHECK(p2[0] == p[0]);
  CHECK(p2[1] == p[1]);

  RationalIFS mixed = parse_ifs_text("dim 1 map A 1 q 3 b 0 s 1 map A -1 q 5 b 4 s 5");
  CHECK(mixed.unimodular());
  RatVec fp = periodic_fixed_point(mixed, Address{{}, {1}});
  CHECK(fp[0] == Rat(2, 3));
  auto mrec = rational_to_address(mixed, {Rat(2, 3)});
  CHECK(periodic_fixed_point(mixed, mrec.address)[0] == Rat(2, 3));
}

TEST_CASE("period growth bookkeeping") {
  RationalIFS c = middle_third();
  auto pc = period_length_bound_check(c, Rat(1, 4));
  CHECK(pc.period_length == 2);
  CHECK(pc.preperiod_length == 0);
  CHECK(pc.ratio.lo > Rat(8, 10));
  CHECK(pc.ratio.hi < Rat(9, 10));

  auto p0 = period_length_bound_check(c, Rat(0));
  CHECK(p0.period_length == 1);
  CHECK(p0.preperiod_length == 0);

  Address a01{{}, {0, 1}};
  auto [n, gap] = pigeonhole_witness(a01, 10, 2);
  CHECK(n == 0);
  CHECK(gap == 2);
  CHECK_THROWS_AS(pigeonhole_witness(Address{{0, 1, 2}, {}}, 1, 3), Error);
}
