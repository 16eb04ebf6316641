#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cantor/exponents.hpp"

#include <sstream>

using namespace cantor;

namespace {

Real sqrt2m1() {
  return Real::sqrt_of(Rat(2)) - Real(Rat(1));
}

Real golden() {
  return Rat(1, 2) * (Rat(1) + Real::sqrt_of(Rat(5)));
}

// sum of 2 * 3^{-n!}: the classic staircase target. Partial sums until the
// tail drops under the requested width.
Real lacunary3() {
  return Real::from_fn([](long prec) -> RatInterval {
    Rat s(0);
    Int f(1);
    for (long n = 1;; ++n) {
      f *= n;
      Int den;
      mpz_ui_pow_ui(den.get_mpz_t(), 3, f.get_ui());
      s += Rat(2) / Rat(den);
      // tail <= 3 * 3^{-(n+1)!}; stop once that is below 2^-prec
      Int nf(f * (n + 1));
      if (nf > 64 && nf * 19 > Int(prec) * 12 + 64) {  // n!*log2(3) > prec margin
        Int tden;
        if (nf > (1 << 26)) {
          // far beyond any requested precision; treat the tail as one ulp
          return RatInterval(s, s + Rat(1, Int(1) << 60));
        }
        mpz_ui_pow_ui(tden.get_mpz_t(), 3, nf.get_ui());
        return RatInterval(s, s + Rat(3) / Rat(tden));
      }
    }
  });
}

bool contains_approx(const RatInterval& iv, double x, double slack) {
  double lo = mpq_get_d(iv.lo.get_mpq_t()), hi = mpq_get_d(iv.hi.get_mpq_t());
  return lo - slack <= x && x <= hi + slack;
}

const ExponentEstimate& pick(const ExponentScan& s, ExponentKind k) {
  for (const auto& e : s.estimates)
    if (e.kind == k) return e;
  REQUIRE(false);
  return s.estimates.front();
}

}  // namespace

TEST_CASE("capture-scale function on landmark vectors") {
  Real r2 = Real::sqrt_of(Rat(2));

  // max(log 1, log(sqrt2 - 1)) = 0, first branch dominates exactly
  RatInterval a = L_function(Int(1), Int(1), r2, Rat(0));
  CHECK(a.lo == 0);
  CHECK(a.hi == 0);

  RatInterval b = L_function(Int(1), Int(0), Real(Rat(1, 3)), Rat(0));
  CHECK(b.lo == 0);
  CHECK(b.hi == 0);

  // max(log 3 - 1, log|3 sqrt2 - 4| + 1) = log 3 - 1 ~ 0.0986
  RatInterval c = L_function(Int(3), Int(4), r2, Rat(1));
  CHECK(contains_approx(c, std::log(3.0) - 1.0, 1e-9));
  CHECK(c.width() <= Rat(1, Int(1) << 40));

  // vertical direction: log|n| + t
  RatInterval d = L_function(Int(0), Int(5), r2, Rat(2));
  CHECK(contains_approx(d, std::log(5.0) + 2.0, 1e-9));

  CHECK_THROWS_AS(L_function(Int(0), Int(0), r2, Rat(0)), Error);
  CHECK_THROWS_AS(L_function(Int(3), Int(1), Real(Rat(1, 3)), Rat(5)), Error);
}

TEST_CASE("piecewise slopes are +-1 between kinks") {
  Real r2 = Real::sqrt_of(Rat(2));
  // (1,1): the norm branch log(sqrt2-1)+t dominates for t >= 0.8814...
  RatInterval l1 = L_function(Int(1), Int(1), r2, Rat(1));
  RatInterval l15 = L_function(Int(1), Int(1), r2, Rat(3, 2));
  RatInterval l2 = L_function(Int(1), Int(1), r2, Rat(2));
  RatInterval d1 = l15 - l1;
  RatInterval d2 = l2 - l15;
  CHECK(contains_approx(d1, 0.5, 1e-9));
  CHECK(contains_approx(d2, 0.5, 1e-9));
  // collinear: second differences vanish
  RatInterval dd = d2 - d1;
  CHECK(contains_approx(dd, 0.0, 1e-9));

  // (1, 1) on the m-branch at t=0 and the kink between: slope -1 region needs
  // a vector whose norm branch stays low: (5, 7) near t = 0
  RatInterval e0 = L_function(Int(5), Int(7), r2, Rat(0));
  RatInterval e1 = L_function(Int(5), Int(7), r2, Rat(1, 2));
  CHECK(contains_approx(e1 - e0, -0.5, 1e-9));
}

TEST_CASE("profile of sqrt 2: band certified, convergent realizers") {
  Real r2 = Real::sqrt_of(Rat(2));
  std::vector<Rat> grid;
  for (int i = 0; i <= 6; ++i) grid.push_back(make_rat(Int(i), Int(2)));
  MinimaProfile p = minima_profile(r2, grid);
  REQUIRE(p.samples.size() == 7);
  CHECK(p.band_ok);
  CHECK(!p.terminated);
  for (const auto& s : p.samples) CHECK(s.band_ok);

  // t = 0: first minimum 0, realized by the 0th convergent (1,1)
  CHECK(p.samples[0].L1.lo == 0);
  CHECK(p.samples[0].L1.hi == 0);
  CHECK(p.samples[0].m1 == 1);
  CHECK(p.samples[0].n1 == 1);

  // t = 2: the height-5 convergent 7/5 realizes the first minimum
  const ProfileSample& s2 = p.samples[4];
  CHECK(s2.m1 == 5);
  CHECK(s2.n1 == 7);
  CHECK(contains_approx(s2.L1, std::log(5.0) - 2.0, 1e-9));

  // realizers stay independent
  for (const auto& s : p.samples) CHECK(s.m1 * s.n2 - s.m2 * s.n1 != 0);

  std::string csv = profile_csv(p);
  CHECK(csv.rfind("t,L1_lo,L1_hi,L2_lo,L2_hi,m1,n1,m2,n2\n", 0) == 0);
  size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 8);
}

TEST_CASE("profile of a rational target terminates at the exact hit") {
  std::vector<Rat> grid = {Rat(0), Rat(1), Rat(2), Rat(3)};
  MinimaProfile p = minima_profile(Real(Rat(1, 3)), grid);
  CHECK(p.terminated);
  REQUIRE(p.samples.size() == 3);  // stops at t = 2
  CHECK(p.samples.back().terminal);
  CHECK(p.samples.back().m1 == 3);
  CHECK(p.samples.back().n1 == 1);
  CHECK(p.band_ok);
  // before the hit the plain vector (1,0) carries the minimum
  CHECK(p.samples[1].m1 == 1);
  CHECK(p.samples[1].n1 == 0);
}

TEST_CASE("profile band holds for golden-type and lacunary targets") {
  std::vector<Rat> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(make_rat(Int(i), Int(2)));

  MinimaProfile g = minima_profile(golden(), grid);
  CHECK(g.band_ok);
  CHECK(g.samples.size() == 21);

  MinimaProfile l = minima_profile(lacunary3(), grid);
  CHECK(l.band_ok);
  CHECK(l.samples.size() == 21);
  // the deep-dip region: L1 goes well below -1 somewhere past t = 8
  bool dipped = false;
  for (const auto& s : l.samples)
    if (s.t >= 8 && s.L1.hi < -1) dipped = true;
  CHECK(dipped);
}

TEST_CASE("profile grid validation") {
  Real r2 = Real::sqrt_of(Rat(2));
  CHECK_THROWS_AS(minima_profile(r2, {Rat(-1)}), Error);
  CHECK_THROWS_AS(minima_profile(r2, {Rat(2), Rat(1)}), Error);
  CHECK(minima_profile(r2, {}).samples.empty());
}

TEST_CASE("exponent scan: lacunary member target in the two-digit ternary set") {
  MissingDigitSet C(Int(3), {Int(0), Int(2)});
  Int depth;
  mpz_ui_pow_ui(depth.get_mpz_t(), 3, 25);
  ExponentScan scan = estimate_exponents(C, lacunary3(), depth);

  CHECK(scan.convergents_used >= 5);
  CHECK(scan.intrinsic_count >= 3);   // 0/1, 1/1, 8/9, the deeper partial sums
  CHECK(scan.extrinsic_count >= 1);
  CHECK(scan.identity_ok);
  CHECK(scan.ordering_ok);

  const ExponentEstimate& li = pick(scan, ExponentKind::lambda_int);
  CHECK(li.certified);
  CHECK(li.lower_witness > Rat(7, 2));  // the 3^24 partial sum witnesses ~3.97
  Int p24;
  mpz_ui_pow_ui(p24.get_mpz_t(), 3, 24);
  CHECK(li.witness_q == p24);

  const ExponentEstimate& la = pick(scan, ExponentKind::lambda);
  CHECK(la.certified);
  CHECK(la.lower_witness >= li.lower_witness);
}

TEST_CASE("exponent scan: badly approximable target, witnesses stay near 1") {
  MissingDigitSet C(Int(3), {Int(0), Int(2)});
  ExponentScan scan = estimate_exponents(C, sqrt2m1(), Int(10000));

  CHECK(scan.convergents_used >= 8);
  CHECK(scan.extrinsic_count >= 6);
  CHECK(scan.identity_ok);
  CHECK(scan.ordering_ok);

  const ExponentEstimate& la = pick(scan, ExponentKind::lambda);
  CHECK(la.certified);
  CHECK(la.lower_witness >= 1);
  CHECK(la.lower_witness < 3);  // the v = 2 convergent witnesses ~2.54 at Q = 2

  const ExponentEstimate& le = pick(scan, ExponentKind::lambda_ext);
  CHECK(le.certified);
  CHECK(le.lower_witness >= 1);

  // hat kinds are diagnostics only; bounded type pins the uniform floor at 1
  const ExponentEstimate& lh = pick(scan, ExponentKind::lambda_hat);
  CHECK(!lh.certified);
  CHECK(lh.lower_witness > Rat(9, 10));
  CHECK(lh.lower_witness < Rat(11, 10));
}

TEST_CASE("exponent scan: depth too small") {
  MissingDigitSet C(Int(3), {Int(0), Int(2)});
  CHECK_THROWS_AS(estimate_exponents(C, Real(Rat(1, 3)), Int(2)), Error);
}
