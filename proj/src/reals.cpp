#include "cantor/reals.hpp"

#include <mpfr.h>

#include <algorithm>

namespace cantor {

namespace {

// An mpfr number is m * 2^e exactly; this conversion is lossless.
Rat mpfr_to_rat(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rat(0);
  if (!mpfr_number_p(x)) fail("enclosure-exhausted", "non-finite value in enclosure primitive");
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rat r(m);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

class MpfrTmp {
public:
  explicit MpfrTmp(long prec) { mpfr_init2(x_, std::max(prec, 16L)); }
  ~MpfrTmp() { mpfr_clear(x_); }
  MpfrTmp(const MpfrTmp&) = delete;
  mpfr_t& get() { return x_; }

private:
  mpfr_t x_;
};

}  // namespace

RatInterval log_enclosure(const Rat& x, long prec) {
  if (x <= 0) fail("domain", "log of non-positive value");
  MpfrTmp lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

RatInterval log_enclosure_int(const Int& x, long prec) {
  if (x <= 0) fail("domain", "log of non-positive value");
  MpfrTmp lo(prec), hi(prec);
  mpfr_set_z(lo.get(), x.get_mpz_t(), MPFR_RNDD);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_z(hi.get(), x.get_mpz_t(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

RatInterval exp_enclosure(const RatInterval& e, long prec) {
  MpfrTmp lo(prec), hi(prec);
  mpfr_set_q(lo.get(), e.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), e.hi.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

RatInterval sqrt_enclosure(const Rat& x, long prec) {
  if (x < 0) fail("domain", "sqrt of negative value");
  MpfrTmp lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

RatInterval root_enclosure(const Rat& x, unsigned long k, long prec) {
  if (x < 0) fail("domain", "root of negative value");
  MpfrTmp lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_rootn_ui(lo.get(), lo.get(), k, MPFR_RNDD);
  mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_rootn_ui(hi.get(), hi.get(), k, MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

RatInterval pi_enclosure(long prec) {
  MpfrTmp lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return RatInterval(mpfr_to_rat(lo.get()), mpfr_to_rat(hi.get()));
}

// ---------------------------------------------------------------------------
// Real
// ---------------------------------------------------------------------------

struct Real::State {
  Gen gen;
  std::optional<Rat> exact;
  std::optional<RatInterval> best;
  long best_prec = 0;
};

Real::Real(Rat exact) : st_(std::make_shared<State>()) { st_->exact = std::move(exact); }

Real Real::from_fn(Gen gen) {
  Real r{Rat(0)};
  r.st_ = std::make_shared<State>();
  r.st_->gen = std::move(gen);
  return r;
}

bool Real::is_exact() const { return st_->exact.has_value(); }

const Rat& Real::exact_value() const {
  if (!is_exact()) fail("domain", "exact_value on a non-exact real");
  return *st_->exact;
}

RatInterval Real::enclose(long prec) const {
  State& s = *st_;
  if (s.exact) return RatInterval::point(*s.exact);
  if (s.best && s.best_prec >= prec) return *s.best;
  RatInterval r = s.gen(prec);
  if (s.best) r = r.intersect(*s.best);
  s.best = r;
  s.best_prec = prec;
  return r;
}

RatInterval Real::enclose_width(const Rat& eps) const {
  if (eps <= 0) fail("domain", "enclosure width must be positive");
  if (st_->exact) return RatInterval::point(*st_->exact);
  for (long p = 64; p <= kMaxPrec; p *= 2) {
    RatInterval r = enclose(p);
    if (r.width() <= eps) return r;
  }
  fail("enclosure-exhausted", "could not refine enclosure to requested width");
}

Real Real::operator+(const Real& o) const {
  if (is_exact() && o.is_exact()) return Real(Rat(exact_value() + o.exact_value()));
  Real a = *this, b = o;
  return from_fn([a, b](long p) { return a.enclose(p + 2) + b.enclose(p + 2); });
}

Real Real::operator-(const Real& o) const {
  if (is_exact() && o.is_exact()) return Real(Rat(exact_value() - o.exact_value()));
  Real a = *this, b = o;
  return from_fn([a, b](long p) { return a.enclose(p + 2) - b.enclose(p + 2); });
}

Real Real::operator*(const Real& o) const {
  if (is_exact() && o.is_exact()) return Real(Rat(exact_value() * o.exact_value()));
  Real a = *this, b = o;
  return from_fn([a, b](long p) { return a.enclose(p + 2) * b.enclose(p + 2); });
}

Real Real::operator/(const Real& o) const {
  if (o.is_exact() && o.exact_value() == 0) fail("division-by-zero", "division by exact zero");
  if (is_exact() && o.is_exact()) return Real(Rat(exact_value() / o.exact_value()));
  Real a = *this, b = o;
  return from_fn([a, b](long p) {
    for (long q = std::max(p, 64L); q <= kMaxPrec; q *= 2) {
      RatInterval d = b.enclose(q);
      if (!d.contains_zero()) return a.enclose(q) / d;
    }
    fail("enclosure-exhausted", "divisor enclosure straddles zero");
  });
}

Real Real::operator-() const {
  if (is_exact()) return Real(Rat(-exact_value()));
  Real a = *this;
  return from_fn([a](long p) { return -a.enclose(p); });
}

Real Real::log_of(const Rat& x) {
  if (x <= 0) fail("domain", "log of non-positive value");
  if (x == 1) return Real(Rat(0));
  Rat xc = x;
  return from_fn([xc](long p) { return log_enclosure(xc, p); });
}

Real Real::log_of(const Real& x) {
  if (x.is_exact()) return log_of(x.exact_value());
  Real a = x;
  return from_fn([a](long p) {
    for (long q = std::max(p, 64L); q <= kMaxPrec; q *= 2) {
      RatInterval v = a.enclose(q);
      if (v.lo > 0)
        return RatInterval(log_enclosure(v.lo, p).lo, log_enclosure(v.hi, p).hi);
    }
    fail("enclosure-exhausted", "log argument not refinable away from zero");
  });
}

Real Real::exp_of(const Real& x) {
  Real a = x;
  return from_fn([a](long p) { return exp_enclosure(a.enclose(p + 2), p); });
}

Real Real::sqrt_of(const Rat& x) {
  Rat xc = x;
  return from_fn([xc](long p) { return sqrt_enclosure(xc, p); });
}

Real Real::root_of(const Rat& x, unsigned long k) {
  Rat xc = x;
  return from_fn([xc, k](long p) { return root_enclosure(xc, k, p); });
}

Real Real::pi() {
  return from_fn([](long p) { return pi_enclosure(p); });
}

Real Real::e() {
  return from_fn([](long p) { return exp_enclosure(RatInterval::point(Rat(1)), p); });
}

Real Real::pow(const Rat& base, const Real& expo) {
  if (base <= 0) fail("domain", "pow base must be positive");
  if (base == 1) return Real(Rat(1));
  return exp_of(expo * log_of(base));
}

std::optional<int> try_compare(const Real& a, const Real& b, long max_prec) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.exact_value(), b.exact_value());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  for (long p = 64; p <= max_prec; p *= 2) {
    RatInterval ia = a.enclose(p), ib = b.enclose(p);
    if (auto c = interval_cmp(ia, ib)) return c;
  }
  return std::nullopt;
}

int compare_or_fail(const Real& a, const Real& b, long max_prec) {
  if (auto c = try_compare(a, b, max_prec)) return *c;
  fail("undecided", "comparison did not separate at maximum precision");
}

// ---------------------------------------------------------------------------
// Multiplicative relations and power comparisons
// ---------------------------------------------------------------------------

namespace {

size_t rat_bits(const Rat& x) {
  return mpz_sizeinbase(x.get_num().get_mpz_t(), 2) + mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
}

constexpr size_t kPowBitGuard = size_t(1) << 22;

// x^e for long e with size guard; nullopt when the result would be huge.
std::optional<Rat> rat_pow_checked(const Rat& x, long e) {
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  if (ae != 0 && rat_bits(x) * ae > kPowBitGuard) return std::nullopt;
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), ae);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), ae);
  if (e < 0) {
    if (x == 0) fail("domain", "0 to a negative power");
    mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  }
  r.canonicalize();
  return r;
}

// exact v-th root of a nonnegative integer, if one exists
std::optional<Int> exact_root(const Int& n, unsigned long v) {
  Int r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), v) == 0) return std::nullopt;
  return r;
}

// v-th root of a positive rational if it is exactly a rational power.
std::optional<Rat> rat_exact_root(const Rat& x, unsigned long v) {
  auto rn = exact_root(x.get_num(), v);
  if (!rn) return std::nullopt;
  auto rd = exact_root(x.get_den(), v);
  if (!rd) return std::nullopt;
  return make_rat(*rn, *rd);
}

}  // namespace

std::optional<Rat> rational_log_ratio(const Rat& a_in, const Rat& b_in) {
  if (a_in <= 0 || b_in <= 0 || b_in == 1) fail("domain", "rational_log_ratio arguments");
  if (a_in == 1) return Rat(0);
  Rat a = a_in, b = b_in;
  int sign = 1;
  if (a < 1) {
    a = 1 / a;
    sign = -sign;
  }
  if (b < 1) {
    b = 1 / b;
    sign = -sign;
  }
  if (a == b) return Rat(sign);

  const Int vmax(1 << 16);
  for (long prec : {512L, 4096L}) {
    RatInterval ratio = log_enclosure(a, prec) / log_enclosure(b, prec);
    // common continued-fraction prefix of the interval gives convergents of
    // the true ratio; verify each candidate with the exact power identity
    Rat xl = ratio.lo, xh = ratio.hi;
    Int h2(0), h1(1), k2(1), k1(0);  // convergent recurrences
    for (int step = 0; step < 128; ++step) {
      Int al = floor_rat(xl), ah = floor_rat(xh);
      bool last = false;
      if (al != ah) {
        // Interval spans integers: the tail could be exactly one of them,
        // which would make the ratio equal that convergent. Test and stop.
        if (ah - al <= 8) {
          for (Int m = std::max(al, Int(1)); m <= ah; ++m) {
            Int h = m * h1 + h2, k = m * k1 + k2;
            if (k > 0 && h > 0 && k <= vmax && h.fits_slong_p()) {
              auto av = rat_pow_checked(a, k.get_si());
              auto bu = rat_pow_checked(b, h.get_si());
              if (av && bu && *av == *bu) return Rat(sign) * make_rat(h, k);
            }
          }
        }
        break;
      }
      Int h = al * h1 + h2, k = al * k1 + k2;
      if (k > vmax) break;
      if (k > 0 && h > 0 && h.fits_slong_p()) {
        auto av = rat_pow_checked(a, k.get_si());
        auto bu = rat_pow_checked(b, h.get_si());
        if (av && bu && *av == *bu) return Rat(sign) * make_rat(h, k);
      }
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      Rat fl = xl - al, fh = xh - ah;
      if (fl == 0 || fh == 0) last = true;  // endpoint exactly at a convergent
      if (last) break;
      Rat nxl = 1 / fh, nxh = 1 / fl;
      xl = nxl;
      xh = nxh;
    }
  }
  return std::nullopt;
}

namespace {

int cmp_sign(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

// compare c against Y^(u/v) exactly (all positive, v > 0)
std::optional<int> cmp_rational_power(const Rat& c, const Rat& Y, const Int& u, const Int& v) {
  if (!u.fits_slong_p() || !v.fits_slong_p()) return std::nullopt;
  auto cv = rat_pow_checked(c, v.get_si());
  auto yu = rat_pow_checked(Y, u.get_si());
  if (!cv || !yu) return std::nullopt;
  return cmp_sign(cmp(*cv, *yu));
}

}  // namespace

int compare_power(const Rat& c, const Rat& X, const Rat& w, const Rat& b, long max_prec) {
  if (c <= 0 || X <= 0 || w <= 0 || b <= 0 || b == 1) fail("domain", "compare_power arguments");
  if (X == 1 || w == 1) return cmp_sign(cmp(c, Rat(1)));

  if (auto d = rational_log_ratio(w, b)) {
    // X^Delta = X^(u/v); compare c^v against X^u
    if (auto r = cmp_rational_power(c, X, d->get_num(), d->get_den())) return *r;
  }
  if (auto d = rational_log_ratio(X, b)) {
    // X = b^(u/v) so X^Delta = w^(u/v)
    if (auto r = cmp_rational_power(c, w, d->get_num(), d->get_den())) return *r;
  }
  // interval fallback: log c  vs  (log w * log X) / log b
  Real lhs = Real::log_of(c);
  Real rhs = Real::log_of(w) * Real::log_of(X) / Real::log_of(b);
  if (auto r = try_compare(lhs, rhs, max_prec)) return *r;
  fail("undecided", "power comparison did not separate; arguments may be multiplicatively related");
}

bool decide_power_bound(const Rat& c, const Int& base, const Rat& Q, const Int& w,
                        long max_prec) {
  if (base < 2 || w < 2 || c <= 0 || Q <= 0) fail("domain", "decide_power_bound arguments");
  if (c <= 1) return true;  // RHS is a positive power of base >= ... always > 0; c <= 1 < b^x only
                            // when b^x > 1; for Q >= 1 that holds, and for Q < 1 still b^(Q^D) > 1
  Rat bq(base), wq(w);

  // c = base^s for rational s: compare s with Q^(u/v) or w^(u'/v')
  auto s = rational_log_ratio(c, bq);
  if (auto d = rational_log_ratio(wq, bq)) {
    // exponent is Q^(u/v) with u, v > 0
    const Int &u = d->get_num(), &v = d->get_den();
    if (s) {
      if (*s <= 0) return true;
      if (auto r = cmp_rational_power(*s, Q, u, v)) return *r <= 0;
    }
    if (v.fits_ulong_p()) {
      if (auto qu = rat_pow_checked(Q, u.get_si())) {
        if (auto t = rat_exact_root(*qu, v.get_ui())) {
          // RHS = base^t exactly
          if (auto r = cmp_rational_power(c, bq, t->get_num(), t->get_den())) return *r <= 0;
        }
      }
    }
  }
  if (auto d = rational_log_ratio(Q, bq)) {
    // Q = base^(u/v) so Q^Delta = w^(u/v)
    const Int &u = d->get_num(), &v = d->get_den();
    if (s) {
      if (*s <= 0) return true;
      if (auto r = cmp_rational_power(*s, wq, u, v)) return *r <= 0;
    }
    if (u >= 0 && v.fits_ulong_p()) {
      if (auto wu = rat_pow_checked(wq, u.get_si())) {
        if (auto t = rat_exact_root(*wu, v.get_ui())) {
          if (auto r = cmp_rational_power(c, bq, t->get_num(), t->get_den())) return *r <= 0;
        }
      }
    }
  }
  // interval fallback: log log c / log base  vs  Delta * log Q ... compare
  // log(c) against Q^Delta * log(base)
  Real delta = Real::log_of(wq) / Real::log_of(bq);
  Real rhs = Real::exp_of(delta * Real::log_of(Q)) * Real::log_of(bq);
  Real lhs = Real::log_of(c);
  if (auto r = try_compare(lhs, rhs, max_prec)) return *r <= 0;
  fail("undecided", "power bound comparison did not separate");
}

Int floor_power(const Rat& Q, const Int& w, const Int& base, long max_prec) {
  if (base < 2 || w < 2 || Q < 1) fail("domain", "floor_power requires Q >= 1, bases >= 2");
  if (Q == 1) return Int(1);
  Rat bq(base), wq(w);

  auto floor_root_of_rat = [](const Rat& y, unsigned long v) {
    // largest n with n^v <= y
    Int n0;
    mpz_root(n0.get_mpz_t(), Int(floor_rat(y)).get_mpz_t(), v);
    while (true) {
      auto p = rat_pow_checked(Rat(n0 + 1), static_cast<long>(v));
      if (p && *p <= y)
        n0 += 1;
      else
        break;
    }
    return n0;
  };

  if (auto d = rational_log_ratio(wq, bq)) {
    const Int &u = d->get_num(), &v = d->get_den();
    if (u > 0 && u.fits_slong_p() && v.fits_ulong_p()) {
      if (auto qu = rat_pow_checked(Q, u.get_si())) return floor_root_of_rat(*qu, v.get_ui());
    }
  }
  if (auto d = rational_log_ratio(Q, bq)) {
    const Int &u = d->get_num(), &v = d->get_den();
    if (u > 0 && u.fits_slong_p() && v.fits_ulong_p()) {
      if (auto wu = rat_pow_checked(wq, u.get_si())) return floor_root_of_rat(*wu, v.get_ui());
    }
  }
  Real delta = Real::log_of(wq) / Real::log_of(bq);
  Real val = Real::exp_of(delta * Real::log_of(Q));
  for (long p = 64; p <= max_prec; p *= 2) {
    RatInterval iv = val.enclose(p);
    Int fl = floor_rat(iv.lo), fh = floor_rat(iv.hi);
    if (fl == fh) return fl;
    if (fh == fl + 1 && Rat(fh) == iv.hi) return fl;  // hi touches the integer from below
  }
  fail("undecided", "floor of power did not resolve; arguments may be multiplicatively related");
}

// ---------------------------------------------------------------------------
// ScaledPow
// ---------------------------------------------------------------------------

bool ScaledPow::materializable(long max_bits) const {
  if (scale <= 0 || base < 2) fail("domain", "ScaledPow requires positive scale, base >= 2");
  Int aexp = abs(exp);
  size_t bb = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (!aexp.fits_ulong_p()) return false;
  if (aexp.get_ui() > static_cast<unsigned long>(max_bits) / bb) return false;
  return rat_bits(scale) < static_cast<size_t>(max_bits);
}

Rat ScaledPow::materialize() const {
  if (!materializable()) fail("budget-exceeded", "ScaledPow value too large to materialize");
  Int p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), Int(abs(exp)).get_ui());
  return exp >= 0 ? Rat(scale * p) : Rat(scale / p);
}

RatInterval ScaledPow::log2_enclosure(long prec) const {
  RatInterval lb = log_enclosure_int(base, prec);
  RatInterval ls = log_enclosure(scale, prec);
  RatInterval l2 = log_enclosure(Rat(2), prec);
  return (lb * Rat(exp) + ls) / l2;
}

namespace {

// exact k with value == 2^k, if any
std::optional<Int> scaledpow_log2_exact(const ScaledPow& v) {
  // value = sn/sd * base^exp; write base = 2^e2 * m with m odd.
  Int m = v.base;
  unsigned long e2 = mpz_scan1(m.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), e2);
  Int sn = v.scale.get_num(), sd = v.scale.get_den();
  unsigned long vn = mpz_scan1(sn.get_mpz_t(), 0), vd = mpz_scan1(sd.get_mpz_t(), 0);
  Int on, od;
  mpz_fdiv_q_2exp(on.get_mpz_t(), sn.get_mpz_t(), vn);
  mpz_fdiv_q_2exp(od.get_mpz_t(), sd.get_mpz_t(), vd);
  // need on * m^exp == od (for exp >= 0), or on == od * m^{-exp}
  bool equal;
  if (m == 1) {
    equal = (on == od);
  } else {
    const Int& big = v.exp >= 0 ? od : on;
    const Int& small = v.exp >= 0 ? on : od;
    Int aexp = abs(v.exp);
    size_t mbits = mpz_sizeinbase(m.get_mpz_t(), 2);
    size_t bigbits = mpz_sizeinbase(big.get_mpz_t(), 2);
    // m^aexp has at least aexp*(mbits-1)+1 bits; quick size filter
    if (!aexp.fits_ulong_p() || aexp.get_ui() * (mbits - 1) > bigbits + 1) {
      equal = false;
    } else {
      Int mp;
      mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), aexp.get_ui());
      equal = (small * mp == big);
    }
  }
  if (!equal) return std::nullopt;
  return Int(v.exp * static_cast<long>(e2) + static_cast<long>(vn) - static_cast<long>(vd));
}

}  // namespace

int compare_scaledpow(const ScaledPow& v, const Rat& c) {
  if (c <= 0) fail("domain", "compare_scaledpow against non-positive rational");
  if (v.materializable(1 << 16)) {
    int r = cmp(v.materialize(), c);
    return r < 0 ? -1 : (r > 0 ? 1 : 0);
  }
  // exact equality test: value == c  <=>  scale/c == base^{-exp}
  {
    ScaledPow t{Rat(v.scale / c), v.base, v.exp};
    if (auto k = scaledpow_log2_exact(t); k && *k == 0) {
      // scale/c * base^exp is a power of two 2^0 ... that means equal only if
      // it is exactly 1; scaledpow_log2_exact==0 certifies exactly that.
      return 0;
    }
  }
  for (long p = 128; p <= kMaxPrec; p *= 2) {
    RatInterval lv = v.log2_enclosure(p);
    RatInterval lc = log_enclosure(c, p) / log_enclosure(Rat(2), p);
    if (auto r = interval_cmp(lv, lc)) return *r;
  }
  fail("undecided", "scaled power comparison did not separate");
}

Int ceil_log2(const ScaledPow& v) {
  if (auto k = scaledpow_log2_exact(v)) return *k;
  for (long p = 128; p <= kMaxPrec; p *= 2) {
    RatInterval l = v.log2_enclosure(p);
    Int cl = ceil_rat(l.lo), ch = ceil_rat(l.hi);
    if (cl == ch && Rat(cl) != l.lo) return cl;
  }
  fail("undecided", "ceil(log2) did not resolve");
}

bool log2_exceeds(const ScaledPow& v, const Int& threshold) {
  if (auto k = scaledpow_log2_exact(v)) return *k > threshold;
  Rat t(threshold);
  for (long p = 128; p <= kMaxPrec; p *= 2) {
    RatInterval l = v.log2_enclosure(p);
    if (l.lo > t) return true;
    if (l.hi < t) return false;
  }
  fail("undecided", "log2 threshold comparison did not separate");
}

}  // namespace cantor
