#include "cantor/extrinsic.hpp"

#include "cantor/contfrac.hpp"
#include "cantor/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cantor {

namespace {

size_t bits_of(const Int& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

size_t bits_of(const Rat& x) {
  return bits_of(Int(x.get_num())) + bits_of(Int(x.get_den()));
}

Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rat_pow(const Rat& x, unsigned long e) {
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), e);
  return make_rat(n, d);
}

// log2 of a positive rational, as an exact-endpoint enclosure
RatInterval log2_of(const Rat& x, long prec) {
  return log_enclosure(x, prec) / log_enclosure(Rat(2), prec);
}

// membership with a range pretest: the set lives inside its attractor box,
// and the expansion scan is only defined on [0,1]
MembershipCertificate classify_member(const MissingDigitSet& set, const Rat& x) {
  if (x < set.min_point() || x > set.max_point()) return MembershipCertificate{};
  return set.is_member(x);
}

}  // namespace

// ---------------------------------------------------------------------------
// PhiSchedule
// ---------------------------------------------------------------------------

PhiSchedule PhiSchedule::inverse_ceil_log2() {
  PhiSchedule s;
  s.kind_ = Kind::InverseCeilLog2;
  return s;
}

PhiSchedule PhiSchedule::inverse_power(const Rat& c, const Rat& e) {
  if (c <= 0 || e <= 0)
    fail("schedule-not-decreasing", "power schedule needs positive coefficient and exponent");
  PhiSchedule s;
  s.kind_ = Kind::InversePower;
  s.c_ = c;
  s.e_ = e;
  return s;
}

PhiSchedule PhiSchedule::table(std::vector<std::pair<Rat, Rat>> rows) {
  if (rows.empty()) fail("schedule-not-decreasing", "empty schedule table");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first <= 0 || rows[i].second <= 0)
      fail("schedule-not-decreasing", "table entries must be positive");
    if (i > 0 && rows[i].first <= rows[i - 1].first)
      fail("schedule-not-decreasing", "table arguments must increase strictly");
    if (i > 0 && rows[i].second > rows[i - 1].second)
      fail("schedule-not-decreasing", "table values must not increase");
  }
  PhiSchedule s;
  s.kind_ = Kind::Table;
  s.rows_ = std::move(rows);
  return s;
}

Rat PhiSchedule::value_at(const Rat& q) const {
  if (q <= 1) fail("domain", "schedule argument must exceed 1");
  switch (kind_) {
    case Kind::InverseCeilLog2: {
      Int c = ceil_log2(ScaledPow{q, Int(2), Int(0)});
      return make_rat(Int(1), c);
    }
    case Kind::InversePower: {
      if (e_.get_den() != 1 || !Int(e_.get_num()).fits_ulong_p())
        fail("domain", "exact power-schedule values need a small integer exponent");
      return c_ / rat_pow(q, Int(e_.get_num()).get_ui());
    }
    case Kind::Table: {
      if (q < rows_.front().first) fail("domain", "argument below the table range");
      Rat v = rows_.front().second;
      for (const auto& r : rows_) {
        if (r.first <= q) v = r.second;
        else break;
      }
      return v;
    }
  }
  fail("internal", "unhandled schedule kind");
}

bool PhiSchedule::below_inverse(const ScaledPow& q, const ScaledPow& inv_bound) const {
  if (compare_scaledpow(inv_bound, Rat(1)) < 0)
    fail("domain", "inverse bound must be at least 1");
  switch (kind_) {
    case Kind::InverseCeilLog2: {
      // Phi(q) < 1/V  <=>  ceil(log2 q) > V  <=>  log2 q > V  (V a positive
      // integer; the ceiling of x exceeds an integer exactly when x does).
      if (inv_bound.materializable()) {
        Rat V = inv_bound.materialize();
        if (V.get_den() != 1) fail("domain", "inverse bound must be an integer");
        return log2_exceeds(q, Int(V.get_num()));
      }
      // V is too large to write down: compare log2(log2 q) against log2(V).
      for (long p = 192; p <= (1L << 16); p *= 2) {
        RatInterval z = q.log2_enclosure(p);
        if (z.hi <= 1) return false;  // log2 q <= 1 < V
        if (!(z.lo > 1)) continue;
        RatInterval lhs{log2_of(z.lo, p).lo, log2_of(z.hi, p).hi};
        RatInterval rhs = inv_bound.log2_enclosure(p);
        if (auto r = interval_cmp(lhs, rhs)) return *r > 0;
      }
      fail("undecided", "schedule test did not separate");
    }
    case Kind::InversePower: {
      // c/q^e < 1/V  <=>  e*log2 q > log2 c + log2 V
      for (long p = 192; p <= (1L << 16); p *= 2) {
        RatInterval lhs = q.log2_enclosure(p) * e_;
        RatInterval rhs = log2_of(c_, p) + inv_bound.log2_enclosure(p);
        if (auto r = interval_cmp(lhs, rhs)) return *r > 0;
      }
      fail("undecided", "schedule test did not separate");
    }
    case Kind::Table: {
      if (compare_scaledpow(q, rows_.front().first) < 0)
        fail("domain", "argument below the table range");
      Rat v = rows_.front().second;
      for (const auto& r : rows_) {
        if (compare_scaledpow(q, r.first) >= 0) v = r.second;
        else break;
      }
      // v < 1/V  <=>  V < 1/v
      return compare_scaledpow(inv_bound, Rat(1) / v) < 0;
    }
  }
  fail("internal", "unhandled schedule kind");
}

// ---------------------------------------------------------------------------
// Staircase construction
// ---------------------------------------------------------------------------

namespace {

// Context for the exact symbolic path over a missing-digit system. The stage
// point theta_k follows the marker pattern through a_k and rides the filler
// digit forever after, so theta_k and the limit share every digit outside the
// marker positions beyond a_k:
//   xi - theta_k = (wg - wf) * sum_{i>k} b^{-a_i},
// which is trapped between delta*b^{-a_{k+1}} and delta*b^{-a_{k+1}} * b/(b-1)
// in absolute value. With gcd(|wg-wf|, b) = 1 the reduced denominator of
// theta_k is exactly cq * b^{a_k}, cq = (b-1)/gcd(wf, b-1).
struct DigitCtx {
  Int b, wf, wg;
  Int delta;   // |wg - wf|
  Rat cq;      // integer-valued cofactor of the stage denominator
  Int wspan;   // max digit - min digit
};

ScaledPow digit_qk(const DigitCtx& cx, const Int& ak) {
  return ScaledPow{cx.cq, cx.b, ak};
}

ScaledPow digit_err_up(const DigitCtx& cx, const Int& an) {
  return ScaledPow{Rat(cx.delta) * Rat(cx.b) / Rat(cx.b - 1), cx.b, -an};
}

ScaledPow digit_err_low(const DigitCtx& cx, const Int& an) {
  return ScaledPow{Rat(cx.delta), cx.b, -an};
}

// Q_k = z_k/3 with z_k = 1/(2 q_k errup): the denominator floor for the next
// convergent, shrunk by 3 to the competitor bound of the stage condition.
ScaledPow digit_big_q(const DigitCtx& cx, const Int& ak, const Int& an) {
  return ScaledPow{Rat(cx.b - 1) / (Rat(6) * Rat(cx.delta) * cx.cq), cx.b, an - 1 - ak};
}

bool digit_ivo(const DigitCtx& cx, const Int& ak, const Int& a) {
  // errup < 1/(2 q_k^3)  <=>  2 cq^3 delta b/(b-1) * b^{3 ak - a} < 1
  Rat s = Rat(2) * cx.cq * cx.cq * cx.cq * Rat(cx.delta) * Rat(cx.b) / Rat(cx.b - 1);
  return compare_scaledpow(ScaledPow{s, cx.b, 3 * ak - a}, Rat(1)) < 0;
}

bool digit_gap(const DigitCtx& cx, const PhiSchedule& phi, const Int& ak, const Int& a) {
  try {
    return phi.below_inverse(digit_big_q(cx, ak, a),
                             ScaledPow{Rat(6) * cx.cq, cx.b, ak});
  } catch (const Error& e) {
    if (e.code() == "domain") return false;  // argument below a table's range
    throw;
  }
}

// Doubling search for a_{k+1}: the candidates are a_k + 2^j, and the answer
// is the first that satisfies both stage conditions. The ladder is walked
// literally while that is cheap; when the required gap is astronomical the
// endpoint is located by an estimate and certified on both sides, which
// reproduces the ladder's result without touching the infeasible middle.
Int digit_choose_next(const DigitCtx& cx, const PhiSchedule& phi, const Int& ak) {
  auto ok = [&](const Int& a) {
    return digit_ivo(cx, ak, a) && digit_gap(cx, phi, ak, a);
  };
  for (long j = 0; j <= 48; ++j) {
    Int a = ak + (Int(1) << j);
    if (ok(a)) return a;
  }
  if (phi.kind() == PhiSchedule::Kind::Table)
    fail("budget-exceeded", "table schedule cannot certify stages this deep");
  if (!ak.fits_ulong_p() || bits_of(ak) > 40)
    fail("budget-exceeded", "stage positions exceed the certification budget");
  // Estimate the first passing rung. Both conditions are monotone in a, so
  // certifying pass at j and fail at j-1 pins the ladder endpoint.
  double akd = ak.get_d();
  double bd = cx.b.get_d();
  double l2b = std::log2(bd);
  double dd = cx.delta.get_d(), cqd = mpq_get_d(cx.cq.get_mpq_t());
  // ivo: b^{a - 3 ak} > 2 cq^3 delta b/(b-1)
  double ivo_gap = 2.0 * akd + std::log2(2.0 * cqd * cqd * cqd * dd * bd) / l2b + 4.0;
  double j_ivo = std::log2(std::max(2.0, ivo_gap));
  // gap condition; log2T locates log2(6 q_k)
  double log2T = std::log2(6.0 * cqd) + akd * l2b;
  double j_gap;
  if (phi.kind() == PhiSchedule::Kind::InversePower) {
    // e*log2 Q > log2 c + log2 V: gap demand is roughly log2T/(e*log2 b)
    double ed = mpq_get_d(phi.power_exponent().get_mpq_t());
    double cd = mpq_get_d(phi.power_coeff().get_mpq_t());
    double need = (log2T + std::log2(std::max(cd, 1e-300))) / (ed * l2b);
    j_gap = std::log2(std::max(2.0, need));
  } else {
    // 1/ceil(log2 Q) < 1/(6 q_k): gap demand is roughly T/log2 b
    j_gap = log2T - std::log2(l2b);
  }
  long j0 = static_cast<long>(std::llround(std::max(j_ivo, j_gap)));
  if (j0 < 49) j0 = 49;
  auto at = [&](long j) { return Int(ak + (Int(1) << j)); };
  long steps = 0;
  if (ok(at(j0))) {
    while (j0 > 49 && ok(at(j0 - 1))) {
      --j0;
      if (++steps > 64) fail("undecided", "doubling endpoint estimate did not settle");
    }
  } else {
    while (!ok(at(j0))) {
      ++j0;
      if (++steps > 64) fail("undecided", "doubling endpoint estimate did not settle");
    }
  }
  return at(j0);
}

}  // namespace

LiouvilleBuild liouville_build(const RationalIFS& ifs, size_t f_index, size_t g_index,
                               const PhiSchedule& phi, size_t stage_count,
                               const Int& a1) {
  if (stage_count < 1) fail("domain", "need at least one stage");
  if (f_index >= ifs.branch_count() || g_index >= ifs.branch_count())
    fail("domain", "map index out of range");
  if (f_index == g_index) fail("domain", "filler and marker maps must differ");
  if (a1 < 1) fail("domain", "first marker position must be at least 1");

  LiouvilleBuild out;
  out.dim = ifs.dim();
  out.f_index = f_index;
  out.g_index = g_index;
  out.schedule = phi;
  out.a.push_back(a1);

  const bool digit = ifs.missing_digit().has_value() && ifs.dim() == 1;
  out.digit_system = digit;

  if (digit) {
    const MissingDigitMeta& meta = *ifs.missing_digit();
    DigitCtx cx;
    cx.b = meta.base;
    cx.wf = meta.digits[f_index];
    cx.wg = meta.digits[g_index];
    cx.delta = abs(cx.wg - cx.wf);
    cx.wspan = meta.digits.back() - meta.digits.front();
    if (gcd(cx.delta, cx.b) != 1)
      fail("domain", "digit difference of the two maps must be coprime to the base");
    cx.cq = Rat(cx.b - 1) / Rat(gcd(cx.wf, cx.b - 1));
    out.base = cx.b;
    out.wf = cx.wf;
    out.wg = cx.wg;
    out.delta = cx.delta;
    out.digits = meta.digits;

    MissingDigitSet set(cx.b, meta.digits);
    const long kThetaCap = 1L << 20;
    Rat theta = Rat(cx.wf) / Rat(cx.b - 1);
    bool theta_live = true;

    for (size_t k = 1; k <= stage_count; ++k) {
      Int ak = out.a.back();
      Int an = digit_choose_next(cx, phi, ak);
      if (an <= ak) fail("internal", "stage positions failed to increase");

      LiouvilleStage st;
      st.index = k;
      st.a_k = ak;
      st.a_next = an;
      st.q_k = digit_qk(cx, ak);
      st.err_up = digit_err_up(cx, an);
      st.err_low = digit_err_low(cx, an);
      st.big_q = digit_big_q(cx, ak, an);
      st.contraction_ok = cx.delta <= cx.wspan;
      st.legendre_ok = digit_ivo(cx, ak, an);
      st.gap_ok = digit_gap(cx, phi, ak, an);
      if (!st.legendre_ok || !st.gap_ok)
        fail("internal", "stage certification lost after selection");

      if (theta_live && ak.fits_slong_p() && ak.get_si() <= kThetaCap) {
        Int bp = int_pow(cx.b, ak.get_ui());
        theta += Rat(cx.wg - cx.wf) / Rat(bp);
        // the reduced denominator must be exactly cq * b^{a_k}
        Rat want = cx.cq * Rat(bp);
        if (Rat(theta.get_den()) != want)
          fail("internal", "stage denominator disagrees with the reduced form");
        if (!set.is_member(theta).member)
          fail("internal", "stage point escaped the set");
        st.theta = theta;
      } else {
        theta_live = false;
      }
      if (st.big_q.materializable()) {
        st.big_q_value = st.big_q.materialize();
      }
      if (phi.kind() == PhiSchedule::Kind::InverseCeilLog2) {
        Int ex = an - 1 - ak;
        if (bits_of(ex) <= 62) st.phi_value = make_rat(Int(1), ceil_log2(st.big_q));
      } else if (st.big_q_value) {
        try {
          st.phi_value = phi.value_at(*st.big_q_value);
        } catch (const Error&) {
          // irrational schedule value: leave the certified inequality as is
        }
      }
      if (st.phi_value && st.big_q_value) st.margin = *st.phi_value / *st.big_q_value;

      out.stages.push_back(std::move(st));
      out.a.push_back(an);
    }

    // distances shrink strictly across stages: errup(k+1) < errlow(k)
    out.monotone_ok = true;
    for (size_t k = 0; k + 1 < out.stages.size(); ++k) {
      ScaledPow ratio{Rat(cx.b) / Rat(cx.b - 1), cx.b,
                      out.stages[k].a_next - out.stages[k + 1].a_next};
      if (compare_scaledpow(ratio, Rat(1)) >= 0) out.monotone_ok = false;
    }
    return out;
  }

  // General path: materialize every stage point exactly.
  const Int kPosCap = Int(1) << 22;
  RatVec alpha = periodic_fixed_point(ifs, Address{{}, {f_index}});
  Rat diam = ifs.diameter_ub();
  Rat tau = ifs.tau();
  if (!(tau > 0)) fail("domain", "degenerate contraction");

  auto theta_at = [&](const Int& ak) {
    if (ak > kPosCap) fail("budget-exceeded", "stage growth exceeds the materialization budget");
    size_t n = ak.get_ui();
    std::vector<size_t> word(n, f_index);
    for (const Int& pos : out.a) {
      if (pos <= ak) word[pos.get_ui() - 1] = g_index;
    }
    return eval_prefix(ifs, word, alpha);
  };
  auto common_den = [&](const RatVec& v) {
    Int q(1);
    for (const Rat& c : v) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
    return q;
  };

  Int q_prev(0);
  for (size_t k = 1; k <= stage_count; ++k) {
    Int ak = out.a.back();
    RatVec th = theta_at(ak);
    Int qk = common_den(th);
    if (qk <= q_prev) fail("bound-violation", "stage denominators failed to grow");
    q_prev = qk;

    auto err_at = [&](const Int& a) -> Rat {
      if (a > kPosCap) fail("budget-exceeded", "stage growth exceeds the materialization budget");
      return diam * rat_pow(tau, Int(a - 1).get_ui());
    };
    Rat half_cube = make_rat(Int(1), 2 * qk * qk * qk);
    auto ok = [&](const Int& a) {
      Rat e = err_at(a);
      if (!(e < half_cube)) return false;
      Rat Q = Rat(1) / (Rat(6) * Rat(qk) * e);
      if (!(Q > 1)) return false;
      try {
        return phi.below_inverse(ScaledPow{Q, Int(2), Int(0)},
                                 ScaledPow{Rat(6) * Rat(qk), Int(2), Int(0)});
      } catch (const Error& err) {
        if (err.code() == "domain") return false;
        throw;
      }
    };
    Int g(1), an(0);
    for (;;) {
      Int a = ak + g;
      if (a > kPosCap)
        fail("budget-exceeded", "stage growth exceeds the materialization budget");
      if (ok(a)) {
        an = a;
        break;
      }
      g *= 2;
    }

    LiouvilleStage st;
    st.index = k;
    st.a_k = ak;
    st.a_next = an;
    st.q_k = ScaledPow{Rat(qk), Int(2), Int(0)};
    Rat e = err_at(an);
    st.err_up = ScaledPow{e, Int(2), Int(0)};
    st.big_q = ScaledPow{Rat(1) / (Rat(6) * Rat(qk) * e), Int(2), Int(0)};
    st.contraction_ok = true;  // errup is the contraction bound itself
    st.legendre_ok = e < half_cube;
    st.gap_ok = true;  // certified by ok(an) above
    st.theta_vec = th;
    if (ifs.dim() == 1) st.theta = th[0];
    if (st.big_q.materializable()) {
      st.big_q_value = st.big_q.materialize();
      try {
        st.phi_value = phi.value_at(*st.big_q_value);
        st.margin = *st.phi_value / *st.big_q_value;
      } catch (const Error&) {
        // irrational schedule value at this argument; bounds stay certified
      }
    }
    out.stages.push_back(std::move(st));
    out.a.push_back(an);
  }

  out.monotone_ok = true;
  for (size_t k = 0; k + 1 < out.stages.size(); ++k) {
    // only the upper bounds are available here; record their strict decrease
    if (!(out.stages[k + 1].err_up.scale < out.stages[k].err_up.scale))
      out.monotone_ok = false;
  }
  return out;
}

Real liouville_value(const LiouvilleBuild& build) {
  if (build.dim != 1) fail("domain", "scalar value needs a one-dimensional build");
  struct Node {
    Rat theta;
    Int a_next;    // digit path: next marker position
    Rat err;       // general path: materialized error bound
    bool digit;
    bool up;       // digit path: limit sits above theta
    long pad;      // digit path: extra bits consumed by delta*b
  };
  std::vector<Node> nodes;
  if (build.digit_system) {
    long pad = static_cast<long>(bits_of(Int(build.delta * build.base))) + 2;
    for (const LiouvilleStage& st : build.stages) {
      if (!st.theta) break;
      nodes.push_back({*st.theta, st.a_next, Rat(0), true, build.wg > build.wf, pad});
    }
  } else {
    for (const LiouvilleStage& st : build.stages) {
      if (!st.theta) break;
      nodes.push_back({*st.theta, Int(0), st.err_up.scale, false, false, 0});
    }
  }
  if (nodes.empty()) fail("domain", "no materialized stage points");
  return Real::from_fn([nodes](long prec) -> RatInterval {
    for (const Node& nd : nodes) {
      if (nd.digit) {
        // tail = delta * sum_{i>k} b^{-a_i} is below delta*b/(b-1)*b^{-a_next},
        // and b^{a_next} >= 2^{a_next}, so a_next >= prec+pad traps the width
        if (nd.a_next >= Int(prec) + 1 + nd.pad) {
          Rat t = make_rat(Int(1), Int(1) << static_cast<unsigned long>(prec + 1));
          return nd.up ? RatInterval{nd.theta, nd.theta + t}
                       : RatInterval{nd.theta - t, nd.theta};
        }
      } else {
        Rat t = make_rat(Int(1), Int(1) << static_cast<unsigned long>(prec + 1));
        if (nd.err <= t) return RatInterval{nd.theta - nd.err, nd.theta + nd.err};
      }
    }
    fail("enclosure-exhausted", "build too shallow for the requested precision");
  });
}

WitnessScan liouville_witness_check(const LiouvilleBuild& build, size_t stage, int jobs) {
  if (stage < 1 || stage > build.stages.size()) fail("domain", "no such stage");
  if (!build.digit_system)
    fail("domain", "the exhaustive scan supports digit systems only");
  const LiouvilleStage& st = build.stages[stage - 1];
  if (!st.big_q_value || !st.margin)
    fail("budget-exceeded", "stage bound too large for an exhaustive scan");

  WitnessScan out;
  out.stage = stage;
  out.margin = *st.margin;
  out.q_limit = floor_rat(*st.big_q_value);
  if (out.q_limit < 1) fail("domain", "stage bound below 1");
  if (bits_of(out.q_limit) > 40)
    fail("budget-exceeded", "stage bound too large for an exhaustive scan");

  // limit enclosure from the deepest materialized stage point
  const LiouvilleStage* deep = nullptr;
  for (const LiouvilleStage& s : build.stages)
    if (s.theta) deep = &s;
  if (!deep) fail("internal", "no materialized stage point");
  Rat theta = *deep->theta;
  long pad = static_cast<long>(bits_of(Int(build.delta * build.base))) + 2;
  long want = static_cast<long>(bits_of(out.margin)) + 128;
  if (deep->a_next < Int(want) + pad) {
    Int room = deep->a_next - pad;
    if (room < Int(static_cast<long>(bits_of(out.margin))) + 32)
      fail("budget-exceeded", "stage points too shallow to separate the margin");
    want = room.get_si();
  }
  Rat t_hi = make_rat(Int(1), Int(1) << static_cast<unsigned long>(want));
  bool up = build.wg > build.wf;
  Rat xi_lo = up ? theta : theta - t_hi;
  Rat xi_hi = up ? theta + t_hi : theta;

  const Rat m = out.margin;
  std::vector<Rat> cand =
      stern_brocot_enumerate(xi_lo - m, xi_hi + m, out.q_limit);
  out.candidates = cand.size();

  MissingDigitSet set(build.base, build.digits);
  const bool fast = build.base.fits_slong_p() &&
                    out.q_limit < Int(INT64_MAX) / build.base;

  // every rational outside the window clears the margin because the limit
  // lies inside [xi_lo, xi_hi]; inside it, exact arithmetic on the offset
  // D = candidate - theta (mirrored when the limit sits below theta) decides
  // each case against the tail bound.
  auto classify = [&](const Rat& c, bool& is_mem, bool& viol) {
    is_mem = false;
    viol = false;
    if (c < set.min_point() || c > set.max_point()) {
      is_mem = false;
    } else if (fast) {
      is_mem = set.member_fast(Int(c.get_num()).get_si(), Int(c.get_den()).get_si());
    } else {
      is_mem = set.is_member(c).member;
    }
    if (is_mem) return;
    Rat D = up ? c - theta : theta - c;
    if (D <= 0) {
      if (-D >= m) return;            // distance = |D| + tail > m
      if (-D + t_hi <= m) { viol = true; return; }
    } else {
      if (D >= m + t_hi) return;      // distance > D - t_hi >= m
      if (D <= m) { viol = true; return; }
    }
    fail("undecided", "candidate sits at the margin boundary");
  };

  size_t n = cand.size();
  unsigned hw = std::thread::hardware_concurrency();
  size_t nthreads = jobs > 1 ? std::min<size_t>(jobs, hw ? hw : 1) : 1;
  if (nthreads > 1 && n >= 4096) {
    std::vector<size_t> mem_cnt(nthreads, 0), first_viol(nthreads, n);
    std::vector<std::thread> pool;
    size_t chunk = (n + nthreads - 1) / nthreads;
    for (size_t t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t]() {
        size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        for (size_t i = lo; i < hi; ++i) {
          bool is_mem = false, viol = false;
          classify(cand[i], is_mem, viol);
          if (is_mem) ++mem_cnt[t];
          if (viol && first_viol[t] == n) first_viol[t] = i;
        }
      });
    }
    for (auto& th : pool) th.join();
    size_t fv = n;
    for (size_t t = 0; t < nthreads; ++t) {
      out.members += mem_cnt[t];
      fv = std::min(fv, first_viol[t]);
    }
    if (fv < n) out.violation = cand[fv];
  } else {
    for (size_t i = 0; i < n; ++i) {
      bool is_mem = false, viol = false;
      classify(cand[i], is_mem, viol);
      if (is_mem) ++out.members;
      if (viol && !out.violation) out.violation = cand[i];
    }
  }
  out.passed = !out.violation.has_value();
  return out;
}

// ---------------------------------------------------------------------------
// Uniform outside approximation
// ---------------------------------------------------------------------------

namespace {

Int round_half_down_real(const Real& v) {
  if (v.is_exact()) return round_rat_half_down(v.exact_value());
  for (long p = 64; p <= kMaxPrec; p *= 2) {
    RatInterval iv = v.enclose(p);
    Int a = round_rat_half_down(iv.lo), b = round_rat_half_down(iv.hi);
    if (a == b) return a;
  }
  fail("undecided", "rounding did not settle");
}

RatInterval abs_gap(const Real& xi, const Rat& c, const Rat& eps) {
  Real diff = xi - Real(c);
  return diff.enclose_width(eps).abs();
}

}  // namespace

ExtrinsicResult uniform_extrinsic(const MissingDigitSet& set, const Real& xi,
                                  const Rat& Q, const std::string& branch,
                                  size_t nmax) {
  if (Q < 1) fail("domain", "size bound must be at least 1");
  Int qq = floor_rat(Q);
  std::string mode = branch;
  if (mode == "auto") {
    Int J(static_cast<long>(set.count()));
    mode = (J * J < set.base()) ? "prime" : "progression";
  }
  if (mode != "progression" && mode != "prime")
    fail("domain", "branch must be auto, progression, or prime");

  ExtrinsicResult out;
  out.branch = mode;

  if (mode == "progression") {
    Int p0 = round_half_down_real(xi * Real(Rat(qq)));
    for (size_t nstep = 0; nstep <= nmax; ++nstep) {
      Rat c = make_rat(p0 + Int(static_cast<long>(nstep)), qq);
      ++out.steps;
      MembershipCertificate cert = classify_member(set, c);
      if (!cert.member) {
        out.approximant = c;
        out.certificate = cert;
        Rat eps = make_rat(Int(1), qq * (Int(1) << 32));
        out.error = abs_gap(xi, c, eps);
        out.error_upper = out.error.hi;
        out.realized_k = out.error_upper * Q;
        return out;
      }
    }
    fail("exhausted", "no progression candidate avoided the set");
  }

  // prime branch
  if (!qq.fits_ulong_p() || qq > Int(1) << 31)
    fail("budget-exceeded", "prime scan bound too large");
  Int lo = ceil_rat(Q / 2);
  std::vector<uint64_t> ps = primes_up_to(qq.get_ui());
  for (uint64_t p : ps) {
    if (Int(static_cast<unsigned long>(p)) < lo) continue;
    if (!(Rat(static_cast<unsigned long>(p)) < Q)) break;  // N < Q strictly
    Int N(static_cast<unsigned long>(p));
    ++out.steps;
    Int pN = round_half_down_real(xi * Real(Rat(N)));
    Rat c = make_rat(pN, N);
    MembershipCertificate cert = classify_member(set, c);
    if (!cert.member) {
      out.approximant = c;
      out.certificate = cert;
      Rat eps = make_rat(Int(1), N * (Int(1) << 32));
      out.error = abs_gap(xi, c, eps);
      out.error_upper = out.error.hi;
      out.realized_k = out.error_upper * Q;
      return out;
    }
  }
  fail("exhausted", "no prime-denominator candidate avoided the set");
}

// ---------------------------------------------------------------------------
// Distance floor audit
// ---------------------------------------------------------------------------

LowerBoundCheck extrinsic_lower_bound_check(const MissingDigitSet& set, const Rat& x) {
  if (classify_member(set, x).member)
    fail("member-input", "distance floor applies to points outside the set");
  NearestResult nr = set.nearest_point(x);
  LowerBoundCheck out;
  out.distance = nr.distance;

  Int q(x.get_den());
  Int b = set.base();
  Rat twoq = Rat(2) * Rat(q);
  // floor = b^{-(2bq)^Delta} / (2q) with Delta = log|W| / log b
  Real expo = Real::exp_of(set.delta() * Real::log_of(Rat(2) * Rat(b) * Rat(q)));
  Real floor_val = Real::pow(Rat(1) / Rat(b), expo) * Real(Rat(1) / twoq);
  out.bound = floor_val.enclose(128);

  if (twoq * nr.distance >= 1) {
    // the floor is strictly below 1/(2q) <= distance
    out.pretest = true;
    out.ok = true;
    return out;
  }
  out.ok = compare_or_fail(Real(out.distance), floor_val) > 0;
  return out;
}

}  // namespace cantor
