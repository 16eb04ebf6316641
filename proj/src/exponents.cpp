#include "cantor/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace cantor {

namespace {

// ln over a positive interval: monotone, so take the outer ends.
RatInterval log_of_interval(const RatInterval& x, long prec) {
  RatInterval a = log_enclosure(x.lo, prec);
  RatInterval b = log_enclosure(x.hi, prec);
  return RatInterval(a.lo, b.hi);
}

RatInterval log_of_int(const Int& m, long prec) {
  if (m == 1) return RatInterval::point(Rat(0));
  return log_enclosure_int(m, prec);
}

RatInterval max_interval(const RatInterval& a, const RatInterval& b) {
  return RatInterval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

double rat_to_d(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

// 2^ceil(x * log2(e)) as an Int, a cheap integer stand-in for e^x bounds.
Int exp_cap(double x) {
  long e = std::lround(std::ceil(x * 1.4427)) + 1;
  if (e < 2) e = 2;
  return Int(Int(1) << e);
}

}  // namespace

RatInterval L_function(const Int& m, const Int& n, const Real& xi, const Rat& t,
                       const Rat& tol) {
  if (m < 0) fail("domain", "L takes m >= 0");
  if (m == 0 && n == 0) fail("domain", "the zero vector has no capture scale");
  Int an = n >= 0 ? n : Int(-n);
  for (long prec = 96;; prec *= 2) {
    RatInterval result;
    if (m == 0) {
      result = log_of_int(an, prec) + t;
    } else {
      RatInterval first = log_of_int(m, prec) - t;
      RatInterval second;
      if (xi.is_exact()) {
        Rat r = Rat(m) * xi.exact_value() - Rat(n);
        if (r == 0) fail("exact-hit", "m*xi == n exactly; the norm branch is log 0");
        second = log_enclosure(abs_rat(r), prec) + t;
      } else {
        RatInterval R = xi.enclose(prec) * Rat(m) - Rat(n);
        if (R.contains_zero()) {
          if (prec >= kMaxPrec) fail("enclosure-exhausted", "cannot separate m*xi from n");
          continue;
        }
        second = log_of_interval(R.abs(), prec) + t;
      }
      result = max_interval(first, second);
    }
    if (result.width() <= tol) return result;
    if (prec >= kMaxPrec) fail("enclosure-exhausted", "L enclosure did not reach tolerance");
  }
}

namespace {

struct ProfileCand {
  Int m, n;
  bool from_conv = false;
  RatInterval L;
  bool hit = false;      // exact rational target hit at this vector
  bool refined = false;
};

RatInterval eval_L_or_hit(const Int& m, const Int& n, const Real& xi, const Rat& t,
                          const Rat& tol, bool& hit) {
  hit = false;
  try {
    return L_function(m, n, xi, t, tol);
  } catch (const Error& e) {
    if (e.code() != "exact-hit") throw;
    hit = true;
    for (long prec = 96;; prec *= 2) {
      RatInterval lm = log_of_int(m, prec) - t;
      if (lm.width() <= tol || prec >= kMaxPrec) return lm;
    }
  }
}

// Deterministic interval argmin: certified separation first, one refinement
// round when the fronts overlap, then (hi, m, n) lexicographic.
bool cand_less(ProfileCand& a, ProfileCand& b, const Real& xi, const Rat& t, const Rat& tol2) {
  auto c = interval_cmp(a.L, b.L);
  if (!c) {
    for (ProfileCand* p : {&a, &b})
      if (!p->refined) {
        p->L = eval_L_or_hit(p->m, p->n, xi, t, tol2, p->hit);
        p->refined = true;
      }
    c = interval_cmp(a.L, b.L);
  }
  if (c) return *c < 0;
  if (a.L.hi != b.L.hi) return a.L.hi < b.L.hi;
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

}  // namespace

MinimaProfile minima_profile(const Real& xi, const std::vector<Rat>& t_grid,
                             const Int& den_cap) {
  MinimaProfile out;
  if (t_grid.empty()) return out;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0) fail("domain", "profile grid requires t >= 0");
    if (i > 0 && t_grid[i] < t_grid[i - 1]) fail("domain", "profile grid must be sorted");
  }
  double tmax = rat_to_d(t_grid.back());
  if (tmax > 120.0) fail("budget-exceeded", "t beyond the supported search height");

  Int needed = exp_cap(2.0 * tmax + 2.0);
  if (den_cap > needed) needed = den_cap;

  ContinuedFraction cf(xi);
  size_t guard = 0;
  while (!cf.terminated()) {
    const auto& cs = cf.convergents();
    if (!cs.empty() && cs.back().v > needed) break;
    if (++guard > 200000) fail("search-exhausted", "convergent ladder did not reach the search height");
    try {
      if (!cf.extend()) break;
    } catch (const Error& e) {
      if (e.code() == "enclosure-exhausted")
        fail("search-exhausted", "target enclosure too coarse for the search height");
      throw;
    }
  }
  const std::vector<Convergent>& conv = cf.convergents();
  if (conv.empty()) fail("search-exhausted", "no convergents available");

  // Midpoint accurate enough that the semiconvergent crossing estimates keep
  // their leading digits even at the deepest consulted pair.
  Rat mid;
  if (xi.is_exact()) {
    mid = xi.exact_value();
  } else {
    long pm = std::max(256L, 8L * (long)std::ceil(2.0 * tmax + 2.0));
    RatInterval I = xi.enclose(pm);
    mid = (I.lo + I.hi) / 2;
  }

  RatInterval ln2 = log_enclosure(Rat(2), 96);
  const Rat tol1(1, Int(1) << 40), tol2(1, Int(1) << 80);

  for (const Rat& t : t_grid) {
    double td = rat_to_d(t);
    Int cap1 = exp_cap(td + 1.0);
    Int cap2 = exp_cap(2.0 * td + 1.0);

    std::vector<ProfileCand> cands;
    auto push = [&](const Int& m, const Int& n, bool from_conv) {
      if (m < 0) return;
      if (m == 0 && n == 0) return;
      ProfileCand c;
      c.m = m;
      c.n = m == 0 ? Int(1) : n;
      c.from_conv = from_conv;
      cands.push_back(std::move(c));
    };

    size_t k_stop = conv.size();
    for (size_t k = 0; k < conv.size(); ++k) {
      push(conv[k].v, conv[k].u, true);
      if (conv[k].v > cap2) {  // one convergent past the cap, then stop
        k_stop = k + 1;
        break;
      }
    }
    push(Int(0), Int(1), false);
    push(Int(1), Int(conv[0].u - 1), false);
    push(Int(1), Int(conv[0].u + 1), false);

    double et = std::exp(td), emt = std::exp(-td);
    for (size_t k = 1; k < k_stop; ++k) {
      const Convergent &ck = conv[k], &cp = conv[k - 1];
      if (ck.v > cap2) break;
      push(Int(ck.v - cp.v), Int(ck.u - cp.u), false);
      double dk = std::fabs(rat_to_d(Rat(ck.v) * mid - Rat(ck.u)));
      double dp = std::fabs(rat_to_d(Rat(cp.v) * mid - Rat(cp.u)));
      double vk = rat_to_d(Rat(ck.v)), vp = rat_to_d(Rat(cp.v));
      double denom = vk * emt + dk * et;
      if (!(denom > 0)) continue;
      double astar = (dp * et - vp * emt) / denom;
      if (!(astar > -2.0) || astar > 9e18) continue;
      Int amax;
      if (k + 1 < conv.size()) {
        amax = conv[k + 1].a;
      } else {
        amax = (cap2 - cp.v) / ck.v + 1;
      }
      Int base((long)std::llround(std::floor(astar)));
      for (long off = -1; off <= 2; ++off) {
        Int alpha = base + off;
        if (alpha < 1 || alpha > amax) continue;
        push(Int(alpha * ck.v + cp.v), Int(alpha * ck.u + cp.u), false);
      }
    }

    std::sort(cands.begin(), cands.end(), [](const ProfileCand& a, const ProfileCand& b) {
      if (a.m != b.m) return a.m < b.m;
      if (a.n != b.n) return a.n < b.n;
      return a.from_conv > b.from_conv;  // keep the convergent-flagged copy
    });
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const ProfileCand& a, const ProfileCand& b) {
                              return a.m == b.m && a.n == b.n;
                            }),
                cands.end());

    for (ProfileCand& c : cands) c.L = eval_L_or_hit(c.m, c.n, xi, t, tol1, c.hit);

    // First minimum lives on a convergent of height <= e^t (one extra kept
    // as slack); the second is the best vector independent of it.
    ProfileCand* best1 = nullptr;
    bool past_cap1 = false;
    for (ProfileCand& c : cands) {
      if (!c.from_conv) continue;
      if (c.m > cap1) {
        if (past_cap1) continue;
        past_cap1 = true;  // admit exactly one convergent beyond the cap
      }
      if (!best1 || cand_less(c, *best1, xi, t, tol2)) best1 = &c;
    }
    if (!best1) fail("search-exhausted", "no first-minimum candidate");

    ProfileCand* best2 = nullptr;
    for (ProfileCand& c : cands) {
      if (&c == best1) continue;
      Int det = c.m * best1->n - best1->m * c.n;
      if (det == 0) continue;
      if (!best2 || cand_less(c, *best2, xi, t, tol2)) best2 = &c;
    }
    if (!best2) fail("search-exhausted", "no independent second-minimum candidate");

    ProfileSample s;
    s.t = t;
    s.L1 = best1->L;
    s.L2 = best2->L;
    s.m1 = best1->m;
    s.n1 = best1->n;
    s.m2 = best2->m;
    s.n2 = best2->n;
    s.terminal = best1->hit;
    RatInterval sum = s.L1 + s.L2;
    s.band_ok = sum.lo <= 0 && sum.hi >= -ln2.hi;
    if (!s.band_ok) out.band_ok = false;
    out.samples.push_back(std::move(s));
    if (out.samples.back().terminal) {
      out.terminated = true;
      break;
    }
  }
  return out;
}

std::string profile_csv(const MinimaProfile& profile) {
  std::ostringstream os;
  os << "t,L1_lo,L1_hi,L2_lo,L2_hi,m1,n1,m2,n2\n";
  for (const ProfileSample& s : profile.samples) {
    os << rat_decimal(s.t, 6) << ',' << rat_decimal(s.L1.lo, 12) << ','
       << rat_decimal(s.L1.hi, 12) << ',' << rat_decimal(s.L2.lo, 12) << ','
       << rat_decimal(s.L2.hi, 12) << ',' << s.m1.get_str() << ',' << s.n1.get_str()
       << ',' << s.m2.get_str() << ',' << s.n2.get_str() << '\n';
  }
  return os.str();
}

const char* exponent_kind_name(ExponentKind k) {
  switch (k) {
    case ExponentKind::lambda: return "lambda";
    case ExponentKind::lambda_hat: return "lambda-hat";
    case ExponentKind::lambda_int: return "lambda-int";
    case ExponentKind::lambda_hat_int: return "lambda-hat-int";
    case ExponentKind::lambda_ext: return "lambda-ext";
    case ExponentKind::lambda_hat_ext: return "lambda-hat-ext";
  }
  return "?";
}

namespace {

// Certified enclosure of |xi - u/v|, tight in relative terms; point interval
// for exact targets. Returns nullopt on an exact hit (distance zero).
std::optional<RatInterval> conv_gap(const Real& xi, const Int& u, const Int& v) {
  if (xi.is_exact()) {
    Rat d = abs_rat(xi.exact_value() - make_rat(u, v));
    if (d == 0) return std::nullopt;
    return RatInterval::point(d);
  }
  Rat uv = make_rat(u, v);
  for (long prec = 128; prec <= kMaxPrec; prec *= 2) {
    RatInterval D = (xi.enclose(prec) - uv).abs();
    if (D.lo > 0 && D.width() * Rat(Int(1) << 24) <= D.lo) return D;
  }
  fail("enclosure-exhausted", "cannot certify the convergent gap");
}

bool approx_in_set(const MissingDigitSet& set, const Rat& x) {
  if (x < set.min_point() || x > set.max_point()) return false;
  if (x == set.min_point() || x == set.max_point()) return true;
  // A denominator with a prime outside the base has a unique expansion, so
  // one bad greedy digit settles non-membership without closing the period.
  Int v = x.get_den();
  Int g = gcd(v, set.base());
  while (g > 1) {
    v /= g;
    g = gcd(v, set.base());
  }
  if (v > 1) {
    Rat y = x;
    for (int i = 0; i < 20000; ++i) {
      y *= set.base();
      Int d = floor_rat(y);
      y -= Rat(d);
      if (!set.has_digit(d)) return false;
    }
    // 20000 good digits and still periodic: close the cycle in machine words
    // when the denominator allows it.
    if (Int(set.base() * x.get_den()) < (Int(1) << 62))
      return set.member_fast((int64_t)mpz_get_ui(mpq_numref(x.get_mpq_t())),
                             (int64_t)mpz_get_ui(mpq_denref(x.get_mpq_t())));
  }
  return set.is_member(x).member;
}

struct WitnessRow {
  Int u, v;
  bool intrinsic = false;
  Rat num_lo, num_hi;  // enclosure ends of -ln(v * |xi - u/v|)
  Rat lam_lo, lam_hi;  // the above over ln v
};

struct Acc {
  bool any = false;
  Rat best_lo{0}, best_hi{0};
  Int wp{0}, wq{1}, wQ{1};
};

void acc_update(Acc& a, const WitnessRow& w) {
  if (!a.any || w.lam_lo > a.best_lo) {
    a.best_lo = w.lam_lo;
    a.wp = w.u;
    a.wq = w.v;
    a.wQ = w.v;
  }
  if (!a.any || w.lam_hi > a.best_hi) a.best_hi = w.lam_hi;
  a.any = true;
}

}  // namespace

ExponentScan estimate_exponents(const MissingDigitSet& set, const Real& xi, const Int& depth) {
  if (depth < 2) fail("depth-too-small", "need depth >= 2");

  ContinuedFraction cf(xi);
  size_t guard = 0;
  while (!cf.terminated()) {
    const auto& cs = cf.convergents();
    if (!cs.empty() && cs.back().v > depth) break;
    if (++guard > 200000) fail("budget-exceeded", "convergent ladder too long");
    try {
      if (!cf.extend()) break;
    } catch (const Error& e) {
      if (e.code() == "enclosure-exhausted")
        fail("enclosure-exhausted", "target enclosure too coarse for the requested depth");
      throw;
    }
  }

  ExponentScan scan;
  scan.depth = depth;

  std::vector<WitnessRow> rows;
  for (const Convergent& c : cf.convergents()) {
    if (c.v > depth) break;
    auto D = conv_gap(xi, c.u, c.v);
    if (!D) continue;  // the exact terminal convergent of a rational target
    bool inside = approx_in_set(set, make_rat(c.u, c.v));
    ++scan.convergents_used;
    if (inside)
      ++scan.intrinsic_count;
    else
      ++scan.extrinsic_count;
    if (c.v < 2) continue;  // Q = 1 certifies every exponent; no information
    WitnessRow w;
    w.u = c.u;
    w.v = c.v;
    w.intrinsic = inside;
    RatInterval lvd = log_of_interval(RatInterval(Rat(c.v) * D->lo, Rat(c.v) * D->hi), 96);
    w.num_lo = -lvd.hi;
    w.num_hi = -lvd.lo;
    RatInterval lq = log_enclosure_int(c.v, 96);
    w.lam_lo = w.num_lo / lq.hi;
    w.lam_hi = w.num_hi / lq.lo;
    rows.push_back(std::move(w));
  }
  if (scan.convergents_used < 3) fail("depth-too-small", "fewer than three classified convergents");

  Acc all, in, ex;
  for (const WitnessRow& w : rows) {
    acc_update(all, w);
    acc_update(w.intrinsic ? in : ex, w);
  }

  // Uniform-kind floors: evaluate the best-at-scale exponent at the segment
  // ends of the sampled range and take the minimum.
  std::vector<Int> q_samples;
  for (size_t i = 0; i < rows.size(); ++i) {
    q_samples.push_back(rows[i].v);
    Int edge = (i + 1 < rows.size()) ? Int(rows[i + 1].v - 1) : depth;
    if (edge > depth) edge = depth;
    if (edge >= 2) q_samples.push_back(edge);
  }
  std::sort(q_samples.begin(), q_samples.end());
  q_samples.erase(std::unique(q_samples.begin(), q_samples.end()), q_samples.end());

  struct Hat {
    bool any = false;
    Rat floor_lo{0};
  };
  Hat hat_all, hat_in, hat_ex;
  auto hat_step = [&](Hat& h, const Rat& e_lo) {
    if (!h.any || e_lo < h.floor_lo) h.floor_lo = e_lo;
    h.any = true;
  };
  for (const Int& Q : q_samples) {
    RatInterval lQ = log_enclosure_int(Q, 96);
    Rat ea(-1), ei(-1), ee(-1);
    bool va = false, vi = false, ve = false;
    for (const WitnessRow& w : rows) {
      if (w.v > Q) break;
      Rat e = w.num_lo / lQ.hi;
      if (!va || e > ea) ea = e;
      va = true;
      if (w.intrinsic) {
        if (!vi || e > ei) ei = e;
        vi = true;
      } else {
        if (!ve || e > ee) ee = e;
        ve = true;
      }
    }
    if (va) hat_step(hat_all, ea);
    if (vi) hat_step(hat_in, ei);
    if (ve) hat_step(hat_ex, ee);
  }

  auto emit_plain = [&](ExponentKind k, const Acc& a) {
    ExponentEstimate e;
    e.kind = k;
    e.certified = a.any;
    e.lower_witness = a.best_lo;
    e.upper_diagnostic = a.best_hi;
    e.witness_p = a.wp;
    e.witness_q = a.wq;
    e.witness_Q = a.wQ;
    e.data_depth = depth;
    scan.estimates.push_back(std::move(e));
  };
  auto emit_hat = [&](ExponentKind k, const Hat& h) {
    ExponentEstimate e;
    e.kind = k;
    e.certified = false;
    e.lower_witness = h.any ? h.floor_lo : Rat(0);
    e.upper_diagnostic = e.lower_witness;
    e.witness_p = 0;
    e.witness_q = 1;
    e.witness_Q = 1;
    e.data_depth = depth;
    scan.estimates.push_back(std::move(e));
  };
  emit_plain(ExponentKind::lambda, all);
  emit_hat(ExponentKind::lambda_hat, hat_all);
  emit_plain(ExponentKind::lambda_int, in);
  emit_hat(ExponentKind::lambda_hat_int, hat_in);
  emit_plain(ExponentKind::lambda_ext, ex);
  emit_hat(ExponentKind::lambda_hat_ext, hat_ex);

  Rat both = in.any ? in.best_lo : Rat(0);
  if (ex.any && ex.best_lo > both) both = ex.best_lo;
  scan.identity_ok = !all.any || all.best_lo == both;

  scan.ordering_ok = (!hat_all.any || !all.any || hat_all.floor_lo <= all.best_lo) &&
                     (!hat_in.any || !in.any || hat_in.floor_lo <= in.best_lo) &&
                     (!hat_ex.any || !ex.any || hat_ex.floor_lo <= ex.best_lo);

  scan.dual_bound_ok = true;
  scan.dual_identity_ok = true;
  if (hat_ex.any && in.any && in.best_lo > 0) {
    Rat cap = Rat(1) / in.best_lo;
    scan.dual_bound_ok = hat_ex.floor_lo <= cap + Rat(1, 8);
    Rat target = cap < 1 ? cap : Rat(1);
    scan.dual_identity_ok = abs_rat(hat_ex.floor_lo - target) <= Rat(1, 4);
  }
  return scan;
}

}  // namespace cantor
