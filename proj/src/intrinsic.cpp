#include "cantor/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace cantor {

namespace {

Int int_pow(const Int& b, size_t e) {
  Int r(1);
  for (size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// floor(log x / log base) for rational x >= 1, base > 1.
size_t floor_log_ratio(const Rat& x, const Rat& base) {
  if (x < 1) fail("domain", "floor log ratio needs x >= 1");
  if (auto r = rational_log_ratio(x, base)) {
    Int f = floor_rat(*r);
    if (f < 0 || !f.fits_ulong_p()) fail("budget-exceeded", "log ratio out of range");
    return f.get_ui();
  }
  Real v = Real::log_of(x) / Real::log_of(base);
  for (long prec = 128; prec <= kMaxPrec; prec *= 2) {
    RatInterval e = v.enclose(prec);
    Int fl = floor_rat(e.lo), fh = floor_rat(e.hi);
    if (fl == fh) {
      if (fl < 0 || !fl.fits_ulong_p()) fail("budget-exceeded", "log ratio out of range");
      return fl.get_ui();
    }
    // The straddled integer t would mean x == base^t, an exact relation the
    // ratio test above would have found; keep refining.
  }
  fail("undecided", "log ratio floor did not separate");
}

Rat tau_of_word(const RationalIFS& ifs, const std::vector<size_t>& w) {
  Rat t(1);
  for (size_t j : w) t *= ifs.maps()[j].tau();
  return t;
}

Int q_of_word(const RationalIFS& ifs, const std::vector<size_t>& w) {
  Int q(1);
  for (size_t j : w) q *= ifs.maps()[j].q;
  return q;
}

Int lcm_denominator(const RatVec& v) {
  Int l(1);
  for (const Rat& c : v) l = lcm(l, Int(c.get_den()));
  return l;
}

}  // namespace

IntrinsicResult intrinsic_dirichlet(const RationalIFS& ifs, const Address& addr, const Rat& Q) {
  if (Q < 1) fail("domain", "approximation quality Q must be at least 1");
  const size_t J = ifs.branch_count();
  if (J < 2) fail("domain", "need at least two maps for a block collision");

  IntrinsicResult res;
  const bool md = ifs.missing_digit().has_value();
  size_t N;
  if (md) {
    const Int& b = ifs.missing_digit()->base;
    Int nf = floor_power(Q, Int(static_cast<long>(J)), b);
    if (!nf.fits_ulong_p()) fail("budget-exceeded", "orbit length does not fit");
    N = nf.get_ui();
  } else {
    // Composition-denominator parametrization; meaningful only once Q clears
    // the single-step denominator bound B = S (2 q_max)^d.
    Rat B = Rat(ifs.s_product());
    Rat twoq = Rat(2 * ifs.max_q());
    for (int i = 0; i < ifs.dim(); ++i) B *= twoq;
    if (Q < B) fail("parameter-too-small", "Q below the composition bound " + rat_str(B));
    N = floor_log_ratio(Q, B);
  }
  if (N == 0) N = 1;

  size_t l = 0;
  {
    Int jp(static_cast<long>(J));
    Int acc = jp;
    while (acc <= static_cast<long>(N)) {
      ++l;
      acc *= jp;
    }
  }

  auto [n, m] = pigeonhole_witness(addr, N, l);
  std::vector<size_t> u1 = addr.prefix(n);
  std::vector<size_t> u2(m);
  for (size_t i = 0; i < m; ++i) u2[i] = addr.at(n + i);

  res.orbit_len = N;
  res.prefix_len = l;
  res.split_n = n;
  res.split_m = m;
  res.approx_address = Address{u1, u2};

  RatVec value = periodic_fixed_point(ifs, res.approx_address);
  res.approximant_vec = value;
  res.approximant = value[0];
  res.q_reduced = lcm_denominator(value);

  Rat tau1 = tau_of_word(ifs, u1);
  Rat tau2 = tau_of_word(ifs, u2);
  Rat tl(1);
  {
    Rat t = ifs.tau();
    for (size_t i = 0; i < l; ++i) tl *= t;
  }
  res.error_bound = ifs.diameter_ub() * tl * tau1 * tau2 / (Rat(1) - tau2);

  if (md) {
    const Int& b = ifs.missing_digit()->base;
    res.q_unreduced = int_pow(b, n) * (int_pow(b, m) - 1);
    if (res.q_unreduced % res.q_reduced != 0) {
      fail("bound-violation", "reduced denominator does not divide the structural one");
    }
    res.q_bound_ok = decide_power_bound(Rat(res.q_reduced), b, Q, Int(static_cast<long>(J)));
    // Exact chain: q_red * EB <= diam * b^-l and b^(l+1) > Q give EB <= b/(Q q).
    res.error_bound_ok = res.error_bound * Rat(res.q_reduced) * Q <= Rat(b);
    if (Rat(int_pow(b, l + 1)) <= Q) {
      fail("bound-violation", "prefix length certificate b^(l+1) > Q failed");
    }
    if (ifs.dim() == 1) {
      Rat bound = Rat(b) / (Q * Rat(res.q_reduced));
      Real xi = address_value(ifs, addr);
      Real diff = xi - Real(res.approximant);
      res.enclosure_cross_check = false;
      for (long prec = 128; prec <= (1L << 20); prec *= 2) {
        RatInterval g = diff.enclose(prec).abs();
        if (g.hi <= bound) {
          res.enclosure_cross_check = true;
          break;
        }
        if (g.lo > bound) break;
      }
    } else {
      res.enclosure_cross_check = true;
    }
  } else {
    Int q1 = q_of_word(ifs, u1);
    Int q2 = q_of_word(ifs, u2);
    Int comp = ifs.s_product() * q1;
    Int twoq2 = 2 * q2;
    for (int i = 0; i < ifs.dim(); ++i) comp *= twoq2;
    if (res.q_reduced > comp) {
      fail("bound-violation", "composition denominator bound failed");
    }
    res.q_unreduced = comp;
    res.q_bound_ok = Rat(res.q_reduced) <= Q;
    res.error_bound_ok = true;  // EB is exact by construction; no sharper claim certified here
    res.enclosure_cross_check = true;
  }

  // Constant-free comparison value q^mu * (log Q)^(log tau / log J); informative
  // only, and undefined at Q == 1.
  if (Q > 1 && ifs.dim() == 1) {
    Real mu = ifs.similarity_exponent();
    Real lt = Real::log_of(ifs.tau()) / Real::log_of(Rat(static_cast<long>(J)));
    Real lq = Real::log_of(Rat(res.q_reduced));
    Real llQ = Real::log_of(Real::log_of(Q));
    Real ref = Real::exp_of(mu * lq + lt * llQ);
    res.reference_form = ref.enclose(96);
  }
  return res;
}

size_t RationalPointCatalog::count_up_to(const Int& n) const {
  std::pair<Int, Int> probe{n + 1, Int(-1)};
  auto it = std::lower_bound(points.begin(), points.end(), probe);
  return static_cast<size_t>(it - points.begin());
}

namespace {

void enumerate_range(const MissingDigitSet& set, int64_t q_from, int64_t q_to, int stride,
                     const Rat& minp, const Rat& maxp,
                     std::vector<std::pair<Int, Int>>* out, uint64_t* examined) {
  for (int64_t q = q_from; q <= q_to; q += stride) {
    Rat lo = minp * Rat(static_cast<long>(q));
    Rat hi = maxp * Rat(static_cast<long>(q));
    int64_t pl = static_cast<int64_t>(floor_rat(lo).get_si());
    while (Rat(static_cast<long>(pl)) < lo) ++pl;
    int64_t ph = static_cast<int64_t>(floor_rat(hi).get_si());
    for (int64_t p = pl; p <= ph; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ++*examined;
      if (set.member_fast(p, q)) out->emplace_back(Int(static_cast<long>(q)), Int(static_cast<long>(p)));
    }
  }
}

}  // namespace

RationalPointCatalog enumerate_rationals(const MissingDigitSet& set, const Int& limit, int jobs,
                                         uint64_t budget) {
  if (!limit.fits_slong_p()) fail("budget-exceeded", "enumeration limit too large");
  int64_t n = limit.get_si();
  if (n < 1) fail("domain", "enumeration limit must be positive");
  // member_fast needs b*q to fit comfortably in int64.
  if (!set.base().fits_slong_p() || set.base().get_si() > (int64_t(1) << 20) ||
      n > (int64_t(3) << 40)) {
    fail("budget-exceeded", "enumeration limit outside the fast-walk range");
  }
  // Candidate count ~ (3/pi^2) diam n^2; refuse work beyond the budget.
  {
    Rat cand = set.diameter() * Rat(static_cast<long>(n)) * Rat(static_cast<long>(n));
    if (cand > Rat(Int(budget) * 4)) {
      fail("budget-exceeded", "candidate count exceeds enumeration budget");
    }
  }

  Rat minp = set.min_point(), maxp = set.max_point();
  int workers = std::max(1, jobs);
  std::vector<std::vector<std::pair<Int, Int>>> parts(static_cast<size_t>(workers));
  std::vector<uint64_t> counts(static_cast<size_t>(workers), 0);
  if (workers == 1) {
    enumerate_range(set, 1, n, 1, minp, maxp, &parts[0], &counts[0]);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < workers; ++t) {
      threads.emplace_back([&, t]() {
        enumerate_range(set, t + 1, n, workers, minp, maxp, &parts[static_cast<size_t>(t)],
                        &counts[static_cast<size_t>(t)]);
      });
    }
    for (auto& th : threads) th.join();
  }

  RationalPointCatalog cat;
  cat.limit = limit;
  cat.method = "denominator-walk";
  size_t total = 0;
  for (const auto& v : parts) total += v.size();
  cat.points.reserve(total);
  for (auto& v : parts) {
    for (auto& pq : v) cat.points.push_back(std::move(pq));
  }
  std::sort(cat.points.begin(), cat.points.end());
  return cat;
}

CountingCheck counting_bound_check(const MissingDigitSet& set, const RationalPointCatalog& cat,
                                   const Int& n) {
  if (n > cat.limit) fail("domain", "count query beyond catalog limit");
  CountingCheck out;
  out.n = n;
  out.count = cat.count_up_to(n);
  long j = static_cast<long>(set.count());
  Rat lhs = Rat(static_cast<long>(out.count)) / Rat(j * j);
  Rat x = set.diameter() * Rat(n) * Rat(n);
  if (out.count == 0) {
    out.bound_ok = true;
    return out;
  }
  // count/J^2 <= (diam n^2)^delta, decided exactly or by certified enclosures.
  int c = compare_power(lhs, x, Int(j), set.base());
  out.bound_ok = c <= 0;
  return out;
}

ExponentFit counting_exponent_fit(const RationalPointCatalog& cat, const std::vector<Int>& grid) {
  std::vector<std::pair<double, double>> pts;
  for (const Int& n : grid) {
    size_t c = cat.count_up_to(n);
    if (c == 0) continue;
    pts.emplace_back(std::log(n.get_d()), std::log(static_cast<double>(c)));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) fail("insufficient-data", "need at least three usable grid points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = static_cast<double>(pts.size());
  double denom = k * sxx - sx * sx;
  ExponentFit fit;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  fit.points = pts.size();
  return fit;
}

}  // namespace cantor
