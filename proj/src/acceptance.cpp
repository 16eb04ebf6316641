#include "cantor/acceptance.hpp"

#include "cantor/contfrac.hpp"
#include "cantor/digitset.hpp"
#include "cantor/exponents.hpp"
#include "cantor/extrinsic.hpp"
#include "cantor/ifs.hpp"
#include "cantor/intrinsic.hpp"
#include "cantor/targets.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace cantor {

namespace {

MissingDigitSet c32() { return MissingDigitSet(Int(3), {Int(0), Int(2)}); }

std::string frac(size_t num, size_t den) {
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

// upper bound on L / q^delta for the ratio corpora
Rat ratio_upper(const Int& L, const Int& q, const MissingDigitSet& set) {
  if (q == 1) return Rat(L);
  RatInterval p = Real::pow(Rat(q), set.delta()).enclose(96);
  return Rat(L) / p.lo;
}

// --- criterion 1: intrinsic approximants for random addresses ---------------

CriterionResult crit_dirichlet(uint64_t seed, int) {
  MissingDigitSet set = c32();
  RationalIFS ifs = set.to_ifs();
  std::mt19937_64 rng(seed);
  const long qs[] = {3, 9, 27, 81, 243};
  size_t pass = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Address addr;
    for (int i = 0; i < 200; ++i) addr.period.push_back(rng() % 2);
    Rat xi = periodic_fixed_point(ifs, addr)[0];
    for (long Q : qs) {
      ++total;
      auto r = intrinsic_dirichlet(ifs, addr, Rat(Q));
      bool q_ok = decide_power_bound(Rat(r.q_reduced), Int(3), Rat(Q), Int(2));
      bool err_ok = abs_rat(xi - r.approximant) * Rat(Q) * Rat(r.q_reduced) <= Rat(3);
      // membership by witness: the approximant is the value of its own
      // address over the digit maps (walking the expansion would cost O(q))
      bool member_ok = periodic_fixed_point(ifs, r.approx_address)[0] == r.approximant;
      if (q_ok && err_ok && member_ok && r.q_bound_ok && r.error_bound_ok) ++pass;
    }
  }
  CriterionResult c{1, "intrinsic-dirichlet", pass == total, true,
                    frac(pass, total) + " certified", 0};
  return c;
}

// --- criterion 2: counting bound over every N up to 2000 --------------------

CriterionResult crit_counting(uint64_t, int jobs) {
  MissingDigitSet set = c32();
  auto cat = enumerate_rationals(set, Int(2000), jobs, 2000000);
  size_t ok = 0;
  for (long n = 1; n <= 2000; ++n) {
    if (counting_bound_check(set, cat, Int(n)).bound_ok) ++ok;
  }
  size_t at4 = cat.count_up_to(Int(4));
  bool pass = (ok == 2000) && (at4 == 6);
  CriterionResult c{2, "counting-bound", pass, true,
                    frac(ok, 2000) + " bounds hold, |S(C,4)|=" + std::to_string(at4), 0};
  return c;
}

// --- criterion 3: slope diagnostic (informational) ---------------------------

CriterionResult crit_counting_fit(uint64_t, int jobs) {
  MissingDigitSet set = c32();
  auto cat = enumerate_rationals(set, Int(10000), jobs, 50000000);
  std::vector<Int> grid{Int(10), Int(100), Int(1000), Int(10000)};
  auto fit = counting_exponent_fit(cat, grid);
  bool in_band = fit.slope >= 0.55 && fit.slope <= 0.75;
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << "slope " << fit.slope << (in_band ? " within" : " OUTSIDE")
     << " [0.55,0.75] (diagnostic)";
  // informational: logged, never fatal; a band miss shows as MISS
  CriterionResult c{3, "counting-slope", in_band, false, os.str(), 0};
  return c;
}

// --- criterion 4: period lengths against the closed form --------------------

CriterionResult crit_periods(uint64_t, int jobs) {
  MissingDigitSet set = c32();
  auto cat = enumerate_rationals(set, Int(5000), jobs, 10000000);
  size_t agree = 0, total = 0;
  Rat max_ratio(0);
  for (const auto& [q, p] : cat.points) {
    Rat x = make_rat(p, q);
    ++total;
    auto m = expand(x, Int(3));
    auto f = expansion_lengths_formula(x, Int(3));
    if (m.pre.size() == f.preperiod && m.period.size() == f.period) ++agree;
    Rat r = ratio_upper(Int(static_cast<long>(f.period)), q, set);
    if (r > max_ratio) max_ratio = r;
  }
  CriterionResult c{4, "period-closed-form", agree == total, true,
                    frac(agree, total) + " agree, max L/q^delta <= " + rat_decimal(max_ratio, 4),
                    0};
  return c;
}

// --- criterion 5: distance floor for non-members ----------------------------

CriterionResult crit_lower_bound(uint64_t, int) {
  MissingDigitSet set = c32();
  size_t ok = 0, total = 0;
  for (int64_t q = 1; q <= 500; ++q) {
    for (int64_t p = 0; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (set.member_fast(p, q)) continue;
      ++total;
      auto chk = extrinsic_lower_bound_check(set, make_rat(Int(p), Int(q)));
      if (chk.ok) ++ok;
    }
  }
  bool spot = set.nearest_point(Rat(1, 2)).distance == Rat(1, 6);
  CriterionResult c{5, "extrinsic-floor", ok == total && spot, true,
                    frac(ok, total) + " floors cleared, d(C,1/2)=1/6 " +
                        (spot ? "confirmed" : "FAILED"),
                    0};
  return c;
}

// --- criterion 6: Minkowski band along the profile grid ---------------------

CriterionResult crit_minkowski(uint64_t, int) {
  std::vector<Rat> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(make_rat(Int(i), Int(2)));
  size_t ok = 0, total = 0;
  for (const Real& xi : {target_sqrt2_minus_1(), target_golden(), target_lacunary3()}) {
    auto prof = minima_profile(xi, grid);
    for (const auto& s : prof.samples) {
      ++total;
      if (s.band_ok) ++ok;
    }
  }
  CriterionResult c{6, "minkowski-band", ok == total && total == 93, true,
                    frac(ok, total) + " samples inside [-log2, 0]", 0};
  return c;
}

// --- criterion 7: convergent sandwich on 20 targets -------------------------

CriterionResult crit_sandwich(uint64_t, int) {
  std::vector<Real> targets;
  for (long k : {2, 3, 5, 6, 7, 8, 10, 11, 12, 13}) targets.push_back(Real::sqrt_of(Rat(k)));
  targets.push_back(target_golden());
  targets.push_back(target_sqrt2_minus_1());
  targets.push_back(Real::pi());
  targets.push_back(Real::e());
  targets.push_back(Real::log_of(Rat(2)));
  targets.push_back(Real::root_of(Rat(2), 3));
  targets.push_back(Real::root_of(Rat(3), 3));
  targets.push_back(Real::root_of(Rat(5), 3));
  targets.push_back(Real::root_of(Rat(2), 5));
  targets.push_back(Real::pi() + Real::e());
  size_t ok = 0, total = 0;
  for (const Real& x : targets) {
    ContinuedFraction cf(x);
    for (size_t t = 0; t < 30; ++t) {
      ++total;
      auto rep = convergent_sandwich_check(x, cf, t);
      if (rep.lower_ok && rep.upper_ok) ++ok;
    }
  }
  CriterionResult c{7, "convergent-sandwich", ok == total && total == 600, true,
                    frac(ok, total) + " two-sided bounds hold", 0};
  return c;
}

// --- criterion 8: three-stage staircase with audited stage 1 ----------------

CriterionResult crit_liouville(uint64_t, int jobs) {
  RationalIFS ifs = c32().to_ifs();
  auto build = liouville_build(ifs, 0, 1, PhiSchedule::inverse_ceil_log2(), 3, Int(1));
  bool ok = build.stages.size() == 3 && build.monotone_ok;
  for (const auto& st : build.stages) {
    ok = ok && st.contraction_ok && st.legendre_ok && st.gap_ok;
  }
  ok = ok && build.a.size() == 4 && build.a[0] == 1 && build.a[1] == 17 &&
       build.a[2] == 536870929;
  ok = ok && build.stages[0].theta && *build.stages[0].theta == Rat(2, 3);
  ok = ok && build.stages[1].theta && *build.stages[1].theta == Rat(86093444, 129140163);
  ok = ok && build.stages[0].big_q_value && *build.stages[0].big_q_value == Rat(4782969, 2);
  ok = ok && build.stages[0].phi_value && *build.stages[0].phi_value == Rat(1, 22);
  ok = ok && build.stages[0].margin && *build.stages[0].margin == Rat(1, 52612659);

  auto scan = liouville_witness_check(build, 1, jobs);
  ok = ok && scan.passed && scan.q_limit == 2391484 && scan.candidates == 1 &&
       scan.members == 1 && !scan.violation;

  size_t a3_bits = mpz_sizeinbase(build.a[3].get_mpz_t(), 2);
  CriterionResult c{8, "staircase-stages", ok, true,
                    "3 stages certified, stage-1 scan " +
                        std::string(scan.passed ? "passed" : "FAILED") + " (" +
                        std::to_string(scan.candidates) + " candidate), a4 ~ 2^" +
                        std::to_string(a3_bits - 1),
                    0};
  return c;
}

// --- criterion 9: uniform outside approximation ------------------------------

CriterionResult crit_uniform(uint64_t seed, int) {
  MissingDigitSet set = c32();
  RationalIFS ifs = set.to_ifs();
  std::mt19937_64 rng(seed);
  size_t ok = 0, total = 0;
  Rat max_k(0);
  for (int trial = 0; trial < 50; ++trial) {
    Address addr;
    size_t preL = rng() % 5, perL = 1 + rng() % 8;
    for (size_t i = 0; i < preL; ++i) addr.pre.push_back(rng() % 2);
    for (size_t i = 0; i < perL; ++i) addr.period.push_back(rng() % 2);
    Rat xi = periodic_fixed_point(ifs, addr)[0];
    for (long Q : {10L, 100L, 1000L}) {
      ++total;
      auto r = uniform_extrinsic(set, Real(xi), Rat(Q));
      if (!r.certificate.member && r.realized_k > 0) {
        ++ok;
        if (r.realized_k > max_k) max_k = r.realized_k;
      }
    }
  }
  auto spot = uniform_extrinsic(set, Real(Rat(0)), Rat(3));
  bool spot_ok = spot.approximant == Rat(4, 3) && spot.realized_k == 4;
  CriterionResult c{9, "uniform-extrinsic", ok == total && spot_ok, true,
                    frac(ok, total) + " certified outside, max K " + rat_decimal(max_k, 3) +
                        ", xi=0 Q=3 -> 4/3" + (spot_ok ? "" : " FAILED"),
                    0};
  return c;
}

// --- criterion 10: digit-pattern scans ---------------------------------------

CriterionResult crit_patterns(uint64_t, int jobs) {
  MissingDigitSet set = c32();
  auto scan1 = safe_prime_scan(Int(3), Int(10000));
  auto scan2 = safe_prime_scan(Int(3), Int(10000));
  bool stable = scan1.size() == scan2.size();
  for (size_t i = 0; stable && i < scan1.size(); ++i) {
    stable = scan1[i].p == scan2[i].p && scan1[i].order == scan2[i].order &&
             scan1[i].index == scan2[i].index;
  }

  auto g1 = gcd_pattern(Int(3), {Int(0), Int(2)});
  auto g2 = gcd_pattern(Int(3), {Int(2), Int(0)});
  bool gcd_ok = g1.g == 2 && g2.g == 2;

  auto cat = enumerate_rationals(set, Int(1000), jobs, 1000000);
  Rat max_ratio(0);
  for (const auto& [q, p] : cat.points) {
    auto f = expansion_lengths_formula(make_rat(p, q), Int(3));
    Rat r = ratio_upper(Int(static_cast<long>(f.period)), q, set);
    if (r > max_ratio) max_ratio = r;
  }
  bool finite = max_ratio > 0;

  CriterionResult c{10, "pattern-scans", stable && gcd_ok && finite, true,
                    std::to_string(scan1.size()) + " safe primes stable, gcds " +
                        (gcd_ok ? "match" : "MISMATCH") + ", max L/q^delta <= " +
                        rat_decimal(max_ratio, 4),
                    0};
  return c;
}

// --- criterion 11: address round trips over three systems --------------------

CriterionResult crit_roundtrip(uint64_t seed, int) {
  std::vector<RationalIFS> systems;
  systems.push_back(c32().to_ifs());
  systems.push_back(parse_ifs_text(
      "dim 2 map A 0 1 -1 0 q 3 b 0 0 s 1 map A 0 1 -1 0 q 3 b 2 2 s 3"));
  systems.push_back(parse_ifs_text("dim 1 map A 1 q 3 b 0 s 1 map A -1 q 5 b 4 s 5"));
  std::mt19937_64 rng(seed);
  size_t ok = 0, total = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const RationalIFS& sys = systems[static_cast<size_t>(trial) % 3];
    size_t branches = sys.branch_count();
    Address addr;
    size_t preL = rng() % 6, perL = 1 + rng() % 10;
    for (size_t i = 0; i < preL; ++i) addr.pre.push_back(rng() % branches);
    for (size_t i = 0; i < perL; ++i) addr.period.push_back(rng() % branches);
    ++total;
    RatVec x = periodic_fixed_point(sys, addr);
    auto rec = rational_to_address(sys, x);
    RatVec y = periodic_fixed_point(sys, rec.address);
    if (sup_dist(x, y) == 0) ++ok;
  }
  CriterionResult c{11, "address-round-trip", ok == total && total == 10000, true,
                    frac(ok, total) + " exact round trips", 0};
  return c;
}

using CritFn = std::function<CriterionResult(uint64_t, int)>;

struct Entry {
  const char* name;
  CritFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"dirichlet", crit_dirichlet},   {"counting", crit_counting},
      {"counting-fit", crit_counting_fit}, {"periods", crit_periods},
      {"lower-bound", crit_lower_bound},   {"minkowski", crit_minkowski},
      {"sandwich", crit_sandwich},     {"liouville", crit_liouville},
      {"uniform", crit_uniform},       {"patterns", crit_patterns},
      {"roundtrip", crit_roundtrip},
  };
  return e;
}

}  // namespace

const std::vector<std::string>& acceptance_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : entries()) n.emplace_back(e.name);
    return n;
  }();
  return names;
}

SuiteResult run_acceptance(const std::vector<std::string>& suites, uint64_t seed, int jobs,
                           std::ostream& log, bool timing) {
  std::vector<size_t> chosen;
  if (suites.empty()) {
    for (size_t i = 0; i < entries().size(); ++i) chosen.push_back(i);
  } else {
    for (const std::string& s : suites) {
      bool found = false;
      for (size_t i = 0; i < entries().size(); ++i) {
        if (entries()[i].name == s) {
          chosen.push_back(i);
          found = true;
          break;
        }
      }
      if (!found) fail("unknown-suite", "no acceptance suite named '" + s + "'");
    }
  }

  SuiteResult out;
  for (size_t i : chosen) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = entries()[i].fn(seed, jobs);
    } catch (const Error& e) {
      r.index = static_cast<int>(i) + 1;
      r.name = entries()[i].name;
      r.pass = false;
      r.fatal = true;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    log << "criterion-" << (r.index < 10 ? "0" : "") << r.index << " " << r.name << ": "
        << (r.pass ? "PASS" : (r.fatal ? "FAIL" : "MISS")) << " (" << r.detail << ")";
    if (timing) log << " [" << static_cast<long>(r.seconds * 1000) << " ms]";
    log << "\n";
    log.flush();
    if (r.fatal && !r.pass) out.all_pass = false;
    out.results.push_back(std::move(r));
  }
  return out;
}

}  // namespace cantor
