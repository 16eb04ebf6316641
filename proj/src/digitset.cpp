#include "cantor/digitset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace cantor {

namespace {

Int step_state(const Int& n, const Int& q, const Int& b) { return Int((b * n) % q); }

// Brent cycle location for the orbit n -> b*n mod q starting at p.
std::pair<size_t, size_t> orbit_cycle(const Int& p, const Int& q, const Int& b,
                                      size_t max_steps) {
  size_t power = 1, lam = 1, steps = 0;
  Int tortoise = p;
  Int hare = step_state(p, q, b);
  while (tortoise != hare) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = step_state(hare, q, b);
    ++lam;
    if (++steps > max_steps) fail("budget-exceeded", "expansion cycle search exceeded step budget");
  }
  Int a = p, c = p;
  for (size_t i = 0; i < lam; ++i) c = step_state(c, q, b);
  size_t mu = 0;
  while (a != c) {
    a = step_state(a, q, b);
    c = step_state(c, q, b);
    if (++mu > max_steps) fail("budget-exceeded", "expansion tail search exceeded step budget");
  }
  return {mu, lam};
}

// Greedy digits of p/q without any length checks; caller knows mu+lam.
BaseExpansion walk_expansion(const Int& p, const Int& q, const Int& b, size_t max_steps) {
  auto [mu, lam] = orbit_cycle(p, q, b, max_steps);
  BaseExpansion e;
  Int n = p;
  for (size_t i = 0; i < mu + lam; ++i) {
    Int t = b * n;
    Int d = t / q;
    n = t - d * q;
    if (i < mu) {
      e.pre.push_back(d);
    } else {
      e.period.push_back(d);
    }
  }
  e.terminating = (e.period.size() == 1 && e.period[0] == 0);
  return e;
}

void check_unit_range(const Rat& x) {
  if (x < 0 || x > 1) fail("domain", "expansion is defined on [0,1]");
}

}  // namespace

ExpansionLengths expansion_lengths_formula(const Rat& x, const Int& base,
                                           const FactorBudget& budget) {
  check_unit_range(x);
  Int q = (x == 1) ? Int(1) : Int(x.get_den());
  Int c2 = q;
  for (Int g = gcd(c2, base); g > 1; g = gcd(c2, base)) c2 /= g;
  Int c1 = q / c2;
  size_t v = 0;
  for (Int t = c1; t > 1;) {
    t /= gcd(t, base);
    ++v;
  }
  Int L = mult_order(base, c2, budget);
  if (!L.fits_ulong_p()) fail("budget-exceeded", "period length does not fit a machine word");
  // x == 1 only has the all-(b-1) expansion, which does not terminate
  return {v, static_cast<size_t>(L.get_ui()), c2 == 1 && x != 1};
}

BaseExpansion expand(const Rat& x, const Int& base, const FactorBudget& budget) {
  check_unit_range(x);
  if (base < 2) fail("domain", "base must be at least 2");
  BaseExpansion e;
  if (x == 1) {
    e.period = {base - 1};
  } else {
    e = walk_expansion(x.get_num(), x.get_den(), base, 20000000);
  }
  ExpansionLengths f = expansion_lengths_formula(x, base, budget);
  if (e.pre.size() != f.preperiod || e.period.size() != f.period) {
    fail("internal", "measured expansion lengths disagree with the closed form");
  }
  return e;
}

std::string digits_to_word(const std::vector<Int>& digits, const Int& base) {
  if (base <= 36) {
    std::string w;
    for (const Int& d : digits) {
      long v = d.get_si();
      w.push_back(v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10));
    }
    return w;
  }
  std::string w;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) w.push_back(',');
    w += digits[i].get_str();
  }
  return w;
}

std::vector<Int> parse_digit_word(const std::string& word, const Int& base) {
  std::vector<Int> out;
  if (base <= 36) {
    for (char ch : word) {
      long v;
      if (ch >= '0' && ch <= '9') {
        v = ch - '0';
      } else if (ch >= 'a' && ch <= 'z') {
        v = ch - 'a' + 10;
      } else {
        fail("parse-error", std::string("bad digit character '") + ch + "'");
      }
      if (Int(v) >= base) fail("parse-error", "digit exceeds base");
      out.emplace_back(v);
    }
    return out;
  }
  std::stringstream ss(word);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Int d;
    try {
      d = Int(item);
    } catch (...) {
      fail("parse-error", "bad digit token '" + item + "'");
    }
    if (d < 0 || d >= base) fail("parse-error", "digit out of range");
    out.push_back(d);
  }
  return out;
}

MissingDigitSet::MissingDigitSet(Int base, std::vector<Int> digits) : b_(std::move(base)) {
  if (b_ < 3) fail("invalid-digit-set", "base must be at least 3");
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  for (const Int& d : digits) {
    if (d < 0 || d >= b_) fail("invalid-digit-set", "digit out of range");
  }
  if (digits.size() < 2) fail("invalid-digit-set", "need at least two digits");
  if (Int(static_cast<long>(digits.size())) >= b_) {
    fail("invalid-digit-set", "digit set must omit at least one digit");
  }
  w_ = std::move(digits);
  if (b_ <= 63) {
    small_ = true;
    for (const Int& d : w_) mask_ |= 1ULL << d.get_ui();
  }
  if (b_.fits_slong_p()) {
    for (const Int& d : w_) w64_.push_back(d.get_si());
  }
}

MissingDigitSet MissingDigitSet::from_ifs(const RationalIFS& ifs) {
  if (!ifs.missing_digit()) fail("domain", "system was not built from a digit set");
  return MissingDigitSet(ifs.missing_digit()->base, ifs.missing_digit()->digits);
}

RationalIFS MissingDigitSet::to_ifs() const {
  std::string spec = "missing-digit b=" + b_.get_str() + " W=";
  for (size_t i = 0; i < w_.size(); ++i) {
    if (i) spec.push_back(',');
    spec += w_[i].get_str();
  }
  return ifs_from_spec(spec);
}

Real MissingDigitSet::delta() const {
  Rat J(static_cast<long>(w_.size()));
  if (auto r = rational_log_ratio(J, Rat(b_))) return Real(*r);
  return Real::log_of(J) / Real::log_of(Rat(b_));
}

bool MissingDigitSet::has_digit(const Int& d) const {
  return std::binary_search(w_.begin(), w_.end(), d);
}

std::optional<size_t> MissingDigitSet::digit_index(const Int& d) const {
  auto it = std::lower_bound(w_.begin(), w_.end(), d);
  if (it == w_.end() || *it != d) return std::nullopt;
  return static_cast<size_t>(it - w_.begin());
}

namespace {

struct ScanOutcome {
  bool member = false;
  bool used_dual = false;
  long first_bad = -1;  // canonical index when not a canonical member
  Int bad_digit;
};

}  // namespace

// Canonical digit scan with the terminating-form rescue. Shared by the exact
// membership, first-bad-digit, and certificate paths.
static ScanOutcome scan_rational(const MissingDigitSet& S, const Int& p, const Int& q,
                                 size_t max_steps, bool allow_dual) {
  const Int& b = S.base();
  ScanOutcome out;
  if (p == q) {  // x == 1, the only expansion is all (b-1)s
    if (S.has_digit(b - 1)) {
      out.member = true;
    } else {
      out.first_bad = 0;
      out.bad_digit = b - 1;
    }
    return out;
  }
  Int n = p;
  // q+1 steps always include a full cycle; states live in [0, q).
  Int cap = q + 1;
  size_t budget = max_steps;
  for (Int i(0); i <= cap; ++i) {
    if (budget-- == 0) fail("budget-exceeded", "membership walk exceeded step budget");
    Int t = b * n;
    Int d = t / q;
    n = t - d * q;
    if (!S.has_digit(d)) {
      if (!i.fits_slong_p()) fail("budget-exceeded", "bad-digit index does not fit");
      out.first_bad = i.get_si();
      out.bad_digit = d;
      break;
    }
    if (n == 0) {
      if (!S.has_digit(Int(0))) {
        out.first_bad = i.get_si() + 1;
        out.bad_digit = 0;
      }
      break;
    }
  }
  if (out.first_bad < 0) {
    out.member = true;
    return out;
  }
  if (!allow_dual || p == 0) return out;
  // Rescue needs a terminating expansion: q must divide a power of b.
  Int r = q;
  for (Int g = gcd(r, b); g > 1; g = gcd(r, b)) r /= g;
  if (r != 1 || !S.has_digit(b - 1)) return out;
  Int n2 = p;
  bool ok = true;
  while (true) {
    Int t = b * n2;
    Int d = t / q;
    n2 = t - d * q;
    if (n2 == 0) {
      if (!S.has_digit(d - 1)) ok = false;
      break;
    }
    if (!S.has_digit(d)) {
      ok = false;
      break;
    }
  }
  if (ok) {
    out.member = true;
    out.used_dual = true;
  }
  return out;
}

MembershipCertificate MissingDigitSet::is_member(const Rat& x, size_t max_steps) const {
  check_unit_range(x);
  Int p = x.get_num(), q = x.get_den();
  ScanOutcome sc = scan_rational(*this, p, q, max_steps, true);
  MembershipCertificate cert;
  cert.member = sc.member;
  cert.used_dual = sc.used_dual;
  if (!sc.member) {
    cert.first_bad_index = static_cast<size_t>(sc.first_bad);
    cert.first_bad_digit = sc.bad_digit;
    return cert;
  }
  if (x == 1) {
    cert.witness = BaseExpansion{{}, {b_ - 1}, false};
  } else if (!sc.used_dual) {
    cert.witness = walk_expansion(p, q, b_, max_steps);
  } else {
    BaseExpansion w;
    Int n = p;
    while (true) {
      Int t = b_ * n;
      Int d = t / q;
      n = t - d * q;
      if (n == 0) {
        w.pre.push_back(d - 1);
        break;
      }
      w.pre.push_back(d);
    }
    w.period = {b_ - 1};
    cert.witness = std::move(w);
  }
  return cert;
}

bool MissingDigitSet::member_fast(int64_t p, int64_t q, int64_t* bad_index) const {
  const int64_t b = b_.get_si();
  if (int64_t g = std::gcd(p, q); g > 1) {
    p /= g;
    q /= g;
  }
  auto inw = [&](int64_t d) -> bool {
    if (small_) return d < 64 && in_w_small(d);
    return std::binary_search(w64_.begin(), w64_.end(), d);
  };
  int64_t first_bad = -1;
  if (p == 0) {
    if (inw(0)) return true;
    first_bad = 0;
  } else if (p == q) {
    if (inw(b - 1)) return true;
    first_bad = 0;
  } else {
    int64_t n = p;
    for (int64_t i = 0; i <= q + 1; ++i) {
      int64_t t = b * n;
      int64_t d = t / q;
      n = t - d * q;
      if (!inw(d)) {
        first_bad = i;
        break;
      }
      if (n == 0) {
        if (inw(0)) return true;
        first_bad = i + 1;
        break;
      }
    }
    if (first_bad < 0) return true;
    int64_t r = q;
    for (int64_t g = std::gcd(r, b); g > 1; g = std::gcd(r, b)) r /= g;
    if (r == 1 && inw(b - 1)) {
      int64_t n2 = p;
      bool ok = true;
      while (true) {
        int64_t t = b * n2;
        int64_t d = t / q;
        n2 = t - d * q;
        if (n2 == 0) {
          if (!inw(d - 1)) ok = false;
          break;
        }
        if (!inw(d)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  if (bad_index) *bad_index = first_bad;
  return false;
}

std::optional<size_t> MissingDigitSet::first_bad_digit(const Rat& x, bool literal) const {
  check_unit_range(x);
  ScanOutcome sc = scan_rational(*this, x.get_num(), x.get_den(), 20000000, !literal);
  if (sc.member) return std::nullopt;
  return static_cast<size_t>(sc.first_bad);
}

NearestResult MissingDigitSet::nearest_point(const Rat& x, size_t max_steps) const {
  Rat minP = min_point(), maxP = max_point();
  size_t J = w_.size();
  if (x <= minP) return {minP, minP - x, Address{{}, {0}}};
  if (x >= maxP) return {maxP, x - maxP, Address{{}, {J - 1}}};

  // Children of the current window in local coordinates; each descent step
  // renormalizes y -> b*y - w so the window is always [minP, maxP]. Distances
  // shrink back by b^-depth.
  std::unordered_map<std::string, size_t> seen;
  std::vector<size_t> digits;
  Rat y = x;
  Int scale(1);
  Rat rb(b_);

  auto fold_back = [&](const std::vector<size_t>& word, Rat v) {
    for (size_t k = word.size(); k-- > 0;) v = (v + Rat(w_[word[k]])) / rb;
    return v;
  };

  while (digits.size() < max_steps) {
    std::string key = rat_str(y);
    auto it = seen.find(key);
    if (it != seen.end()) {
      Address addr;
      addr.pre.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
      addr.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
      return {x, Rat(0), std::move(addr)};
    }
    seen.emplace(std::move(key), digits.size());

    size_t inside = J;  // sentinel
    bool touching = false;
    size_t gap_left = J;
    for (size_t j = 0; j < J; ++j) {
      Rat lo = (minP + Rat(w_[j])) / rb;
      Rat hi = (maxP + Rat(w_[j])) / rb;
      if (y < lo) {
        gap_left = j;  // first child to the right of y
        break;
      }
      if (y <= hi) {
        if (inside != J) {
          touching = true;
        } else {
          inside = j;
          // y == hi may also lie in child j+1 when the windows touch
          if (y == hi && j + 1 < J && y == (minP + Rat(w_[j + 1])) / rb) {
            touching = true;
          }
        }
        if (touching) break;
      }
    }
    if (touching) {
      std::vector<size_t> pre = digits;
      pre.push_back(inside);
      return {x, Rat(0), Address{std::move(pre), {J - 1}}};
    }
    if (inside != J) {
      digits.push_back(inside);
      y = rb * y - Rat(w_[inside]);
      scale *= b_;
      continue;
    }
    // In the open gap between child gap_left-1 and child gap_left.
    size_t jl = gap_left - 1, jr = gap_left;
    Rat el = (maxP + Rat(w_[jl])) / rb;
    Rat er = (minP + Rat(w_[jr])) / rb;
    Rat dl = y - el, dr = er - y;
    NearestResult res;
    if (dl <= dr) {
      std::vector<size_t> pre = digits;
      pre.push_back(jl);
      res.witness = Address{std::move(pre), {J - 1}};
      res.point = fold_back(digits, el);
      res.distance = dl / Rat(scale);
    } else {
      std::vector<size_t> pre = digits;
      pre.push_back(jr);
      res.witness = Address{std::move(pre), {0}};
      res.point = fold_back(digits, er);
      res.distance = dr / Rat(scale);
    }
    return res;
  }
  fail("budget-exceeded", "nearest-point descent exceeded step budget");
}

MissingDigitSet::EscapeRatio MissingDigitSet::escape_index_ratio(const Rat& x) const {
  auto idx = first_bad_digit(x);
  if (!idx) fail("member-input", "escape index asks for a non-member");
  EscapeRatio out;
  out.index = *idx;
  Int q = x.get_den();
  if (*idx == 0) {
    out.ratio = RatInterval::point(Rat(0));
  } else if (q == 1) {
    out.ratio = RatInterval::point(Rat(static_cast<long>(*idx)));
  } else {
    Real r = Real(Rat(static_cast<long>(*idx))) / Real::exp_of(delta() * Real::log_of(Rat(q)));
    out.ratio = r.enclose(128);
  }
  return out;
}

PatternGcd gcd_pattern(const Int& base, const std::vector<Int>& word) {
  if (base < 2) fail("domain", "base must be at least 2");
  if (word.empty()) fail("domain", "period word must be nonempty");
  size_t L = word.size();
  for (const Int& d : word) {
    if (d < 0 || d >= base) fail("domain", "digit out of range");
  }
  for (size_t d = 1; d < L; ++d) {
    if (L % d != 0) continue;
    bool rep = true;
    for (size_t i = d; i < L && rep; ++i) rep = (word[i] == word[i % d]);
    if (rep) fail("non-primitive-period", "word is a power of a shorter block");
  }
  Int value(0);
  for (const Int& d : word) value = value * base + d;
  Int m(1);
  for (size_t i = 0; i < L; ++i) m *= base;
  m -= 1;
  PatternGcd out;
  out.g = gcd(value, m);
  out.reduced_den = m / out.g;
  // No digit set in scope here, so the growth ratio is reported against the
  // denominator itself.
  out.ratio = RatInterval::point(Rat(static_cast<long>(L)) / Rat(out.reduced_den));
  return out;
}

DivisorDigits divisor_digit_sets(const Int& base, unsigned long N, const Int& dN) {
  if (base < 2 || N == 0) fail("domain", "need base >= 2 and N >= 1");
  if (dN < 1) fail("domain", "divisor must be positive");
  Int m(1);
  for (unsigned long i = 0; i < N; ++i) m *= base;
  m -= 1;
  if (m % dN != 0) fail("not-a-divisor", "dN does not divide b^N - 1");
  DivisorDigits out;
  out.dprime = m / dN;
  Int t = out.dprime;
  std::vector<Int> rev;
  for (unsigned long i = 0; i < N; ++i) {
    rev.push_back(Int(t % base));
    t /= base;
  }
  out.word.assign(rev.rbegin(), rev.rend());
  out.digit_set = out.word;
  std::sort(out.digit_set.begin(), out.digit_set.end());
  out.digit_set.erase(std::unique(out.digit_set.begin(), out.digit_set.end()),
                      out.digit_set.end());
  return out;
}

std::vector<SafePrimeRecord> safe_prime_scan(const Int& base, const Int& limit,
                                             const FactorBudget& budget) {
  if (!limit.fits_ulong_p()) fail("budget-exceeded", "scan limit too large");
  std::vector<SafePrimeRecord> out;
  for (uint64_t p : safe_primes_up_to(limit.get_ui())) {
    Int pi(static_cast<unsigned long>(p));
    if (base % pi == 0) continue;
    Int ord = mult_order(base, pi, budget);
    out.push_back({pi, ord, (pi - 1) / ord});
  }
  return out;
}

}  // namespace cantor
