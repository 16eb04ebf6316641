#include "cantor/contfrac.hpp"

#include <algorithm>
#include <utility>

namespace cantor {

ContinuedFraction::ContinuedFraction(const Rat& x) : exact_(true), rem_(x) {}

ContinuedFraction::ContinuedFraction(const Real& x) : x_(x) {
  if (x.is_exact()) {
    exact_ = true;
    rem_ = x.exact_value();
  }
}

bool ContinuedFraction::extend() {
  if (terminated_) return false;
  Int a;
  if (exact_) {
    a = floor_rat(rem_);
    if (rem_ == Rat(a)) {
      terminated_ = true;
    } else {
      rem_ = Rat(1) / (rem_ - Rat(a));
    }
  } else {
    // Tail of the expansion after the convergents emitted so far:
    //   t_k = (u_{k-2} - v_{k-2} x) / (v_{k-1} x - u_{k-1})
    // with the conventional virtual initials, so k = 0 gives t = x. The next
    // quotient is floor(t_k), readable once the enclosure of the denominator
    // excludes zero and both endpoints of t_k share a floor.
    bool decided = false;
    for (long prec = 128; prec <= kMaxPrec; prec *= 2) {
      RatInterval e = x_.enclose(prec);
      RatInterval num = RatInterval{Rat(um2_), Rat(um2_)} - e * Rat(vm2_);
      RatInterval den = e * Rat(vm1_) - RatInterval{Rat(um1_), Rat(um1_)};
      if (den.contains_zero()) continue;
      RatInterval t = num / den;
      Int fl = floor_rat(t.lo), fh = floor_rat(t.hi);
      if (fl == fh) {
        a = fl;
        decided = true;
        break;
      }
    }
    if (!decided) fail("enclosure-exhausted", "continued fraction: cannot separate next quotient");
  }
  Int u = a * um1_ + um2_;
  Int v = a * vm1_ + vm2_;
  conv_.push_back({a, u, v});
  um2_ = um1_; vm2_ = vm1_;
  um1_ = u; vm1_ = v;
  return true;
}

void ContinuedFraction::extend_to(size_t count) {
  while (conv_.size() < count && extend()) {
  }
}

ConvergentRun convergents_of(const Real& x, size_t count) {
  ContinuedFraction cf(x);
  cf.extend_to(count);
  return {cf.convergents(), cf.terminated()};
}

SandwichReport convergent_sandwich_check(const Real& x, ContinuedFraction& cf, size_t t) {
  cf.extend_to(t + 2);
  if (cf.convergents().size() < t + 2) {
    fail("rational-target", "expansion terminates before index t+1; gap bound degenerates");
  }
  const Convergent& ct = cf.convergents()[t];
  const Convergent& cn = cf.convergents()[t + 1];
  Rat upper = Rat(1) / Rat(ct.v * cn.v);
  Rat lower = upper / Rat(2);

  SandwichReport rep;
  rep.index = t;
  rep.u = ct.u;
  rep.v = ct.v;
  rep.vnext = cn.v;
  rep.lower = lower;
  rep.upper = upper;
  rep.lower_ok = rep.upper_ok = false;

  Rat target = make_rat(ct.u, ct.v);
  Real diff = x - Real(target);
  for (long prec = 128; prec <= kMaxPrec; prec *= 2) {
    RatInterval g = diff.enclose(prec).abs();
    rep.gap = g;
    rep.lower_ok = g.lo >= lower;
    rep.upper_ok = g.hi <= upper;
    if (rep.lower_ok && rep.upper_ok) break;
    // Both bounds are strict for an irrational target, so certification fails
    // only at insufficient width; the rational case was rejected above when
    // the expansion terminates early, but a rational tail beyond t+1 still
    // satisfies the two-sided bound and resolves here as well.
    if (g.width() == Rat(0)) break;
  }
  return rep;
}

namespace {

struct SbFrame {
  Int pl, ql, pr, qr;
};

}  // namespace

std::vector<Rat> stern_brocot_enumerate(const Rat& lo, const Rat& hi, const Int& max_den,
                                        uint64_t max_nodes) {
  std::vector<Rat> out;
  if (lo > hi || max_den < 1) return out;
  Int nlo = ceil_rat(lo), nhi = floor_rat(hi);
  for (Int n = nlo; n <= nhi; ++n) out.push_back(Rat(n));
  if (max_den == 1) {
    std::sort(out.begin(), out.end());
    return out;
  }

  Int wlo = floor_rat(lo), whi = ceil_rat(hi);
  if (whi - wlo > 1000000) fail("budget-exceeded", "enumeration range spans too many unit windows");

  uint64_t nodes = 0;
  std::vector<SbFrame> stack;
  for (Int n = wlo; n < whi; ++n) {
    stack.push_back({n, Int(1), n + 1, Int(1)});
    while (!stack.empty()) {
      SbFrame f = stack.back();
      stack.pop_back();
      Int pm = f.pl + f.pr, qm = f.ql + f.qr;
      if (qm > max_den) continue;
      if (++nodes > max_nodes) fail("budget-exceeded", "mediant descent node budget exhausted");
      Rat m = make_rat(pm, qm);
      if (m < lo) {
        stack.push_back({pm, qm, f.pr, f.qr});
      } else if (m > hi) {
        stack.push_back({f.pl, f.ql, pm, qm});
      } else {
        out.push_back(m);
        stack.push_back({f.pl, f.ql, pm, qm});
        stack.push_back({pm, qm, f.pr, f.qr});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cantor
