#pragma once

#include "cantor/rational.hpp"

#include <functional>
#include <memory>

namespace cantor {

// ---------------------------------------------------------------------------
// Enclosure primitives.
//
// Every real-valued quantity in this library is handled as a closed interval
// with exact rational endpoints. MPFR with directed rounding produces the
// endpoints for log/exp/sqrt/roots/pi; an MPFR number is an exact dyadic
// rational, so converting it back to mpq loses nothing. All combining
// arithmetic and every comparison is exact rational arithmetic on endpoints;
// a verdict is only ever reached by separation (or by an exact equality test).
// ---------------------------------------------------------------------------

RatInterval log_enclosure(const Rat& x, long prec);           // x > 0
RatInterval log_enclosure_int(const Int& x, long prec);       // x > 0
RatInterval exp_enclosure(const RatInterval& e, long prec);
RatInterval sqrt_enclosure(const Rat& x, long prec);          // x >= 0
RatInterval root_enclosure(const Rat& x, unsigned long k, long prec);  // x >= 0
RatInterval pi_enclosure(long prec);

// ---------------------------------------------------------------------------
// Real: a refinable real number. enclose(prec) returns an interval that
// contains the value, with width -> 0 as prec -> infinity (no fixed rate is
// promised). enclose_width(eps) loops until the width is <= eps; this is the
// protocol every "target" in the library speaks. Exactly-rational values are
// flagged and answer with degenerate intervals.
// ---------------------------------------------------------------------------

class Real {
public:
  using Gen = std::function<RatInterval(long prec)>;

  Real() : Real(Rat(0)) {}
  explicit Real(Rat exact);
  explicit Real(const Int& exact) : Real(Rat(exact)) {}
  static Real from_fn(Gen gen);

  bool is_exact() const;
  const Rat& exact_value() const;  // requires is_exact()

  RatInterval enclose(long prec) const;
  RatInterval enclose_width(const Rat& eps) const;

  Real operator+(const Real& o) const;
  Real operator-(const Real& o) const;
  Real operator*(const Real& o) const;
  Real operator/(const Real& o) const;  // refines the divisor away from zero
  Real operator-() const;

  static Real log_of(const Rat& x);   // x > 0
  static Real log_of(const Real& x);  // refines x until positive
  static Real exp_of(const Real& x);
  static Real sqrt_of(const Rat& x);
  static Real root_of(const Rat& x, unsigned long k);
  static Real pi();
  static Real e();
  // base^expo for positive rational base, via exp(expo * log base)
  static Real pow(const Rat& base, const Real& expo);

private:
  struct State;
  std::shared_ptr<State> st_;
};

inline Real operator+(const Rat& a, const Real& b) { return Real(a) + b; }
inline Real operator*(const Rat& a, const Real& b) { return Real(a) * b; }

// Hard ceiling for refinement loops; hitting it raises "enclosure-exhausted"
// (comparisons raise "undecided" instead when separation never happens).
inline constexpr long kMaxPrec = 1L << 24;

// Trichotomy by refinement; nullopt if max_prec is reached without separation
// and without an exact-equality witness.
std::optional<int> try_compare(const Real& a, const Real& b, long max_prec = kMaxPrec);
int compare_or_fail(const Real& a, const Real& b, long max_prec = kMaxPrec);

// ---------------------------------------------------------------------------
// Exact multiplicative-relation detection and power comparisons.
// ---------------------------------------------------------------------------

// If log(a)/log(b) is a rational u/v with small height, return it (verified by
// the exact identity a^v == b^u). nullopt means "no small relation found", not
// a proof of irrationality. a, b > 0 and != 1.
std::optional<Rat> rational_log_ratio(const Rat& a, const Rat& b);

// Compare c against X^(log w / log b): -1, 0, +1. All arguments positive
// rationals, w != 1, b != 1. Exact when a multiplicative relation resolves the
// comparison; otherwise decided by interval refinement. Throws "undecided" at
// max_prec (only reachable if the two sides are equal through a multiplicative
// coincidence invisible to rational_log_ratio).
int compare_power(const Rat& c, const Rat& X, const Rat& w, const Rat& b,
                  long max_prec = kMaxPrec);

// Decide c <= base^(Q^Delta) with Delta = log w / log base. Equality counts as
// true. c, Q positive rationals; base, w integers >= 2.
bool decide_power_bound(const Rat& c, const Int& base, const Rat& Q, const Int& w,
                        long max_prec = kMaxPrec);

// floor(Q^Delta), Delta = log w / log base, Q >= 1.
Int floor_power(const Rat& Q, const Int& w, const Int& base, long max_prec = kMaxPrec);

// ---------------------------------------------------------------------------
// ScaledPow: scale * base^exp with a possibly enormous integer exponent, used
// where materializing the value is out of the question. base >= 2.
// ---------------------------------------------------------------------------

struct ScaledPow {
  Rat scale{1};
  Int base{2};
  Int exp{0};

  bool materializable(long max_bits = 1 << 22) const;
  Rat materialize() const;  // requires materializable()
  // enclosure of log2(value)
  RatInterval log2_enclosure(long prec) const;
};

// value(v) compared with the positive rational c: -1/0/+1.
int compare_scaledpow(const ScaledPow& v, const Rat& c);
// exact ceil(log2(value)); requires the value not astronomically large unless
// it is exactly a power of two times a handled structure. Used for small
// stages; big stages use one-sided bounds instead.
Int ceil_log2(const ScaledPow& v);
// certified test  log2(value) > threshold  (strict), by one-sided bounds.
bool log2_exceeds(const ScaledPow& v, const Int& threshold);

}  // namespace cantor
