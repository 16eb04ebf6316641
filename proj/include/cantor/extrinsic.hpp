#pragma once

#include "cantor/digitset.hpp"
#include "cantor/ifs.hpp"
#include "cantor/rational.hpp"
#include "cantor/reals.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cantor {

// ---------------------------------------------------------------------------
// Gap schedules. Phi assigns to a size bound Q the clearance that every
// rational with denominator <= Q is required to keep; admissible schedules
// are positive and nonincreasing. Arguments can be far too large to write
// down, so the certified test works on scale * base^exp form throughout.
// ---------------------------------------------------------------------------

class PhiSchedule {
public:
  enum class Kind { InverseCeilLog2, InversePower, Table };

  static PhiSchedule inverse_ceil_log2();                        // 1 / ceil(log2 Q)
  static PhiSchedule inverse_power(const Rat& c, const Rat& e);  // c / Q^e
  static PhiSchedule table(std::vector<std::pair<Rat, Rat>> rows);

  Kind kind() const { return kind_; }
  const Rat& power_coeff() const { return c_; }
  const Rat& power_exponent() const { return e_; }

  // Exact value at a materialized argument q > 1. For the power kind this
  // needs an integer exponent; otherwise the value is irrational.
  Rat value_at(const Rat& q) const;

  // Certified strict test Phi(q) < 1 / inv_bound, both sides kept in
  // scale*base^exp form. inv_bound is a positive integer-valued quantity.
  bool below_inverse(const ScaledPow& q, const ScaledPow& inv_bound) const;

private:
  PhiSchedule() = default;
  Kind kind_ = Kind::InverseCeilLog2;
  Rat c_, e_;
  std::vector<std::pair<Rat, Rat>> rows_;
};

// ---------------------------------------------------------------------------
// Staircase points: a fixed filler map f with rational fixed point, a marker
// map g spliced in at positions a_1 < a_2 < ..., and stage points theta_k
// that follow the pattern through a_k and then ride f forever. Each accepted
// stage records exact two-sided distance bounds to the limit, the Legendre
// condition that makes theta_k a convergent, and the schedule condition
// Phi(Q_k) < 1/(6 q_k) for the competitor bound Q_k = z_k / 3.
// ---------------------------------------------------------------------------

struct LiouvilleStage {
  size_t index = 0;  // 1-based stage number
  Int a_k;           // marker position of this stage
  Int a_next;        // chosen next position (doubling search endpoint)
  ScaledPow q_k;     // stage denominator
  ScaledPow err_up;  // certified upper bound on ||xi - theta_k||_inf
  std::optional<ScaledPow> err_low;  // lower bound (digit systems only)
  ScaledPow big_q;                   // Q_k, competitor size bound
  bool contraction_ok = false;       // err_up <= diam * tau^(a_next - 1)
  bool legendre_ok = false;          // err_up <  1 / (2 q_k^3)
  bool gap_ok = false;               // Phi(Q_k) < 1 / (6 q_k)
  std::optional<Rat> theta;            // stage point, dim-1 and small stages
  std::optional<RatVec> theta_vec;     // stage point, materialized stages
  std::optional<Rat> big_q_value;      // Q_k materialized
  std::optional<Rat> phi_value;        // exact Phi(Q_k) when computable
  std::optional<Rat> margin;           // Phi(Q_k) / Q_k when materialized
};

struct LiouvilleBuild {
  bool digit_system = false;  // exact symbolic path (missing-digit, dim 1)
  size_t dim = 1;
  size_t f_index = 0, g_index = 0;
  Int base;                 // digit systems: the base b
  Int wf, wg;               // digit systems: filler and marker digit values
  Int delta;                // digit systems: |wg - wf|
  std::vector<Int> digits;  // digit systems: the full digit set
  std::vector<Int> a;       // a_1 < ... < a_{stages+1}
  std::vector<LiouvilleStage> stages;
  bool monotone_ok = false;  // distance bounds strictly decrease stage to stage
  PhiSchedule schedule = PhiSchedule::inverse_ceil_log2();
};

// Grows the staircase stage by stage. a_{k+1} is found by doubling the gap
// above a_k until every stage condition certifies, per the construction's
// "large enough" freedom; the result is deterministic. Digit systems run
// symbolically and support stages whose denominators could never be written
// down; general systems materialize their stage points exactly and stop with
// budget-exceeded when those outgrow the representation budget.
LiouvilleBuild liouville_build(const RationalIFS& ifs, size_t f_index, size_t g_index,
                               const PhiSchedule& phi, size_t stage_count,
                               const Int& a1 = Int(1));

// The limit point as a certified real (dim 1 builds).
Real liouville_value(const LiouvilleBuild& build);

// Exhaustive nearby-rational audit of one stage's gap claim: every rational
// r/s with s <= floor(Q_k) either belongs to the set or keeps distance
// > Phi(Q_k)/Q_k from the limit. Rationals outside the enumerated window
// clear the margin by construction, so the scan is logically exhaustive.
// Digit-system builds with a materialized Q_k only.
struct WitnessScan {
  size_t stage = 0;
  Int q_limit;        // floor(Q_k)
  Rat margin;         // Phi(Q_k) / Q_k
  size_t candidates = 0;  // rationals inspected in the window
  size_t members = 0;     // of which belong to the set
  bool passed = false;
  std::optional<Rat> violation;  // an offending rational, if one exists
};
WitnessScan liouville_witness_check(const LiouvilleBuild& build, size_t stage,
                                    int jobs = 1);

// ---------------------------------------------------------------------------
// Uniform outside approximation: given a target and a size bound Q, produce a
// nearby rational that certifiably avoids the set, with denominator <= Q.
// The progression branch walks (p+n)/floor(Q) upward from the rounded start;
// the prime branch tries nearest fractions over prime denominators in
// [Q/2, Q). "auto" picks prime exactly when the digit exponent is < 1/2.
// ---------------------------------------------------------------------------

struct ExtrinsicResult {
  Rat approximant;
  RatInterval error;   // enclosure of |xi - approximant|
  Rat error_upper;     // error.hi
  Rat realized_k;      // error_upper * Q
  std::string branch;  // "progression" or "prime"
  size_t steps = 0;    // candidates inspected
  MembershipCertificate certificate;  // non-membership witness
};

ExtrinsicResult uniform_extrinsic(const MissingDigitSet& set, const Real& xi,
                                  const Rat& Q, const std::string& branch = "auto",
                                  size_t nmax = 10);

// ---------------------------------------------------------------------------
// Distance floor audit for a rational outside the set:
//   d(C, p/q) > b^(-(2bq)^Delta) / (2q).
// The distance is exact; the floor is an enclosure. A cheap pretest settles
// points with 2*q*d >= 1 (the floor is always below 1/(2q)).
// ---------------------------------------------------------------------------

struct LowerBoundCheck {
  Rat distance;      // exact d(C, x)
  RatInterval bound; // enclosure of the claimed floor
  bool ok = false;   // distance certified above the floor
  bool pretest = false;  // settled by the 2qd >= 1 shortcut
};

LowerBoundCheck extrinsic_lower_bound_check(const MissingDigitSet& set, const Rat& x);

}  // namespace cantor
