#pragma once

#include "cantor/contfrac.hpp"
#include "cantor/digitset.hpp"
#include "cantor/reals.hpp"

#include <cstdint>
#include <vector>

namespace cantor {

// Successive-minima profiles for the planar lattice {(m, m*xi - n)} and
// finite-depth approximation-exponent estimates read off the convergents.
//
// All logarithms are natural. A profile value L(t) is the log of the scaling
// factor at which the box [-e^t, e^t] x [-e^{-t}, e^{-t}] first captures a
// lattice point (then a second, independent one). Minkowski's theorem pins
// L1(t) + L2(t) inside [-log 2, 0]; the profile checker certifies that the
// computed enclosures never sit strictly outside that band.

// Enclosure of L_{(m,n)}(t) = max(log m - t, log|m*xi - n| + t). Requires
// m >= 0 and (m, n) != (0, 0); m = 0 denotes the vertical lattice direction
// and contributes log|n| + t alone. Fails with "exact-hit" when xi is exact
// rational and m*xi == n (the second branch degenerates to log 0), and with
// "domain" on (0, 0).
RatInterval L_function(const Int& m, const Int& n, const Real& xi, const Rat& t,
                       const Rat& tol = Rat(1, Int(1) << 40));

struct ProfileSample {
  Rat t;
  RatInterval L1, L2;    // enclosures of the two minima logs
  Int m1, n1, m2, n2;    // realizers; (m2,n2) independent of (m1,n1)
  bool band_ok = false;  // L1+L2 enclosure meets [-log 2, 0], not strictly outside
  bool terminal = false; // realizer 1 hits a rational xi exactly at this t
};

struct MinimaProfile {
  std::vector<ProfileSample> samples;
  bool terminated = false;  // stopped at an exact hit (rational target)
  bool band_ok = true;      // every recorded sample passed the band check
};

// Profile over a sorted grid of t >= 0. Realizer search walks the convergents
// of xi plus the crossing semiconvergents of each consecutive pair; the first
// minimum provably lies on a convergent, and the Minkowski band acts as the
// completeness check for the second. `den_cap` (0 = automatic) bounds the
// convergent denominators consulted; raise it on "search-exhausted".
MinimaProfile minima_profile(const Real& xi, const std::vector<Rat>& t_grid,
                             const Int& den_cap = Int(0));

// CSV export, one row per sample: t,L1_lo,L1_hi,L2_lo,L2_hi,m1,n1,m2,n2.
std::string profile_csv(const MinimaProfile& profile);

enum class ExponentKind {
  lambda,          // best approximation exponent, witnessed at Q = q
  lambda_hat,      // uniform variant, floor over sampled scales (diagnostic)
  lambda_int,      // restricted to approximants inside the set
  lambda_hat_int,
  lambda_ext,      // restricted to approximants outside the set
  lambda_hat_ext,
};

const char* exponent_kind_name(ExponentKind k);

struct ExponentEstimate {
  ExponentKind kind;
  Rat lower_witness;     // certified for the plain kinds: the named triple
                         // satisfies |xi - p/q| <= q^{-1} Q^{-lower_witness}
  bool certified = false;
  Rat upper_diagnostic;  // empirical read of the scanned range, not a bound
  Int witness_p, witness_q, witness_Q;  // meaningful when certified
  Int data_depth;        // max denominator the estimate drew on
};

struct ExponentScan {
  Int depth;                      // max denominator scanned
  std::size_t convergents_used = 0;
  std::size_t intrinsic_count = 0;
  std::size_t extrinsic_count = 0;
  std::vector<ExponentEstimate> estimates;
  bool identity_ok = false;   // lambda witness == max(intrinsic, extrinsic)
  bool ordering_ok = false;   // each hat diagnostic <= its plain witness
  bool dual_bound_ok = false; // hat_ext floor vs 1/lambda_int witness (diagnostic)
  bool dual_identity_ok = false;  // hat_ext floor vs min(1/lambda_int, 1) (diagnostic)
};

// Scans the convergents of xi up to denominator `depth`, classifies each as
// intrinsic or extrinsic for `set`, and turns the gaps into per-triple
// exponent witnesses. Plain kinds carry certified lower witnesses; hat kinds
// are finite-data diagnostics only. Fails with "depth-too-small" when fewer
// than three convergents could be classified.
ExponentScan estimate_exponents(const MissingDigitSet& set, const Real& xi, const Int& depth);

}  // namespace cantor
