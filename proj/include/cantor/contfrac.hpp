#pragma once

#include "cantor/reals.hpp"

#include <cstdint>
#include <vector>

namespace cantor {

struct Convergent {
  Int a;  // partial quotient a_t
  Int u;  // convergent numerator, u_t/v_t in lowest terms
  Int v;
};

// Continued-fraction expansion of an exact rational (finite, by Euclid) or of
// a refinable real (partial quotients extracted from enclosures; a quotient is
// emitted only when every point of the current enclosure agrees on it).
class ContinuedFraction {
public:
  explicit ContinuedFraction(const Rat& x);
  explicit ContinuedFraction(const Real& x);

  // Compute one more convergent. Returns false iff the expansion has already
  // terminated (exact rational fully expanded). Throws "enclosure-exhausted"
  // when the target cannot be refined enough to decide the next quotient.
  bool extend();
  void extend_to(size_t count);

  const std::vector<Convergent>& convergents() const { return conv_; }
  bool terminated() const { return terminated_; }

private:
  bool exact_ = false;
  bool terminated_ = false;
  Rat rem_;  // exact mode: current complete quotient
  Real x_;   // enclosure mode: the target itself
  Int um1_{1}, vm1_{0}, um2_{0}, vm2_{1};
  std::vector<Convergent> conv_;
};

// Convenience: first `count` convergents (fewer if the target is rational and
// terminates earlier; `terminated` reports that).
struct ConvergentRun {
  std::vector<Convergent> convergents;
  bool terminated;
};
ConvergentRun convergents_of(const Real& x, size_t count);

struct SandwichReport {
  size_t index;  // t, 0-based
  Int u, v, vnext;
  Rat lower, upper;  // 1/(2 v vnext) and 1/(v vnext)
  RatInterval gap;   // certified enclosure of |x - u_t/v_t|
  bool lower_ok, upper_ok;
};

// Certified check of the two-sided convergent gap bounds at index t. `cf` must
// be the expansion of `x`; it is extended as needed. Raises "rational-target"
// when x is rational and u_t/v_t hits it exactly (the left bound degenerates).
SandwichReport convergent_sandwich_check(const Real& x, ContinuedFraction& cf, size_t t);

// All reduced fractions p/q with 1 <= q <= max_den lying in [lo, hi], in
// increasing order. Pruned mediant descent; cost is proportional to the output
// size plus the boundary-descent paths.
std::vector<Rat> stern_brocot_enumerate(const Rat& lo, const Rat& hi, const Int& max_den,
                                        uint64_t max_nodes = 400000000ULL);

}  // namespace cantor
