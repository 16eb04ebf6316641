#pragma once

#include "cantor/digitset.hpp"
#include "cantor/ifs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cantor {

// Rational approximant to the value of `addr` produced by the pigeonhole
// collision of address blocks, with exact certificates. For a missing-digit
// system the orbit length is N = floor(Q^delta) and the certified claims are
//   q <= b^(Q^delta)  and  error_bound * Q * q <= b,
// both checked exactly. General systems use the composition bound
// N = floor(log Q / log(S (2 q_max)^d)) and certify q <= Q.
struct IntrinsicResult {
  Rat approximant;     // first coordinate when dim > 1 carries full vector below
  RatVec approximant_vec;
  Int q_reduced;
  Rat error_bound;     // exact rational EB with |value(addr) - approximant| <= EB
  size_t orbit_len;    // N
  size_t prefix_len;   // l, block length of the collision
  size_t split_n, split_m;
  Address approx_address;  // (u1)(u2)^inf, a membership witness by construction
  Int q_unreduced;
  bool q_bound_ok;
  bool error_bound_ok;
  bool enclosure_cross_check;  // dim 1: |xi - p/q| <= b/(Q q) via direct enclosure
  std::optional<RatInterval> reference_form;  // constant-free comparison value, report only
};

IntrinsicResult intrinsic_dirichlet(const RationalIFS& ifs, const Address& addr, const Rat& Q);

// All members of the set with reduced denominator <= limit, found by walking
// every reduced p/q in [minP, maxP]. Sorted by (q, p).
struct RationalPointCatalog {
  Int limit;
  std::vector<std::pair<Int, Int>> points;
  std::string method;

  size_t count_up_to(const Int& n) const;  // members with denominator <= n
};

RationalPointCatalog enumerate_rationals(const MissingDigitSet& set, const Int& limit,
                                         int jobs = 1, uint64_t budget = 100000);

struct CountingCheck {
  Int n;
  size_t count;
  bool bound_ok;  // count <= J^2 (diam * n^2)^delta, exact comparison
};

CountingCheck counting_bound_check(const MissingDigitSet& set, const RationalPointCatalog& cat,
                                   const Int& n);

// Least-squares slope of log count against log N. Floating point on purpose:
// this is a diagnostic fit, never a certificate.
struct ExponentFit {
  double slope;
  double intercept;
  size_t points;
};

ExponentFit counting_exponent_fit(const RationalPointCatalog& cat, const std::vector<Int>& grid);

}  // namespace cantor
