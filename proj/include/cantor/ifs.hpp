#pragma once

#include "cantor/rational.hpp"
#include "cantor/reals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cantor {

// One map f(y) = (A y)/q + b/s with integer A, b and positive integer q, s.
// Contraction is enforced at construction: ||A||_inf < q, so the map shrinks
// sup-norm distances by the exact rational factor tau() = ||A||_inf / q.
struct AffineContraction {
  int dim = 1;
  RatMat A;             // integer entries
  Int q{3};
  std::vector<Int> b;   // integer numerators of the offset
  Int s{1};

  Rat tau() const;
  RatVec offset() const;
  RatVec apply(const RatVec& y) const;
  std::vector<RatInterval> apply_box(const std::vector<RatInterval>& B) const;
  Int abs_det() const;

  void validate() const;
};

struct MissingDigitMeta {
  Int base;
  std::vector<Int> digits;  // sorted, 2 <= count <= base-1
};

class RationalIFS {
public:
  RationalIFS(int dim, std::vector<AffineContraction> maps,
              std::optional<MissingDigitMeta> missing = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<AffineContraction>& maps() const { return maps_; }
  size_t branch_count() const { return maps_.size(); }
  const std::optional<MissingDigitMeta>& missing_digit() const { return missing_; }

  Rat tau() const;                 // max over maps, exact
  Int s_product() const;
  Int max_q() const;
  bool unimodular() const;

  // Certified box containing the attractor: the sup-norm ball of radius
  // max_j ||b_j/s_j|| / (1 - tau) is invariant, and hulls of map images keep
  // invariance, so each of the (at most 64) refinement iterates is a valid
  // enclosure. Missing-digit sets use the exact convex hull instead.
  const std::vector<RatInterval>& attractor_box() const { return box_; }
  Rat diameter_ub() const { return diam_; }

  Real dimension_ub() const;       // -log J / log tau; exactly 0 when J == 1
  Real similarity_exponent() const;  // max_j log tau_j / log q_j
  Real digit_exponent() const;     // missing-digit only: log |W| / log b
  Real expansion_exponent() const; // d == 1 only: max_j log|a_j| / log q_j

private:
  int dim_;
  std::vector<AffineContraction> maps_;
  std::optional<MissingDigitMeta> missing_;
  std::vector<RatInterval> box_;
  Rat diam_;

  void compute_box();
};

// Parse the plain-text map format ("dim", then "map"/"A"/"q"/"b"/"s" blocks)
// or the one-line shorthand "missing-digit b=<int> W=<w,w,...>".
RationalIFS parse_ifs_text(const std::string& text);
RationalIFS ifs_from_spec(const std::string& spec);

// Symbolic address: pre . period^inf over map indices (0-based). An empty
// period makes the address a finite word (valid for prefix evaluation only).
struct Address {
  std::vector<size_t> pre;
  std::vector<size_t> period;

  size_t at(size_t i) const;
  std::vector<size_t> prefix(size_t len) const;
  size_t period_length() const { return period.size(); }
};

// Value of the finite word applied innermost-first to the seed:
// word = (w_0, ..., w_{n-1}) evaluates f_{w_0}(f_{w_1}(... f_{w_{n-1}}(seed))).
RatVec eval_prefix(const RationalIFS& ifs, const std::vector<size_t>& word, const RatVec& seed);

// Exact value of an eventually periodic address: the period word composes to
// one affine contraction whose fixed point is solved exactly, then the
// preperiod is applied. Errors with "empty-period".
RatVec periodic_fixed_point(const RationalIFS& ifs, const Address& addr);

// Enclosure of the (possibly aperiodic) address value from a length-n prefix:
// exact prefix value at the box center, fattened by tau^n * diam.
std::vector<RatInterval> address_enclosure(const RationalIFS& ifs, const Address& addr, size_t depth);
Real address_value(const RationalIFS& ifs, const Address& addr);  // dim 1 only

struct AddressResult {
  Address address;
  size_t steps;
};

// Exact address of a rational attractor point by inverse iteration; requires
// every map unimodular (|det A| == 1) so the orbit's denominators stay
// bounded and a cycle must appear. Branch choice is the smallest map index
// that survives `lookahead` further inverse steps inside the attractor box.
AddressResult rational_to_address(const RationalIFS& ifs, const RatVec& x, int lookahead = 8,
                                  size_t max_steps = 1000000);

struct PeriodCheck {
  size_t period_length;
  size_t preperiod_length;
  RatInterval ratio;  // period_length / q^min(D, dim)
};

// dim-1 helper used by the period-growth scans.
PeriodCheck period_length_bound_check(const RationalIFS& ifs, const Rat& x);

// First collision of length-l blocks among the shift orbit positions
// 0..N of the address: lexicographically smallest (n, then j > n) with
// addr[n..n+l) == addr[j..j+l); returns (n, j - n). Errors with
// "insufficient-points" when no collision exists in range.
std::pair<size_t, size_t> pigeonhole_witness(const Address& addr, size_t N, size_t l);

}  // namespace cantor
