#pragma once

#include "cantor/ifs.hpp"
#include "cantor/numtheory.hpp"
#include "cantor/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cantor {

// Base-b expansion of a rational in [0,1]. Canonical form is the greedy
// expansion; a terminating value is stored with period {0}. The alternate
// form of a terminating value ends in period {b-1} instead.
struct BaseExpansion {
  std::vector<Int> pre;
  std::vector<Int> period;
  bool terminating = false;
};

struct ExpansionLengths {
  size_t preperiod;
  size_t period;
  bool terminating;
};

// Canonical expansion with the cycle located by its first state repeat. The
// measured (preperiod, period) pair is checked against the closed-form pair
// below on every call; a mismatch is an internal error.
BaseExpansion expand(const Rat& x, const Int& base, const FactorBudget& budget = {});

// Closed form: split q = C1*C2 with C1 carrying exactly the primes shared
// with b; preperiod = min{v : C1 | b^v}, period = ord_{C2}(b).
ExpansionLengths expansion_lengths_formula(const Rat& x, const Int& base,
                                           const FactorBudget& budget = {});

std::string digits_to_word(const std::vector<Int>& digits, const Int& base);
std::vector<Int> parse_digit_word(const std::string& word, const Int& base);

struct MembershipCertificate {
  bool member = false;
  bool used_dual = false;                 // witnessed by the (b-1)-tail form
  std::optional<BaseExpansion> witness;   // member: expansion with digits in W
  std::optional<size_t> first_bad_index;  // non-member: canonical index
  std::optional<Int> first_bad_digit;
};

struct NearestResult {
  Rat point;
  Rat distance;
  Address witness;  // address of `point` over the digit maps
};

struct PatternGcd {
  Int g;            // gcd(word value, b^L - 1)
  Int reduced_den;  // (b^L - 1)/g, denominator of the periodic point
  RatInterval ratio;  // L / reduced_den^delta
};

struct DivisorDigits {
  Int dprime;             // (b^N - 1)/dN
  std::vector<Int> word;  // dprime written with exactly N digits
  std::vector<Int> digit_set;
};

struct SafePrimeRecord {
  Int p;
  Int order;  // ord_p(b)
  Int index;  // (p-1)/order
};

class MissingDigitSet {
public:
  MissingDigitSet(Int base, std::vector<Int> digits);

  static MissingDigitSet from_ifs(const RationalIFS& ifs);
  RationalIFS to_ifs() const;

  const Int& base() const { return b_; }
  const std::vector<Int>& digits() const { return w_; }
  size_t count() const { return w_.size(); }
  Rat min_point() const { return Rat(w_.front()) / Rat(b_ - 1); }
  Rat max_point() const { return Rat(w_.back()) / Rat(b_ - 1); }
  Rat diameter() const { return max_point() - min_point(); }
  Real delta() const;  // log |W| / log b

  bool has_digit(const Int& d) const;
  std::optional<size_t> digit_index(const Int& d) const;

  // Exact membership of x in [0,1] with a certificate either way. The walk is
  // capped at `max_steps` states ("budget-exceeded" beyond).
  MembershipCertificate is_member(const Rat& x, size_t max_steps = 20000000) const;

  // Allocation-free boolean for enumeration loops; requires 0 <= p <= q and
  // b*q to fit in int64. p/q need not be reduced. Sets *bad_index to the
  // canonical first bad digit position when the answer is false and bad_index
  // is non-null.
  bool member_fast(int64_t p, int64_t q, int64_t* bad_index = nullptr) const;

  // Index of the first canonical digit outside W; nullopt for members (their
  // alternate form may rescue a terminating expansion). `literal` skips the
  // rescue and reports the canonical expansion as-is.
  std::optional<size_t> first_bad_digit(const Rat& x, bool literal = false) const;

  NearestResult nearest_point(const Rat& x, size_t max_steps = 20000000) const;

  // first_bad_digit(x) scaled: index / q^delta. Errors with "member-input".
  struct EscapeRatio {
    size_t index;
    RatInterval ratio;
  };
  EscapeRatio escape_index_ratio(const Rat& x) const;

private:
  Int b_;
  std::vector<Int> w_;
  uint64_t mask_ = 0;  // digit bitmap when b_ <= 63
  bool small_ = false;
  std::vector<int64_t> w64_;

  bool in_w_small(int64_t d) const { return (mask_ >> d) & 1ULL; }
};

// gcd of a primitive period word's value against b^L - 1, with the reduced
// denominator of the periodic point it generates and the period/denominator
// growth ratio. Errors with "non-primitive-period" when the word is a power
// of a shorter block.
PatternGcd gcd_pattern(const Int& base, const std::vector<Int>& word);

// For dN | b^N - 1: the cofactor and its N-digit base-b word, whose digit set
// contains every digit set that can realize denominator dN with period N.
// Errors with "not-a-divisor".
DivisorDigits divisor_digit_sets(const Int& base, unsigned long N, const Int& dN);

// Safe primes p <= limit with the order of b mod p and its index in the unit
// group. Skips primes dividing b.
std::vector<SafePrimeRecord> safe_prime_scan(const Int& base, const Int& limit,
                                             const FactorBudget& budget = {});

}  // namespace cantor
