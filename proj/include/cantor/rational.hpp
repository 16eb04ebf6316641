#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantor {

using Int = mpz_class;
using Rat = mpq_class;

// Library-wide error with a stable machine-readable code (mirrored into CLI reports).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

// Canonical rational from a (possibly unreduced) fraction. Denominator must be nonzero.
Rat make_rat(const Int& num, const Int& den);

// Parse "p/q", "p", or a decimal like "-1.25" into an exact rational.
Rat parse_rat(const std::string& s);

// "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& x);

// Fixed-point decimal rendering, exact digits, for display fields only.
std::string rat_decimal(const Rat& x, int digits);

Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);
// Nearest integer; ties go to the smaller (more negative) integer, so the result is floor(x + 1/2)
// adjusted to prefer the lower value at exact halves.
Int round_rat_half_down(const Rat& x);

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Closed interval with exact rational endpoints. Every operation is exact; enclosures of real
// values are produced elsewhere (reals.hpp) and only combined here.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) fail("bad-interval", "interval endpoints out of order");
  }
  static RatInterval point(const Rat& x) { return RatInterval(x, x); }

  Rat width() const { return Rat(hi - lo); }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }

  RatInterval operator+(const RatInterval& o) const { return RatInterval(lo + o.lo, hi + o.hi); }
  RatInterval operator-(const RatInterval& o) const { return RatInterval(lo - o.hi, hi - o.lo); }
  RatInterval operator-() const { return RatInterval(-hi, -lo); }
  RatInterval operator*(const RatInterval& o) const;
  // Division by an interval separated from zero.
  RatInterval operator/(const RatInterval& o) const;

  RatInterval operator+(const Rat& r) const { return RatInterval(lo + r, hi + r); }
  RatInterval operator-(const Rat& r) const { return RatInterval(lo - r, hi - r); }
  RatInterval operator*(const Rat& r) const {
    return r >= 0 ? RatInterval(lo * r, hi * r) : RatInterval(hi * r, lo * r);
  }

  RatInterval abs() const;
  RatInterval intersect(const RatInterval& o) const;
  RatInterval hull(const RatInterval& o) const;
};

// Trichotomy against a rational; nullopt while the interval straddles x.
std::optional<int> interval_cmp(const RatInterval& a, const Rat& x);
// <0 / >0 when the intervals are separated, nullopt while they overlap.
std::optional<int> interval_cmp(const RatInterval& a, const RatInterval& b);

using RatVec = std::vector<Rat>;

// Dense row-major rational matrix; only used at tiny sizes (d <= 3 in practice).
struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
  static RatMat identity(int n);

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

RatMat mat_mul(const RatMat& x, const RatMat& y);
RatVec mat_vec(const RatMat& m, const RatVec& v);
RatMat mat_add(const RatMat& x, const RatMat& y);
RatMat mat_scale(const RatMat& x, const Rat& c);
Rat mat_det(RatMat m);                      // Gaussian elimination, exact
RatVec solve_linear(RatMat m, RatVec rhs);  // errors with "singular-system" if det == 0

RatVec vec_sub(const RatVec& x, const RatVec& y);
Rat sup_norm(const RatVec& v);
Rat sup_dist(const RatVec& x, const RatVec& y);

}  // namespace cantor
