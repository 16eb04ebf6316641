#include "cantor/rational.hpp"

#include <algorithm>
#include <cctype>

namespace cantor {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail("zero-denominator", "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail("parse", "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      fail("parse", "bad rational literal: " + s);
    return make_rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) fail("parse", "bad decimal literal: " + s);
    Int num;
    if (num.set_str(digits, 10) != 0) fail("parse", "bad decimal literal: " + s);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    return make_rat(num, den);
  }
  Int num;
  if (num.set_str(s, 10) != 0) fail("parse", "bad integer literal: " + s);
  return Rat(num);
}

std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string rat_decimal(const Rat& x, int digits) {
  Rat a = abs_rat(x);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero on the displayed digit
  Int scaled = floor_rat(Rat(a * scale * 2 + 1) / 2);
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (sgn(x) < 0) s.insert(0, "-");
  return s;
}

Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Int round_rat_half_down(const Rat& x) {
  // smallest integer n with x - n <= 1/2, i.e. ceil(x - 1/2)
  return ceil_rat(Rat(x - Rat(1, 2)));
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rat p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
  return RatInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
}

RatInterval RatInterval::operator/(const RatInterval& o) const {
  if (o.contains_zero()) fail("division-by-interval-with-zero", "interval divisor contains zero");
  return *this * RatInterval(Rat(1) / o.hi, Rat(1) / o.lo);
}

RatInterval RatInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return RatInterval(-hi, -lo);
  return RatInterval(Rat(0), std::max(Rat(-lo), hi));
}

RatInterval RatInterval::intersect(const RatInterval& o) const {
  Rat l = std::max(lo, o.lo), h = std::min(hi, o.hi);
  if (l > h) fail("empty-intersection", "disjoint intervals have no intersection");
  return RatInterval(l, h);
}

RatInterval RatInterval::hull(const RatInterval& o) const {
  return RatInterval(std::min(lo, o.lo), std::max(hi, o.hi));
}

std::optional<int> interval_cmp(const RatInterval& a, const Rat& x) {
  if (a.hi < x) return -1;
  if (a.lo > x) return 1;
  if (a.is_point() && a.lo == x) return 0;
  return std::nullopt;
}

std::optional<int> interval_cmp(const RatInterval& a, const RatInterval& b) {
  if (a.hi < b.lo) return -1;
  if (a.lo > b.hi) return 1;
  if (a.is_point() && b.is_point() && a.lo == b.lo) return 0;
  return std::nullopt;
}

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat mat_mul(const RatMat& x, const RatMat& y) {
  if (x.cols != y.rows) fail("shape", "matrix product shape mismatch");
  RatMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
    }
  return r;
}

RatVec mat_vec(const RatMat& m, const RatVec& v) {
  if (m.cols != static_cast<int>(v.size())) fail("shape", "matrix-vector shape mismatch");
  RatVec r(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

RatMat mat_add(const RatMat& x, const RatMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail("shape", "matrix sum shape mismatch");
  RatMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

RatMat mat_scale(const RatMat& x, const Rat& c) {
  RatMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] * c;
  return r;
}

Rat mat_det(RatMat m) {
  if (m.rows != m.cols) fail("shape", "determinant of non-square matrix");
  int n = m.rows;
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Rat inv = Rat(1) / m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      Rat f = m.at(r, col) * inv;
      if (f == 0) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
    }
  }
  return det;
}

RatVec solve_linear(RatMat m, RatVec rhs) {
  if (m.rows != m.cols || m.rows != static_cast<int>(rhs.size()))
    fail("shape", "solve shape mismatch");
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) fail("singular-system", "singular linear system");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    Rat inv = Rat(1) / m.at(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rat f = m.at(r, col) * inv;
      if (f == 0) continue;
      for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  RatVec x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m.at(i, i);
  return x;
}

RatVec vec_sub(const RatVec& x, const RatVec& y) {
  if (x.size() != y.size()) fail("shape", "vector difference shape mismatch");
  RatVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Rat sup_norm(const RatVec& v) {
  Rat m(0);
  for (const Rat& x : v) m = std::max(m, abs_rat(x));
  return m;
}

Rat sup_dist(const RatVec& x, const RatVec& y) { return sup_norm(vec_sub(x, y)); }

}  // namespace cantor
