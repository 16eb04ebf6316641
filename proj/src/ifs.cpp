#include "cantor/ifs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace cantor {

namespace {

Rat row_abs_sum(const RatMat& A, int i) {
  Rat s(0);
  for (int j = 0; j < A.cols; ++j) s += abs_rat(A.at(i, j));
  return s;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

}  // namespace

Rat AffineContraction::tau() const {
  Rat m(0);
  for (int i = 0; i < dim; ++i) m = std::max(m, row_abs_sum(A, i));
  return m / Rat(q);
}

RatVec AffineContraction::offset() const {
  RatVec c(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) c[i] = Rat(b[i]) / Rat(s);
  return c;
}

RatVec AffineContraction::apply(const RatVec& y) const {
  RatVec z = mat_vec(A, y);
  for (int i = 0; i < dim; ++i) z[i] = z[i] / Rat(q) + Rat(b[i]) / Rat(s);
  return z;
}

std::vector<RatInterval> AffineContraction::apply_box(const std::vector<RatInterval>& B) const {
  std::vector<RatInterval> out(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    RatInterval acc = RatInterval::point(Rat(0));
    for (int j = 0; j < dim; ++j) acc = acc + B[j] * A.at(i, j);
    out[i] = acc * (Rat(1) / Rat(q)) + Rat(b[i]) / Rat(s);
  }
  return out;
}

Int AffineContraction::abs_det() const {
  Rat d = mat_det(A);
  Int n = d.get_num();
  return n < 0 ? Int(-n) : n;
}

void AffineContraction::validate() const {
  if (dim < 1) fail("parse-error", "map dimension must be positive");
  if (A.rows != dim || A.cols != dim) fail("parse-error", "matrix shape does not match dim");
  if (q < 1) fail("parse-error", "q must be a positive integer");
  if (s < 1) fail("parse-error", "s must be a positive integer");
  if (static_cast<int>(b.size()) != dim) fail("parse-error", "offset length does not match dim");
  for (const Rat& e : A.a) {
    if (!is_integer(e)) fail("parse-error", "matrix entries must be integers");
  }
  for (int i = 0; i < dim; ++i) {
    if (Rat(row_abs_sum(A, i)) >= Rat(q)) fail("not-a-contraction", "needs ||A||_inf < q");
  }
}

RationalIFS::RationalIFS(int dim, std::vector<AffineContraction> maps,
                         std::optional<MissingDigitMeta> missing)
    : dim_(dim), maps_(std::move(maps)), missing_(std::move(missing)) {
  if (maps_.empty()) fail("parse-error", "system needs at least one map");
  for (const auto& m : maps_) {
    if (m.dim != dim_) fail("parse-error", "map dimensions disagree");
    m.validate();
  }
  compute_box();
}

Rat RationalIFS::tau() const {
  Rat m(0);
  for (const auto& f : maps_) m = std::max(m, f.tau());
  return m;
}

Int RationalIFS::s_product() const {
  Int p(1);
  for (const auto& f : maps_) p *= f.s;
  return p;
}

Int RationalIFS::max_q() const {
  Int m(1);
  for (const auto& f : maps_) m = std::max(m, f.q);
  return m;
}

bool RationalIFS::unimodular() const {
  for (const auto& f : maps_) {
    if (f.abs_det() != 1) return false;
  }
  return true;
}

void RationalIFS::compute_box() {
  if (missing_) {
    Rat den = Rat(missing_->base - 1);
    Rat lo = Rat(missing_->digits.front()) / den;
    Rat hi = Rat(missing_->digits.back()) / den;
    box_ = {RatInterval(lo, hi)};
    diam_ = hi - lo;
    return;
  }
  Rat t = tau();
  Rat r(0);
  for (const auto& f : maps_) r = std::max(r, sup_norm(f.offset()));
  Rat R = r / (Rat(1) - t);
  box_.assign(static_cast<size_t>(dim_), RatInterval(-R, R));
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<RatInterval> next = maps_[0].apply_box(box_);
    for (size_t j = 1; j < maps_.size(); ++j) {
      auto img = maps_[j].apply_box(box_);
      for (int i = 0; i < dim_; ++i) next[i] = next[i].hull(img[i]);
    }
    bool same = true;
    for (int i = 0; i < dim_; ++i) {
      if (next[i].lo != box_[i].lo || next[i].hi != box_[i].hi) same = false;
    }
    box_ = std::move(next);
    if (same) break;
  }
  diam_ = Rat(0);
  for (const auto& c : box_) diam_ = std::max(diam_, c.width());
}

Real RationalIFS::dimension_ub() const {
  if (maps_.size() == 1) return Real(Rat(0));
  Rat J(static_cast<long>(maps_.size()));
  Rat t = tau();
  if (auto r = rational_log_ratio(J, t)) return Real(Rat(-*r));
  return -(Real::log_of(J) / Real::log_of(t));
}

namespace {

Real log_quotient(const Rat& a, const Rat& b) {
  if (auto r = rational_log_ratio(a, b)) return Real(*r);
  return Real::log_of(a) / Real::log_of(b);
}

// Fold a maximum over report-only exponent values. Comparison precision is
// capped; an unresolved tie keeps the earlier candidate.
Real fold_max(const std::vector<Real>& xs) {
  Real best = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) {
    auto c = try_compare(best, xs[i], 1 << 16);
    if (c && *c < 0) best = xs[i];
  }
  return best;
}

}  // namespace

Real RationalIFS::similarity_exponent() const {
  std::vector<Real> mus;
  for (const auto& f : maps_) mus.push_back(log_quotient(f.tau(), Rat(f.q)));
  return fold_max(mus);
}

Real RationalIFS::digit_exponent() const {
  if (!missing_) fail("domain", "digit exponent needs a missing-digit set");
  return log_quotient(Rat(static_cast<long>(missing_->digits.size())), Rat(missing_->base));
}

Real RationalIFS::expansion_exponent() const {
  if (dim_ != 1) fail("domain", "expansion exponent is defined for dimension 1");
  std::vector<Real> gs;
  for (const auto& f : maps_) {
    Rat a = abs_rat(f.A.at(0, 0));
    if (a < 1) fail("domain", "expansion exponent needs |a_j| >= 1");
    gs.push_back(a == 1 ? Real(Rat(0)) : log_quotient(a, Rat(f.q)));
  }
  return fold_max(gs);
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  bool comment = false;
  for (char ch : text) {
    if (ch == '\n') comment = false;
    if (ch == '#') comment = true;
    if (comment || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

Int parse_int_token(const std::string& t) {
  try {
    return Int(t);
  } catch (...) {
    fail("parse-error", "expected integer, got '" + t + "'");
  }
}

std::vector<Int> parse_int_list(const std::string& csv) {
  std::vector<Int> out;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_int_token(item));
  }
  return out;
}

RationalIFS build_missing_digit(const Int& base, std::vector<Int> digits) {
  if (base < 3) fail("invalid-digit-set", "base must be at least 3");
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  for (const Int& w : digits) {
    if (w < 0 || w >= base) fail("invalid-digit-set", "digit out of range");
  }
  if (digits.size() < 2) fail("invalid-digit-set", "need at least two digits");
  if (Int(static_cast<long>(digits.size())) >= base) {
    fail("invalid-digit-set", "digit set must omit at least one digit");
  }
  std::vector<AffineContraction> maps;
  for (const Int& w : digits) {
    AffineContraction f;
    f.dim = 1;
    f.A = RatMat(1, 1);
    f.A.at(0, 0) = Rat(1);
    f.q = base;
    f.b = {w};
    f.s = base;
    maps.push_back(std::move(f));
  }
  return RationalIFS(1, std::move(maps), MissingDigitMeta{base, std::move(digits)});
}

}  // namespace

RationalIFS parse_ifs_text(const std::string& text) {
  std::vector<std::string> toks = tokenize(text);
  if (toks.empty()) fail("parse-error", "empty system description");

  if (toks[0] == "missing-digit") {
    std::optional<Int> base;
    std::vector<Int> digits;
    for (size_t i = 1; i < toks.size(); ++i) {
      const std::string& t = toks[i];
      if (t.rfind("b=", 0) == 0) {
        base = parse_int_token(t.substr(2));
      } else if (t.rfind("W=", 0) == 0) {
        digits = parse_int_list(t.substr(2));
      } else {
        fail("parse-error", "unknown missing-digit field '" + t + "'");
      }
    }
    if (!base) fail("parse-error", "missing-digit needs b=<base>");
    if (digits.empty()) fail("parse-error", "missing-digit needs W=<digits>");
    return build_missing_digit(*base, std::move(digits));
  }

  size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= toks.size()) fail("parse-error", "unexpected end of system description");
    return toks[i++];
  };
  if (next() != "dim") fail("parse-error", "description must start with 'dim'");
  Int dv = parse_int_token(next());
  if (dv < 1 || dv > 16) fail("parse-error", "dim out of range");
  int d = static_cast<int>(dv.get_si());

  std::vector<AffineContraction> maps;
  std::optional<AffineContraction> cur;
  bool have_a = false, have_b = false;
  auto flush = [&]() {
    if (!cur) return;
    if (!have_a || !have_b) fail("parse-error", "map block needs A and b");
    maps.push_back(std::move(*cur));
    cur.reset();
  };
  while (i < toks.size()) {
    const std::string& t = next();
    if (t == "map") {
      flush();
      cur = AffineContraction{};
      cur->dim = d;
      cur->A = RatMat(d, d);
      cur->b.assign(static_cast<size_t>(d), Int(0));
      cur->q = Int(2);
      cur->s = Int(1);
      have_a = have_b = false;
      continue;
    }
    if (!cur) fail("parse-error", "field '" + t + "' outside a map block");
    if (t == "A") {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) cur->A.at(r, c) = Rat(parse_int_token(next()));
      have_a = true;
    } else if (t == "q") {
      cur->q = parse_int_token(next());
    } else if (t == "b") {
      for (int r = 0; r < d; ++r) cur->b[static_cast<size_t>(r)] = parse_int_token(next());
      have_b = true;
    } else if (t == "s") {
      cur->s = parse_int_token(next());
    } else {
      fail("parse-error", "unknown field '" + t + "'");
    }
  }
  flush();
  return RationalIFS(d, std::move(maps));
}

RationalIFS ifs_from_spec(const std::string& spec) { return parse_ifs_text(spec); }

size_t Address::at(size_t i) const {
  if (i < pre.size()) return pre[i];
  if (period.empty()) fail("address-too-short", "finite word has no symbol at requested index");
  return period[(i - pre.size()) % period.size()];
}

std::vector<size_t> Address::prefix(size_t len) const {
  std::vector<size_t> w(len);
  for (size_t i = 0; i < len; ++i) w[i] = at(i);
  return w;
}

RatVec eval_prefix(const RationalIFS& ifs, const std::vector<size_t>& word, const RatVec& seed) {
  if (static_cast<int>(seed.size()) != ifs.dim()) fail("domain", "seed dimension mismatch");
  RatVec y = seed;
  for (size_t k = word.size(); k-- > 0;) {
    if (word[k] >= ifs.branch_count()) fail("invalid-address", "map index out of range");
    y = ifs.maps()[word[k]].apply(y);
  }
  return y;
}

RatVec periodic_fixed_point(const RationalIFS& ifs, const Address& addr) {
  if (addr.period.empty()) fail("empty-period", "address needs a nonempty period");
  int d = ifs.dim();
  RatMat M = RatMat::identity(d);
  RatVec c(static_cast<size_t>(d), Rat(0));
  for (size_t k = addr.period.size(); k-- > 0;) {
    size_t j = addr.period[k];
    if (j >= ifs.branch_count()) fail("invalid-address", "map index out of range");
    const AffineContraction& f = ifs.maps()[j];
    M = mat_scale(mat_mul(f.A, M), Rat(1) / Rat(f.q));
    RatVec fc = mat_vec(f.A, c);
    for (int i = 0; i < d; ++i) fc[i] = fc[i] / Rat(f.q) + Rat(f.b[i]) / Rat(f.s);
    c = std::move(fc);
  }
  RatMat N = mat_add(RatMat::identity(d), mat_scale(M, Rat(-1)));
  RatVec F = solve_linear(N, c);
  return eval_prefix(ifs, addr.pre, F);
}

std::vector<RatInterval> address_enclosure(const RationalIFS& ifs, const Address& addr,
                                           size_t depth) {
  if (addr.period.empty() && depth > addr.pre.size()) {
    fail("address-too-short", "finite word shorter than requested depth");
  }
  RatVec center(static_cast<size_t>(ifs.dim()));
  for (int i = 0; i < ifs.dim(); ++i) {
    center[static_cast<size_t>(i)] =
        (ifs.attractor_box()[static_cast<size_t>(i)].lo + ifs.attractor_box()[static_cast<size_t>(i)].hi) / Rat(2);
  }
  RatVec y = eval_prefix(ifs, addr.prefix(depth), center);
  Rat err = ifs.diameter_ub();
  Rat t = ifs.tau();
  for (size_t k = 0; k < depth; ++k) err *= t;
  std::vector<RatInterval> out;
  for (int i = 0; i < ifs.dim(); ++i) {
    const Rat& v = y[static_cast<size_t>(i)];
    out.emplace_back(v - err, v + err);
  }
  return out;
}

Real address_value(const RationalIFS& ifs, const Address& addr) {
  if (ifs.dim() != 1) fail("domain", "scalar value needs a one-dimensional system");
  // Copy by value: the returned object must not dangle on the caller's stack.
  RationalIFS sys = ifs;
  Address a = addr;
  return Real::from_fn([sys, a](long prec) {
    Rat eps = Rat(1) / Rat(Int(1) << static_cast<unsigned long>(std::max<long>(prec, 4)));
    Rat err = sys.diameter_ub();
    Rat t = sys.tau();
    size_t depth = 0;
    while (err > eps && depth < 4000000) {
      err *= t;
      ++depth;
    }
    if (!a.period.empty() || depth <= a.pre.size()) {
      return address_enclosure(sys, a, depth)[0];
    }
    // Finite word: beyond its length the value is exact.
    RatVec y = eval_prefix(sys, a.pre, {sys.attractor_box()[0].lo});
    return RatInterval::point(y[0]);
  });
}

namespace {

std::string state_key(const RatVec& y) {
  std::string k;
  for (const Rat& c : y) {
    k += rat_str(c);
    k.push_back(';');
  }
  return k;
}

bool in_box(const std::vector<RatInterval>& box, const RatVec& y) {
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] < box[i].lo || y[i] > box[i].hi) return false;
  }
  return true;
}

struct InverseMaps {
  std::vector<RatMat> lin;   // q_j * A_j^{-1}
  std::vector<RatVec> off;   // b_j / s_j
};

InverseMaps make_inverses(const RationalIFS& ifs) {
  InverseMaps inv;
  int d = ifs.dim();
  for (const auto& f : ifs.maps()) {
    RatMat m(d, d);
    for (int col = 0; col < d; ++col) {
      RatVec e(static_cast<size_t>(d), Rat(0));
      e[static_cast<size_t>(col)] = Rat(1);
      RatVec x = solve_linear(f.A, e);
      for (int r = 0; r < d; ++r) m.at(r, col) = x[static_cast<size_t>(r)] * Rat(f.q);
    }
    inv.lin.push_back(std::move(m));
    inv.off.push_back(f.offset());
  }
  return inv;
}

RatVec inv_apply(const InverseMaps& inv, size_t j, const RatVec& y) {
  RatVec z = vec_sub(y, inv.off[j]);
  return mat_vec(inv.lin[j], z);
}

bool viable(const RationalIFS& ifs, const InverseMaps& inv, const RatVec& y, int depth) {
  if (!in_box(ifs.attractor_box(), y)) return false;
  if (depth == 0) return true;
  for (size_t j = 0; j < ifs.branch_count(); ++j) {
    RatVec z = inv_apply(inv, j, y);
    if (viable(ifs, inv, z, depth - 1)) return true;
  }
  return false;
}

}  // namespace

AddressResult rational_to_address(const RationalIFS& ifs, const RatVec& x, int lookahead,
                                  size_t max_steps) {
  if (!ifs.unimodular()) fail("not-unimodular", "inverse iteration needs |det A| == 1");
  if (static_cast<int>(x.size()) != ifs.dim()) fail("domain", "point dimension mismatch");
  if (!in_box(ifs.attractor_box(), x)) fail("not-in-attractor", "point outside attractor box");

  InverseMaps inv = make_inverses(ifs);
  std::unordered_map<std::string, size_t> seen;
  std::vector<size_t> digits;
  RatVec y = x;
  while (digits.size() < max_steps) {
    std::string key = state_key(y);
    auto it = seen.find(key);
    if (it != seen.end()) {
      Address addr;
      addr.pre.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
      addr.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
      return {std::move(addr), digits.size()};
    }
    seen.emplace(std::move(key), digits.size());
    bool found = false;
    for (size_t j = 0; j < ifs.branch_count(); ++j) {
      RatVec z = inv_apply(inv, j, y);
      if (viable(ifs, inv, z, lookahead)) {
        digits.push_back(j);
        y = std::move(z);
        found = true;
        break;
      }
    }
    if (!found) fail("not-in-attractor", "no branch admits a continuation");
  }
  fail("budget-exceeded", "inverse iteration step budget exhausted");
}

PeriodCheck period_length_bound_check(const RationalIFS& ifs, const Rat& x) {
  if (ifs.dim() != 1) fail("domain", "period scan is one-dimensional");
  AddressResult ar = rational_to_address(ifs, {x});
  PeriodCheck out;
  out.period_length = ar.address.period.size();
  out.preperiod_length = ar.address.pre.size();
  Real D = ifs.dimension_ub();
  auto c = try_compare(D, Real(Rat(1)), 1 << 12);
  Real expo = (c && *c > 0) ? Real(Rat(1)) : D;
  Rat q(x.get_den());
  Real denom = (q == 1) ? Real(Rat(1)) : Real::exp_of(expo * Real::log_of(q));
  Real ratio = Real(Rat(static_cast<long>(out.period_length))) / denom;
  out.ratio = ratio.enclose(128);
  return out;
}

std::pair<size_t, size_t> pigeonhole_witness(const Address& addr, size_t N, size_t l) {
  for (size_t n = 0; n <= N; ++n) {
    for (size_t j = n + 1; j <= N; ++j) {
      bool match = true;
      for (size_t k = 0; k < l; ++k) {
        if (addr.at(n + k) != addr.at(j + k)) {
          match = false;
          break;
        }
      }
      if (match) return {n, j - n};
    }
  }
  fail("insufficient-points", "no block collision among the first N+1 shifts");
}

}  // namespace cantor
