#include "cantor/report.hpp"

#include <mpfr.h>

namespace cantor {

namespace {

// Leading 24 digits and exact digit count without a full decimal conversion.
// Two directed conversions bracket |n|; when both truncate to the same
// 24-digit mantissa and exponent the result is certified. The slow exact
// division only runs if the brackets disagree, which needs |n| within one
// part in ~2^130 of a 24-digit decimal boundary.
struct LeadingDigits {
  std::string leading;
  size_t digits10;
};

LeadingDigits leading_digits_certified(const Int& n_abs) {
  mpfr_t lo, hi;
  mpfr_init2(lo, 160);
  mpfr_init2(hi, 160);
  mpfr_set_z(lo, n_abs.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi, n_abs.get_mpz_t(), MPFR_RNDU);
  mpfr_exp_t e_lo = 0, e_hi = 0;
  char buf_lo[32], buf_hi[32];
  mpfr_get_str(buf_lo, &e_lo, 10, 24, lo, MPFR_RNDZ);
  mpfr_get_str(buf_hi, &e_hi, 10, 24, hi, MPFR_RNDZ);
  bool agree = e_lo == e_hi && std::string(buf_lo) == std::string(buf_hi);
  mpfr_clear(lo);
  mpfr_clear(hi);
  if (agree) return {std::string(buf_lo), static_cast<size_t>(e_lo)};
  // boundary case: settle it exactly
  size_t d = mpz_sizeinbase(n_abs.get_mpz_t(), 10);  // exact or one too large
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(d - 1));
  if (n_abs < p10) --d;
  Int lead = n_abs;
  if (d > 24) {
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(d - 24));
    lead /= p10;
  }
  return {lead.get_str(), d};
}

}  // namespace

Json int_json(const Int& n, size_t digit_threshold) {
  size_t digits = mpz_sizeinbase(n.get_mpz_t(), 10);
  if (digits <= digit_threshold) return n.get_str();
  Json j;
  if (digits <= 100000) {
    std::string full = Int(abs(n)).get_str();
    j["digits10"] = full.size();
    j["leading"] = full.substr(0, 24);
  } else {
    auto ld = leading_digits_certified(Int(abs(n)));
    j["digits10"] = ld.digits10;
    j["leading"] = ld.leading;
  }
  j["negative"] = (n < 0);
  return j;
}

Json rat_json(const Rat& x) {
  Json j;
  j["num"] = int_json(x.get_num());
  j["den"] = int_json(x.get_den());
  size_t nd = mpz_sizeinbase(x.get_num().get_mpz_t(), 10);
  size_t dd = mpz_sizeinbase(x.get_den().get_mpz_t(), 10);
  if (nd <= 400 && dd <= 400) {
    j["display"] = rat_decimal(x, 12);
  }
  return j;
}

Json interval_json(const RatInterval& iv) {
  Json j;
  j["lo"] = rat_json(iv.lo);
  j["hi"] = rat_json(iv.hi);
  return j;
}

Json scaledpow_json(const ScaledPow& v) {
  Json j;
  j["scale"] = rat_json(v.scale);
  j["base"] = int_json(v.base);
  j["exp"] = int_json(v.exp);
  if (v.materializable(1 << 12)) j["display"] = rat_decimal(v.materialize(), 12);
  return j;
}

Json address_json(const Address& a) {
  Json j;
  j["pre"] = Json::array();
  for (size_t s : a.pre) j["pre"].push_back(s);
  j["period"] = Json::array();
  for (size_t s : a.period) j["period"].push_back(s);
  return j;
}

Json expansion_json(const BaseExpansion& e, const Int& base) {
  Json j;
  j["pre"] = digits_to_word(e.pre, base);
  j["period"] = digits_to_word(e.period, base);
  j["preperiod_length"] = e.pre.size();
  j["period_length"] = e.period.size();
  j["terminating"] = e.terminating;
  return j;
}

Json certificate_json(const MembershipCertificate& c, const Int& base) {
  Json j;
  j["member"] = c.member;
  j["used_dual"] = c.used_dual;
  if (c.witness) j["witness"] = expansion_json(*c.witness, base);
  if (c.first_bad_index) j["first_bad_index"] = *c.first_bad_index;
  if (c.first_bad_digit) j["first_bad_digit"] = int_json(*c.first_bad_digit);
  return j;
}

Json convergent_json(const Convergent& c) {
  Json j;
  j["a"] = int_json(c.a);
  j["u"] = int_json(c.u);
  j["v"] = int_json(c.v);
  return j;
}

Json report_envelope(const std::string& command, Json inputs, Json outputs, uint64_t seed) {
  Json j;
  j["command"] = command;
  j["version"] = kArtifactVersion;
  j["seed"] = seed;
  j["inputs"] = std::move(inputs);
  j["outputs"] = std::move(outputs);
  return j;
}

}  // namespace cantor
