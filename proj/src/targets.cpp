#include "cantor/targets.hpp"

#include "cantor/rational.hpp"

namespace cantor {

Real target_sqrt2_minus_1() { return Real::sqrt_of(Rat(2)) - Real(Rat(1)); }

Real target_golden() { return Rat(1, 2) * (Rat(1) + Real::sqrt_of(Rat(5))); }

Real target_lacunary3() {
  return Real::from_fn([](long prec) -> RatInterval {
    Rat s(0);
    Int f(1);
    for (long n = 1;; ++n) {
      f *= n;
      Int den;
      mpz_ui_pow_ui(den.get_mpz_t(), 3, f.get_ui());
      s += Rat(2) / Rat(den);
      // tail <= 3 * 3^{-(n+1)!}; stop once that is below 2^-prec
      Int nf(f * (n + 1));
      if (nf > 64 && nf * 19 > Int(prec) * 12 + 64) {
        Int tden;
        if (nf > (1 << 26)) {
          // far beyond any requested precision; treat the tail as one ulp
          return RatInterval(s, s + Rat(1, Int(1) << 60));
        }
        mpz_ui_pow_ui(tden.get_mpz_t(), 3, nf.get_ui());
        return RatInterval(s, s + Rat(3) / Rat(tden));
      }
    }
  });
}

Real parse_target(const std::string& text) {
  if (text == "sqrt2-1") return target_sqrt2_minus_1();
  if (text == "golden") return target_golden();
  if (text == "lacunary3") return target_lacunary3();
  if (text == "pi") return Real::pi();
  if (text == "e") return Real::e();
  if (text == "log2") return Real::log_of(Rat(2));
  auto root_form = [&](const std::string& prefix, unsigned long k) -> bool {
    return text.size() > prefix.size() && text.rfind(prefix, 0) == 0 &&
           text.find_first_not_of("0123456789", prefix.size()) == std::string::npos &&
           k > 0;
  };
  if (root_form("sqrt", 2)) return Real::sqrt_of(Rat(parse_rat(text.substr(4))));
  if (root_form("cbrt", 3)) return Real::root_of(Rat(parse_rat(text.substr(4))), 3);
  return Real(parse_rat(text));
}

}  // namespace cantor
