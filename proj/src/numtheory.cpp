#include "cantor/numtheory.hpp"

#include <algorithm>

namespace cantor {

namespace {

// Miller-Rabin round; n odd, n > 2.
bool mr_witness(const Int& n, const Int& a, const Int& d, unsigned long r) {
  Int am = a % n;
  if (am == 0) return false;  // a multiple of n proves nothing
  Int x;
  mpz_powm(x.get_mpz_t(), am.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  for (unsigned long p : small) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  // Sorenson-Webster witness set: deterministic for n < 3.317e24.
  static const Int limit("3317044064679887385961981");
  if (n >= limit)
    fail("factorization-limit", "primality test input exceeds the deterministic witness range");
  Int d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  static const unsigned long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long a : witnesses)
    if (mr_witness(n, Int(a), d, r)) return false;
  return true;
}

namespace {

Int rho_brent(const Int& n, uint64_t& iterations_left) {
  // Brent's cycle-finding variant of Pollard rho, deterministic constants.
  for (unsigned long c = 1; c < 64; ++c) {
    Int y(2), m(128), g(1), r(1), q(1), x, ys;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k(0);
      while (k < r && g == 1) {
        ys = y;
        Int lim = std::min(m, Int(r - k));
        for (Int i = 0; i < lim; ++i) {
          if (iterations_left == 0)
            fail("factorization-limit", "factoring budget exhausted on " + n.get_str());
          --iterations_left;
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack one step at a time
      do {
        if (iterations_left == 0)
          fail("factorization-limit", "factoring budget exhausted on " + n.get_str());
        --iterations_left;
        ys = (ys * ys + c) % n;
        mpz_gcd(g.get_mpz_t(), Int(abs(x - ys)).get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  fail("factorization-limit", "rho failed to split " + n.get_str());
}

void factor_rec(const Int& n, std::map<Int, int>& out, uint64_t& iterations_left) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  // perfect powers first: cheap and keeps rho inputs small
  PrimitivePower pp = primitive_power(n);
  if (pp.exponent > 1) {
    std::map<Int, int> sub;
    factor_rec(pp.root, sub, iterations_left);
    for (auto& [p, e] : sub) out[p] += e * static_cast<int>(pp.exponent);
    return;
  }
  Int d = rho_brent(n, iterations_left);
  factor_rec(d, out, iterations_left);
  factor_rec(Int(n / d), out, iterations_left);
}

}  // namespace

std::map<Int, int> factor(const Int& n, const FactorBudget& budget) {
  if (n < 1) fail("domain", "factor() requires n >= 1");
  std::map<Int, int> out;
  Int rest = n;
  for (uint64_t p = 2; p <= budget.trial_limit && rest > 1; p == 2 ? p = 3 : p += 2) {
    if (p * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      out[Int(static_cast<unsigned long>(p))] += 1;
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
  }
  if (rest > 1) {
    uint64_t left = budget.rho_iterations;
    factor_rec(rest, out, left);
  }
  return out;
}

Int euler_phi_from_factors(const std::map<Int, int>& f) {
  Int phi(1);
  for (const auto& [p, e] : f) {
    Int pe(1);
    for (int i = 0; i < e - 1; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

Int carmichael_from_factors(const std::map<Int, int>& f) {
  Int lam(1);
  for (const auto& [p, e] : f) {
    Int comp;
    if (p == 2 && e >= 3) {
      mpz_ui_pow_ui(comp.get_mpz_t(), 2, static_cast<unsigned long>(e - 2));
    } else {
      Int pe(1);
      for (int i = 0; i < e - 1; ++i) pe *= p;
      comp = pe * (p - 1);
    }
    mpz_lcm(lam.get_mpz_t(), lam.get_mpz_t(), comp.get_mpz_t());
  }
  return lam;
}

Int mult_order(const Int& base, const Int& m, const FactorBudget& budget) {
  if (m < 1) fail("domain", "mult_order modulus must be >= 1");
  if (m == 1) return Int(1);
  Int g;
  mpz_gcd(g.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t());
  if (g != 1) fail("not-coprime", "mult_order requires gcd(base, modulus) = 1");
  Int lam = carmichael_from_factors(factor(m, budget));
  // strip each prime of lambda while the power still hits 1
  Int order = lam;
  std::map<Int, int> lf = factor(lam, budget);
  for (const auto& [p, e] : lf) {
    for (int i = 0; i < e; ++i) {
      Int cand = order / p;
      Int x;
      mpz_powm(x.get_mpz_t(), base.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
      if (x == 1)
        order = cand;
      else
        break;
    }
  }
  return order;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
  std::vector<uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  sieve[0] = sieve[1] = false;
  for (uint64_t i = 2; i * i <= n; ++i)
    if (sieve[i])
      for (uint64_t j = i * i; j <= n; j += i) sieve[j] = false;
  for (uint64_t i = 2; i <= n; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

std::vector<uint64_t> safe_primes_up_to(uint64_t n) {
  std::vector<uint64_t> out;
  auto ps = primes_up_to(n);
  for (uint64_t q : ps) {
    if (q < 5) continue;
    uint64_t h = (q - 1) / 2;
    if (std::binary_search(ps.begin(), ps.end(), h)) out.push_back(q);
  }
  return out;
}

PrimitivePower primitive_power(const Int& n) {
  if (n < 2) fail("domain", "primitive_power requires n >= 2");
  unsigned long maxk = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = maxk; k >= 2; --k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {root, k};
  }
  return {n, 1};
}

std::optional<Int> exact_root(const Int& n, unsigned long k) {
  if (k == 0) fail("domain", "0th root");
  Int root;
  if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
  return std::nullopt;
}

}  // namespace cantor
