#pragma once

#include "cantor/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace cantor {

// Budget for factoring work. rho_iterations caps the total number of Brent-rho iterations spent
// on one factor() call; exceeding it raises "factorization-limit".
struct FactorBudget {
  uint64_t trial_limit = 1'000'000;
  uint64_t rho_iterations = 40'000'000;
};

// Deterministic primality for n < 3.3e24 (fixed Miller-Rabin witness set); larger inputs raise
// "factorization-limit" rather than returning a probabilistic verdict.
bool is_prime(const Int& n);

// Prime factorization as {prime -> exponent}, deterministic. n >= 1.
std::map<Int, int> factor(const Int& n, const FactorBudget& budget = {});

Int euler_phi_from_factors(const std::map<Int, int>& f);
// Carmichael function from the factorization of m.
Int carmichael_from_factors(const std::map<Int, int>& f);

// Multiplicative order of base modulo m; requires gcd(base, m) == 1, m >= 1 (order mod 1 is 1).
Int mult_order(const Int& base, const Int& m, const FactorBudget& budget = {});

std::vector<uint64_t> primes_up_to(uint64_t n);
// q and (q-1)/2 both prime, q <= n.
std::vector<uint64_t> safe_primes_up_to(uint64_t n);

// Largest k such that n is an exact k-th power (n >= 2), with the corresponding root.
struct PrimitivePower {
  Int root;
  unsigned long exponent;
};
PrimitivePower primitive_power(const Int& n);

// Exact k-th root if n is a perfect k-th power.
std::optional<Int> exact_root(const Int& n, unsigned long k);

}  // namespace cantor
