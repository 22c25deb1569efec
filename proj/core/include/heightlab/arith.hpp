#pragma once

// Integer helpers on GMP integers: valuations, primality, factorisation and
// square roots modulo prime powers.

#include <gmpxx.h>

#include <vector>

namespace heightlab::arith {

/// Exponent of p in n; n must be nonzero.
long valuation(const mpz_class& n, const mpz_class& p);

/// Exponent of p in q (may be negative); q must be nonzero.
long valuation(const mpq_class& q, const mpz_class& p);

bool is_prime(const mpz_class& n);

/// Distinct prime divisors of |n|, ascending. Returns {} for |n| <= 1.
std::vector<mpz_class> prime_factors(const mpz_class& n);

/// Distinct primes p <= bound, ascending.
std::vector<long> primes_up_to(long bound);

bool is_squarefree(long m);

/// Legendre symbol (a/p) for odd prime p.
int legendre(const mpz_class& a, const mpz_class& p);

/// A square root of a modulo the odd prime p, in [0, p). Requires (a/p) = 1.
mpz_class sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

/// Root r of X^2 = m in Z_p, reduced modulo p^k. For odd p the root is the
/// Hensel lift of the smaller residue root mod p; for p = 2 (m = 1 mod 8) it
/// is the lift with r = 1 mod 4. Requires m to be a nonzero square mod p
/// (resp. m = 1 mod 8).
mpz_class sqrt_mod_prime_power(const mpz_class& m, const mpz_class& p, unsigned long k);

/// gcd of numerators / lcm of denominators over the nonzero inputs; 0 if all
/// inputs vanish.
mpq_class rational_content(const std::vector<mpq_class>& values);

}  // namespace heightlab::arith
