#include "heightlab/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace heightlab::arith {

long valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  mpz_class rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const mpq_class& q, const mpz_class& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (long i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class d = x - y;
          q = q * abs(d);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = x - ys;
        d = abs(d);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<mpz_class> prime_factors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<mpz_class> out;
  if (n <= 1) return out;
  static const std::vector<long> small = primes_up_to(1 << 12);
  for (long p : small) {
    if (n == 1) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      out.emplace_back(p);
      mpz_class pp = p;
      mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_squarefree(long m) {
  if (m == 0) return false;
  unsigned long a = static_cast<unsigned long>(std::labs(m));
  for (unsigned long d = 2; d * d <= a; ++d) {
    if (a % (d * d) == 0) return false;
  }
  return true;
}

int legendre(const mpz_class& a, const mpz_class& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

mpz_class sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a;
  mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), p.get_mpz_t());
  if (a == 0) return 0;
  if (legendre(a, p) != 1) throw std::domain_error("not a quadratic residue");
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  mpz_class z = 2;
  while (legendre(z, p) != -1) ++z;
  mpz_class c, r, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long mm = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mm; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    mm = i;
  }
  return r;
}

mpz_class sqrt_mod_prime_power(const mpz_class& m, const mpz_class& p, unsigned long k) {
  if (k == 0) return 0;
  if (p == 2) {
    mpz_class m8;
    mpz_mod_ui(m8.get_mpz_t(), m.get_mpz_t(), 8);
    if (m8 != 1) throw std::domain_error("m is not a 2-adic square");
    // r^2 = m (mod 2^i), lift bit by bit keeping r = 1 (mod 4).
    mpz_class r = 1;
    for (unsigned long i = 3; i < k; ++i) {
      mpz_class mod = mpz_class(1) << (i + 1);
      mpz_class diff = r * r - m;
      mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), mod.get_mpz_t());
      if (diff != 0) r += mpz_class(1) << (i - 1);
    }
    mpz_class mod = mpz_class(1) << k;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  mpz_class r = sqrt_mod_prime(m, p);
  if (p - r < r) r = p - r;
  unsigned long prec = 1;
  mpz_class mod = p;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), prec);
    mpz_class f = r * r - m;
    mpz_class df = 2 * r, inv;
    if (mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), mod.get_mpz_t()) == 0) {
      throw std::domain_error("Hensel lift: derivative not invertible");
    }
    r = r - f * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  }
  mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return r;
}

mpq_class rational_content(const std::vector<mpq_class>& values) {
  mpz_class g = 0, l = 1;
  for (const auto& v : values) {
    if (v == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  if (g == 0) return 0;
  mpq_class out(g, l);
  out.canonicalize();
  return out;
}

}  // namespace heightlab::arith
