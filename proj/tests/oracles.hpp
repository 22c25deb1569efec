#pragma once

// Reference computations for tests. Everything here works straight from the
// definitions over Q with plain integer arithmetic, sharing no code with the
// library beyond gmpxx.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline long vp(mpz_class n, long p) {
  if (n == 0) return 1L << 40;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long vp_native(long long n, long p) {
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long vp(const mpq_class& q, long p) {
  if (q == 0) return 1L << 40;
  return vp(mpz_class(q.get_num()), p) - vp(mpz_class(q.get_den()), p);
}

/// Integer vector proportional to x with gcd 1 (x nonzero).
inline std::vector<mpz_class> primitive(const std::vector<mpq_class>& x) {
  mpz_class l = 1;
  for (const auto& q : x) l = lcm(l, mpz_class(q.get_den()));
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& q : x) {
    mpz_class v = q.get_num() * (l / q.get_den());
    g = gcd(g, v);
    z.push_back(v);
  }
  for (auto& v : z) v /= g;
  return z;
}

/// H(x) over Q: Euclidean norm of the primitive integer representative.
inline long double height_q(const std::vector<mpq_class>& x) {
  bool zero = std::all_of(x.begin(), x.end(), [](const mpq_class& q) { return q == 0; });
  if (zero) return 1.0L;
  mpz_class s = 0;
  for (const auto& v : primitive(x)) s += v * v;
  return std::sqrt(static_cast<long double>(s.get_d()));
}

/// sigma_max of [[a,b],[c,d]] squared is at most bb (a rational), decided from
/// sigma^2 = (f + sqrt(f^2 - 4 det^2)) / 2 with f the Frobenius norm squared.
inline bool sigma_max_sq_at_most(long a, long b, long c, long d, const mpq_class& bb) {
  const mpq_class f = a * a + b * b + c * c + d * d;
  const mpq_class det = a * d - b * c;
  const mpq_class rhs = 2 * bb - f;
  if (rhs < 0) return false;
  return f * f - 4 * det * det <= rhs * rhs;
}

/// Canonical (first nonzero entry positive) primitive integer points of
/// Euclidean norm at most B, scanned over the box |x_i| <= box.
inline std::set<std::vector<long>> brute_points(int n, const mpq_class& bound_sq, long box) {
  std::set<std::vector<long>> out;
  std::vector<long> x(static_cast<std::size_t>(n), -box);
  while (true) {
    long g = 0;
    long sq = 0;
    for (long v : x) {
      g = std::gcd(g, v);
      sq += v * v;
    }
    auto lead = std::find_if(x.begin(), x.end(), [](long v) { return v != 0; });
    if (g == 1 && *lead > 0 && mpq_class(sq) <= bound_sq) out.insert(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == box) x[i++] = -box;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

/// Invertible primitive canonical 2x2 integer matrices with sigma_max <= B.
inline std::set<std::vector<long>> brute_invertible_2x2(const mpq_class& bound_sq, long box) {
  std::set<std::vector<long>> out;
  for (long a = -box; a <= box; ++a)
    for (long b = -box; b <= box; ++b)
      for (long c = -box; c <= box; ++c)
        for (long d = -box; d <= box; ++d) {
          if (a * d - b * c == 0) continue;
          const long g = std::gcd(std::gcd(a, b), std::gcd(c, d));
          const long lead = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
          if (g != 1 || lead < 0) continue;
          if (sigma_max_sq_at_most(a, b, c, d, bound_sq)) out.insert({a, b, c, d});
        }
  return out;
}

/// Ascending coefficients of prod (x - a_i).
inline std::vector<mpq_class> expand_roots(const std::vector<mpq_class>& roots) {
  std::vector<mpq_class> c{1};
  for (const auto& a : roots) {
    std::vector<mpq_class> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= a * c[i];
    }
    c = next;
  }
  return c;
}

/// log of max_i |a_i|_p; -inf when every root is 0.
inline double log_max_abs_p(const std::vector<mpq_class>& roots, long p) {
  double best = -INFINITY;
  for (const auto& a : roots) {
    if (a == 0) continue;
    best = std::max(best, -static_cast<double>(vp(a, p)) * std::log(static_cast<double>(p)));
  }
  return best;
}

/// -log_p of min max_i |y_i - sum_j c_j b_ij|_p over the grid
/// c_j = k_j / p^r, 0 <= k_j < p^(2r), for integer y and basis rows b. Every
/// c in Q_p with v_p(c) >= -r is congruent to a grid point modulo p^r, and
/// the grids are nested in r.
inline long seminorm_grid_valuation(const std::vector<long>& y, const std::vector<std::vector<long>>& b, long p,
                                    int r) {
  long long pr = 1;
  for (int i = 0; i < r; ++i) pr *= p;
  const long long span = pr * pr;
  const std::size_t l = b.size();
  std::vector<long long> k(l, 0);
  long best = -(1L << 40);
  while (true) {
    long w = 1L << 40;
    for (std::size_t i = 0; i < y.size(); ++i) {
      long long z = pr * y[i];
      for (std::size_t j = 0; j < l; ++j) z -= k[j] * b[j][i];
      w = std::min(w, z == 0 ? (1L << 40) : vp_native(z, p) - r);
    }
    best = std::max(best, w);
    std::size_t j = 0;
    while (j < l && k[j] == span - 1) k[j++] = 0;
    if (j == l) break;
    ++k[j];
  }
  return best;
}

}  // namespace oracle
