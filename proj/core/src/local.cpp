#include "heightlab/local.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>

#include "heightlab/arith.hpp"
#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

void require_finite(const Place& v) {
  if (!v.is_finite()) throw std::invalid_argument("expected a finite place, got " + v.label());
}

void require_archimedean(const Place& v) {
  if (!v.is_archimedean()) throw std::invalid_argument("expected an archimedean place, got " + v.label());
}

long max_bits(const std::vector<Scalar>& entries) {
  long b = std::numeric_limits<long>::min();
  for (const auto& e : entries) {
    if (!e.is_zero()) b = std::max(b, bit_size(e));
  }
  return b;
}

}  // namespace

int NewtonPolygon::total_multiplicity() const {
  int s = 0;
  for (const auto& seg : slopes) s += seg.multiplicity;
  return s;
}

NewtonPolygon newton_polygon(const CharPoly& f, const Place& v) {
  require_finite(v);
  NewtonPolygon poly;
  const int n = f.degree();
  poly.zero_roots = f.zero_root_multiplicity();
  for (int i = poly.zero_roots; i <= n; ++i) {
    const Scalar& a = f.coefficient(i);
    if (!a.is_zero()) poly.points.push_back({i, valuation(a, v)});
  }
  if (poly.zero_roots == n) return poly;

  auto slope = [](const NewtonPolygon::Point& a, const NewtonPolygon::Point& b) {
    return mpq_class((b.valuation - a.valuation) / (b.index - a.index));
  };
  for (const auto& pt : poly.points) {
    while (poly.hull.size() >= 2 &&
           slope(poly.hull[poly.hull.size() - 2], poly.hull.back()) >= slope(poly.hull.back(), pt)) {
      poly.hull.pop_back();
    }
    poly.hull.push_back(pt);
  }
  for (std::size_t i = 1; i < poly.hull.size(); ++i) {
    poly.slopes.push_back({slope(poly.hull[i - 1], poly.hull[i]), poly.hull[i].index - poly.hull[i - 1].index});
  }
  return poly;
}

std::optional<mpq_class> min_valuation(const std::vector<Scalar>& entries, const Place& v) {
  std::optional<mpq_class> best;
  for (const auto& e : entries) {
    if (e.is_zero()) continue;
    mpq_class w = valuation(e, v);
    if (!best || w < *best) best = std::move(w);
  }
  return best;
}

double log_l2_norm(const std::vector<Scalar>& entries, const Place& v) {
  require_archimedean(v);
  const long bits = max_bits(entries);
  if (bits == std::numeric_limits<long>::min()) return -std::numeric_limits<double>::infinity();
  const long shift = bits - 32;
  long double sum = 0.0L;
  for (const auto& e : entries) {
    if (!e.is_zero()) sum += std::norm(embed(e, v, shift));
  }
  return static_cast<double>(0.5L * std::log(sum) + static_cast<long double>(shift) * kLn2);
}

LocalMagnitude vector_norm(const VectorK& x, const Place& v) {
  if (v.is_finite()) {
    auto w = min_valuation(x.entries(), v);
    if (!w) return LocalMagnitude::zero(true);
    return LocalMagnitude::exact(v.prime(), -*w);
  }
  return LocalMagnitude::real(log_l2_norm(x.entries(), v), 8 * static_cast<double>(x.size()) * LDBL_EPSILON);
}

LocalMagnitude operator_norm_finite(const MatrixK& t, const Place& v) {
  require_finite(v);
  auto w = min_valuation(t.entries(), v);
  if (!w) return LocalMagnitude::zero(true);
  return LocalMagnitude::exact(v.prime(), -*w);
}

namespace {

template <typename Entry>
long double largest_eigenvalue(const Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericError("Hermitian eigen-solve did not converge", 0.0, std::numeric_limits<double>::infinity());
  }
  return static_cast<long double>(es.eigenvalues().maxCoeff());
}

}  // namespace

LocalMagnitude operator_norm_arch(const MatrixK& t, const Place& v, double tol) {
  require_archimedean(v);
  if (t.is_zero()) return LocalMagnitude::zero(false);
  const std::size_t n = t.dim();
  const bool complex = v.embedding() == Place::Embedding::complex;
  const MatrixK gram = (complex ? t.conjugate_transpose() : t.transpose()) * t;
  const long shift = max_bits(gram.entries()) - 32;

  long double lambda = 0.0L;
  long double max_diag = 0.0L, trace = 0.0L;
  if (complex) {
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = embed(gram(i, j), v, shift);
    for (std::size_t i = 0; i < n; ++i) {
      max_diag = std::max(max_diag, a(i, i).real());
      trace += a(i, i).real();
    }
    lambda = largest_eigenvalue(a);
  } else {
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = embed(gram(i, j), v, shift).real();
    for (std::size_t i = 0; i < n; ++i) {
      max_diag = std::max(max_diag, a(i, i));
      trace += a(i, i);
    }
    lambda = largest_eigenvalue(a);
  }
  // max column norm^2 <= lambda_max <= trace(T*T).
  const long double slack = static_cast<long double>(tol);
  if (!(lambda >= max_diag * (1 - slack)) || !(lambda <= trace * (1 + slack))) {
    const double scale = std::exp2(0.5 * static_cast<double>(shift));
    throw NumericError("largest singular value failed validation",
                       static_cast<double>(std::sqrt(max_diag)) * scale,
                       static_cast<double>(std::sqrt(trace)) * scale);
  }
  const long double log_sigma = 0.5L * (std::log(lambda) + static_cast<long double>(shift) * kLn2);
  return LocalMagnitude::real(static_cast<double>(log_sigma), 64.0 * static_cast<double>(n) * DBL_EPSILON);
}

LocalMagnitude operator_norm(const MatrixK& t, const Place& v, double tol) {
  return v.is_finite() ? operator_norm_finite(t, v) : operator_norm_arch(t, v, tol);
}

LocalMagnitude spectral_radius_finite(const CharPoly& f, const Place& v) {
  require_finite(v);
  if (f.is_power_of_x()) return LocalMagnitude::zero(true);
  const NewtonPolygon poly = newton_polygon(f, v);
  return LocalMagnitude::exact(v.prime(), poly.max_slope());
}

LocalMagnitude spectral_radius_finite(const MatrixK& t, const Place& v) {
  return spectral_radius_finite(char_poly(t), v);
}

namespace {

using cld = std::complex<long double>;

struct PolishedRoots {
  std::vector<cld> roots;
  long double max_rel_step = 0.0L;
  bool converged = true;
};

// Roots of the monic polynomial c. The polynomial is rescaled by a power of
// two so that every root lies in the unit disc; the companion eigenvalues are
// then polished by Newton steps in extended precision.
PolishedRoots find_roots(const std::vector<cld>& c) {
  const std::size_t d = c.size() - 1;  // monic, c[d] = 1
  PolishedRoots out;
  if (d == 1) {
    out.roots.push_back(-c[0]);
    return out;
  }
  long double bound = 0.0L;
  for (std::size_t i = 0; i < d; ++i) {
    const long double term = i == 0 ? std::abs(c[i]) / 2 : std::abs(c[i]);
    bound = std::max(bound, std::pow(term, 1.0L / static_cast<long double>(d - i)));
  }
  const int e = bound > 0 ? std::ilogb(2 * bound) + 1 : 0;
  std::vector<cld> w(c.size());
  for (std::size_t i = 0; i <= d; ++i) w[i] = std::ldexp(1.0L, -e * static_cast<int>(d - i)) * c[i];

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<long>(d), static_cast<long>(d));
  for (std::size_t i = 1; i < d; ++i) companion(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    companion(static_cast<long>(i), static_cast<long>(d - 1)) =
        std::complex<double>(-static_cast<double>(w[i].real()), -static_cast<double>(w[i].imag()));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  if (es.info() != Eigen::Success) {
    throw NumericError("companion eigen-solve did not converge", 0.0, std::numeric_limits<double>::infinity());
  }
  auto eval = [&](const cld& z, cld& dp) {
    cld p = w[d];
    dp = 0;
    for (std::size_t i = d; i-- > 0;) {
      dp = dp * z + p;
      p = p * z + w[i];
    }
    return p;
  };
  cld sum = 0;
  long double largest = 0.0L;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const cld z0(es.eigenvalues()(i).real(), es.eigenvalues()(i).imag());
    cld z = z0;
    bool done = false;
    long double step = 0.0L;
    for (int it = 0; it < 80 && !done; ++it) {
      cld dp;
      const cld p = eval(z, dp);
      if (std::abs(dp) == 0.0L) break;
      const cld delta = p / dp;
      z -= delta;
      step = std::abs(delta);
      done = step <= 16 * LDBL_EPSILON;
    }
    // Newton must stay near the eigenvalue it started from.
    if (std::abs(z - z0) > 1e-6L) {
      z = z0;
      out.converged = false;
    }
    // Only the largest root enters rho.
    if (std::abs(z) >= largest) {
      largest = std::abs(z);
      out.max_rel_step = step / std::max(largest, LDBL_EPSILON);
    }
    sum += z;
    out.roots.push_back(std::ldexp(1.0L, e) * z);
  }
  // Two starts polished onto one root would show up in the root sum.
  if (std::abs(sum + w[d - 1]) > 1e-12L * static_cast<long double>(d)) out.converged = false;
  return out;
}

}  // namespace

LocalMagnitude spectral_radius_arch(const CharPoly& f, const Place& v, double tol) {
  require_archimedean(v);
  if (f.is_power_of_x()) return LocalMagnitude::zero(false);
  const int z = f.zero_root_multiplicity();
  std::vector<Scalar> shifted(f.polynomial().coefficients().begin() + z, f.polynomial().coefficients().end());
  const Polynomial g = squarefree_part(Polynomial(f.field(), std::move(shifted)));

  std::vector<cld> c;
  for (const auto& a : g.coefficients()) c.push_back(embed(a, v));
  const std::size_t d = c.size() - 1;
  const PolishedRoots roots = find_roots(c);

  long double rho = 0.0L;
  for (const auto& r : roots.roots) rho = std::max(rho, std::abs(r));

  // Cauchy: rho <= 1 + max|c_i|; Fujiwara: rho <= 2 max |c_{d-i}|^{1/i} (last term halved).
  long double cauchy = 0.0L, fujiwara = 0.0L;
  for (std::size_t i = 0; i < d; ++i) {
    const long double ai = std::abs(c[i]);
    cauchy = std::max(cauchy, ai);
    const long double term = i == 0 ? ai / 2 : ai;
    fujiwara = std::max(fujiwara, std::pow(term, 1.0L / static_cast<long double>(d - i)));
  }
  cauchy += 1;
  fujiwara *= 2;
  // The largest root is at least the geometric mean of all root moduli.
  const long double lower = std::pow(std::abs(c[0]), 1.0L / static_cast<long double>(d));
  const long double slack = static_cast<long double>(tol);
  const long double upper = std::min(cauchy, fujiwara);
  if (!roots.converged || rho > upper * (1 + slack) || rho < lower * (1 - slack)) {
    throw NumericError("spectral radius root-finder failed validation", static_cast<double>(lower),
                       static_cast<double>(upper));
  }
  return LocalMagnitude::real(static_cast<double>(std::log(rho)),
                              static_cast<double>(std::max(roots.max_rel_step, 64 * LDBL_EPSILON)));
}

LocalMagnitude spectral_radius_arch(const MatrixK& t, const Place& v, double tol) {
  const LocalMagnitude rho = spectral_radius_arch(char_poly(t), v, tol);
  if (rho.is_zero()) return rho;
  // Gelfand cross-check: rho <= ||T^k||^{1/k} for every k.
  StrippedPower power = power_stripped(t, 1);
  for (int j = 0; j <= 4; ++j) {
    const double k = std::ldexp(1.0, j);
    const double bound = (operator_norm_arch(power.matrix, v, tol).log() + log_abs(power.scale)) / k;
    if (rho.log() > bound + tol) {
      throw NumericError("spectral radius exceeds a norm-power bound", 0.0, std::exp(bound));
    }
    if (j < 4) power = square_stripped(power);
  }
  return rho;
}

LocalMagnitude spectral_radius(const MatrixK& t, const Place& v, double tol) {
  return v.is_finite() ? spectral_radius_finite(t, v) : spectral_radius_arch(t, v, tol);
}

LocalMagnitude subspace_seminorm(const VectorK& y, const Subspace& x, const Place& v) {
  std::vector<VectorK> rows = x.basis();
  const std::vector<Scalar> p = maximal_minors(rows);
  rows.push_back(y);
  if (rows.size() > y.size()) throw DegenerateInputError("vector lies in the subspace (X = K^n)");
  const std::vector<Scalar> w = maximal_minors(rows);
  if (std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); })) {
    throw DegenerateInputError("vector lies in the subspace");
  }
  if (v.is_finite()) {
    return LocalMagnitude::exact(v.prime(), *min_valuation(p, v) - *min_valuation(w, v));
  }
  return LocalMagnitude::real(log_l2_norm(w, v) - log_l2_norm(p, v),
                              16 * static_cast<double>(w.size() + p.size()) * LDBL_EPSILON);
}

std::vector<mpz_class> candidate_primes(const std::vector<Scalar>& entries) {
  mpz_class dens = 1, norm_gcd = 0;
  bool any = false;
  for (const auto& e : entries) {
    if (e.is_zero()) continue;
    any = true;
    mpz_lcm(dens.get_mpz_t(), dens.get_mpz_t(), e.a().get_den_mpz_t());
    mpz_lcm(dens.get_mpz_t(), dens.get_mpz_t(), e.b().get_den_mpz_t());
    const mpq_class n = e.norm();
    mpz_gcd(norm_gcd.get_mpz_t(), norm_gcd.get_mpz_t(), n.get_num_mpz_t());
  }
  if (!any) return {};
  std::vector<mpz_class> out = arith::prime_factors(dens);
  for (auto& p : arith::prime_factors(norm_gcd)) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<mpz_class> spectral_candidate_primes(const CharPoly& f) {
  const auto& c = f.polynomial().coefficients();
  return candidate_primes(std::vector<Scalar>(c.begin(), c.end() - 1));
}

std::vector<Place> finite_places(const Field& field, const std::vector<mpz_class>& primes) {
  std::vector<Place> out;
  for (const auto& p : primes) {
    for (auto& v : places_above(field, p)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace heightlab
