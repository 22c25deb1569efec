#include "heightlab/heights.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

#include "heightlab/arith.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/northcott.hpp"

namespace heightlab {

namespace {

void sort_unique(std::vector<mpz_class>& primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
}

VectorK promote(const std::vector<mpz_class>& coords, const Field& field) {
  std::vector<Scalar> e;
  e.reserve(coords.size());
  for (const auto& c : coords) e.push_back(in_field(mpq_class(c), field));
  return VectorK(field, std::move(e));
}

struct Best {
  HeightValue value;
  std::optional<VectorK> witness;
  std::size_t points = 0;
};

// Evaluates f on every point (nullopt = skipped), keeping the first maximum
// in point order so the result does not depend on the worker count.
template <typename F>
Best parallel_max(const std::vector<ProjectivePoint>& points, const Field& field, unsigned workers, F f) {
  auto run = [&](std::size_t lo, std::size_t hi) {
    Best best;
    for (std::size_t i = lo; i < hi; ++i) {
      VectorK y = points[i].vector(field);
      std::optional<HeightValue> r = f(y);
      if (!r) continue;
      ++best.points;
      if (!best.witness || r->log() > best.value.log()) {
        best.value = *r;
        best.witness = std::move(y);
      }
    }
    return best;
  };
  const std::size_t w = std::max(1u, workers);
  const std::size_t chunk = (points.size() + w - 1) / w;
  std::vector<std::future<Best>> jobs;
  for (std::size_t lo = 0; lo < points.size(); lo += chunk) {
    jobs.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred, run, lo,
                              std::min(points.size(), lo + chunk)));
  }
  Best out;
  for (auto& j : jobs) {
    Best b = j.get();
    out.points += b.points;
    if (b.witness && (!out.witness || b.value.log() > out.value.log())) {
      out.value = b.value;
      out.witness = std::move(b.witness);
    }
  }
  return out;
}

}  // namespace

void TwistSpec::add(const Place& v, MatrixK a) {
  if (!(a.field() == v.field())) throw std::invalid_argument("twist matrix and place over different fields");
  if (determinant(a).is_zero()) throw std::invalid_argument("twist matrix at " + v.label() + " is singular");
  twists_.insert_or_assign(v, std::move(a));
}

const MatrixK* TwistSpec::find(const Place& v) const {
  auto it = twists_.find(v);
  return it == twists_.end() ? nullptr : &it->second;
}

TwistSpec TwistSpec::global(const MatrixK& a) {
  TwistSpec out;
  std::vector<Scalar> entries = a.entries();
  entries.push_back(determinant(a));
  for (const auto& v : finite_places(a.field(), candidate_primes(entries))) out.add(v, a);
  for (const auto& v : archimedean_places(a.field())) out.add(v, a);
  return out;
}

HeightValue assemble(const std::vector<PlaceContribution>& parts) {
  PrimePowerProduct finite;
  double log_arch = 0.0, rel_err = 0.0;
  for (const auto& [v, m] : parts) {
    if (m.is_zero()) throw std::logic_error("zero local factor at " + v.label());
    const mpq_class dv = v.weight();
    if (m.is_exact()) {
      finite.multiply(m.prime(), m.exponent() * dv);
    } else {
      log_arch += dv.get_d() * m.log();
      rel_err += dv.get_d() * m.rel_err();
    }
  }
  return {std::move(finite), log_arch, rel_err};
}

HeightValue product_formula_check(const Scalar& x) {
  if (x.is_zero()) throw DegenerateInputError("product formula needs a nonzero scalar");
  const Field field = x.is_rational() ? Field() : Field::quadratic(x.radicand());
  std::vector<PlaceContribution> parts;
  for (const auto& v : finite_places(field, candidate_primes({x}))) parts.push_back({v, abs_value(x, v)});
  for (const auto& v : archimedean_places(field)) parts.push_back({v, abs_value(x, v)});
  return assemble(parts);
}

std::vector<PlaceContribution> vector_height_places(const VectorK& x, const TwistSpec& twist, double tol) {
  (void)tol;
  std::vector<PlaceContribution> parts;
  if (x.is_zero()) return parts;
  std::vector<mpz_class> primes = candidate_primes(x.entries());
  for (const auto& [v, a] : twist.twists()) {
    if (!(v.field() == x.field())) throw std::invalid_argument("twist over a different field");
    if (a.dim() != x.size()) throw std::invalid_argument("twist matrix has the wrong size");
    if (v.is_finite()) primes.push_back(v.prime());
  }
  sort_unique(primes);
  auto local = [&](const Place& v) {
    const MatrixK* a = twist.find(v);
    return a ? vector_norm(*a * x, v) : vector_norm(x, v);
  };
  for (const auto& v : finite_places(x.field(), primes)) parts.push_back({v, local(v)});
  for (const auto& v : archimedean_places(x.field())) parts.push_back({v, local(v)});
  return parts;
}

HeightValue height_vector(const VectorK& x, const TwistSpec& twist, double tol) {
  return assemble(vector_height_places(x, twist, tol));
}

std::vector<PlaceContribution> matrix_height_places(const MatrixK& t, double tol) {
  return matrix_height_places(t, candidate_primes(t.entries()), tol);
}

std::vector<PlaceContribution> matrix_height_places(const MatrixK& t, const std::vector<mpz_class>& primes,
                                                    double tol) {
  std::vector<PlaceContribution> parts;
  if (t.is_zero()) return parts;
  for (const auto& v : finite_places(t.field(), primes)) {
    parts.push_back({v, operator_norm_finite(t, v)});
  }
  for (const auto& v : archimedean_places(t.field())) parts.push_back({v, operator_norm_arch(t, v, tol)});
  return parts;
}

HeightValue height_matrix(const MatrixK& t, double tol) { return assemble(matrix_height_places(t, tol)); }

std::vector<PlaceContribution> spectral_height_places(const MatrixK& t, double tol) {
  std::vector<PlaceContribution> parts;
  const CharPoly f = char_poly(t);
  if (f.is_power_of_x()) return parts;
  for (const auto& v : finite_places(t.field(), spectral_candidate_primes(f))) {
    parts.push_back({v, spectral_radius_finite(f, v)});
  }
  for (const auto& v : archimedean_places(t.field())) parts.push_back({v, spectral_radius_arch(t, v, tol)});
  return parts;
}

HeightValue height_spectral(const MatrixK& t, double tol) { return assemble(spectral_height_places(t, tol)); }

HeightValue height_subspace(const Subspace& x) { return height_vector(x.plucker()); }

HeightValue distance(const VectorK& y, const Subspace& x) {
  if (!(y.field() == x.field()) || y.size() != x.ambient()) {
    throw std::invalid_argument("vector and subspace do not match");
  }
  std::vector<VectorK> rows = x.basis();
  const std::vector<Scalar> p = maximal_minors(rows);
  rows.push_back(y);
  if (rows.size() > y.size()) throw DegenerateInputError("vector lies in the subspace (X = K^n)");
  const std::vector<Scalar> w = maximal_minors(rows);
  std::vector<mpz_class> primes = candidate_primes(p);
  for (auto& q : candidate_primes(w)) primes.push_back(std::move(q));
  sort_unique(primes);

  std::vector<PlaceContribution> parts;
  for (const auto& v : finite_places(y.field(), primes)) parts.push_back({v, subspace_seminorm(y, x, v)});
  for (const auto& v : archimedean_places(y.field())) parts.push_back({v, subspace_seminorm(y, x, v)});
  return assemble(parts);
}

HeightValue distance_via_span(const VectorK& y, const Subspace& x) {
  return height_subspace(x.extended_by(y)) / height_subspace(x);
}

ApproximationRatio approximation_ratio(const VectorK& y, const Subspace& x, long coeff_bound) {
  const double denom = distance(y, x).log() + height_subspace(x).log();
  const std::size_t l = x.dim();
  std::vector<long> c(l, -coeff_bound);
  ApproximationRatio out;
  while (true) {
    VectorK z = VectorK::zero(x.field(), x.ambient());
    for (std::size_t i = 0; i < l; ++i) z = z + Scalar(c[i]) * x.basis()[i];
    const double r = std::exp(height_vector(y - z).log() - denom);
    if (!out.best || r < out.ratio) {
      out.ratio = r;
      out.best = z;
    }
    ++out.tried;
    std::size_t i = 0;
    while (i < l && c[i] == coeff_bound) c[i++] = -coeff_bound;
    if (i == l) break;
    ++c[i];
  }
  return out;
}

OperatorHeightResult height_operator(const MatrixK& t, const OperatorHeightOptions& options) {
  OperatorHeightResult out;
  const std::size_t n = t.dim();
  out.rank = rank(t);
  out.upper = height_matrix(t, options.tol);
  if (out.rank == 0 || out.rank == n) {
    out.value = out.upper;
    out.lower = out.upper;
    return out;
  }
  if (out.rank == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      const VectorK c = t.column(j);
      if (c.is_zero()) continue;
      out.value = height_vector(primitive(c), {}, options.tol);
      break;
    }
    out.lower = *out.value;
    return out;
  }

  out.kind = OperatorHeightResult::Kind::bounded;
  out.lower_is_rigorous = false;
  const HeightValue kernel_height = height_subspace(*kernel(t));
  out.lower = out.upper / (HeightValue({}, std::log(options.c_hat), 0.0) * kernel_height);

  const auto points = enum_projective_points(n, options.search_bound, options.workers);
  Best best = parallel_max(points, t.field(), options.workers, [&](const VectorK& y) -> std::optional<HeightValue> {
    const VectorK ty = t * y;
    if (ty.is_zero()) return std::nullopt;
    return height_vector(ty, {}, options.tol) / height_vector(y, {}, options.tol);
  });
  if (best.witness) {
    out.empirical_lower = best.value;
    out.witness = std::move(best.witness);
  }
  return out;
}

SupResult kernel_quotient_sup(const MatrixK& t, double bound, unsigned workers) {
  if (t.is_zero()) throw DegenerateInputError("the supremum needs a nonzero matrix");
  const std::optional<Subspace> ker = kernel(t);
  const auto points = enum_projective_points(t.dim(), bound, workers);
  Best best = parallel_max(points, t.field(), workers, [&](const VectorK& y) -> std::optional<HeightValue> {
    if (ker && ker->contains(y)) return std::nullopt;
    const HeightValue d = ker ? distance(y, *ker) : height_vector(y);
    return height_vector(t * y) / d;
  });
  return {best.value, std::move(best.witness), best.points};
}

HeightValue pseudo_height(const mpq_class& x1, const mpq_class& x2) {
  if (x1 == 0) throw DegenerateInputError("the first coordinate must be nonzero");
  std::vector<mpz_class> primes = arith::prime_factors(x1.get_num());
  for (auto& p : arith::prime_factors(x1.get_den())) primes.push_back(std::move(p));
  for (auto& p : arith::prime_factors(x2.get_den())) primes.push_back(std::move(p));
  sort_unique(primes);

  PrimePowerProduct finite;
  for (const auto& p : primes) {
    mpq_class e = -arith::valuation(x1, p);
    if (x2 != 0) e = std::max(e, mpq_class(-(1 + arith::valuation(x2, p))));
    finite.multiply(p, e);
  }
  const mpq_class m = std::max(mpq_class(abs(x1)), mpq_class(abs(x2)));
  return {std::move(finite), log_abs(m), 0.0};
}

PseudoHeightDemo pseudo_height_demo(const mpz_class& q) {
  if (!arith::is_prime(q)) throw std::invalid_argument("q must be prime");
  PseudoHeightDemo out;
  out.q = q;
  out.pseudo = pseudo_height(mpq_class(q), 1);
  out.standard = height_vector(VectorK(Field(), {Scalar(q), Scalar(1)}));
  out.ratio = std::exp(out.standard.log() - out.pseudo.log());
  return out;
}

ComparisonInterval comparison_constant(const TwistSpec& twist, const Field& field, std::size_t n,
                                       std::size_t samples, std::uint64_t seed, long coord_bound) {
  ComparisonInterval out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-coord_bound, coord_bound);
  bool first = true;
  while (out.samples < samples) {
    std::vector<mpz_class> x(n);
    mpz_class g = 0;
    for (auto& c : x) {
      c = coord(rng);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g == 0) continue;
    for (auto& c : x) c /= g;
    const VectorK y = promote(x, field);
    const double r = std::exp(height_vector(y, twist).log() - height_vector(y).log());
    out.c_min = first ? r : std::min(out.c_min, r);
    out.c_max = first ? r : std::max(out.c_max, r);
    first = false;
    ++out.samples;
  }
  return out;
}

}  // namespace heightlab
