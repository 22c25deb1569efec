#include "heightlab/invariants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <stdexcept>

#include "heightlab/arith.hpp"
#include "heightlab/asymptotics.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/text_io.hpp"

namespace heightlab {

namespace {

using Rng = std::mt19937_64;

struct Case {
  bool failed = false;
  std::string witness;
  std::string input;  ///< Reported when a computation throws.
  double deviation = 0.0;

  void fail(std::string what) {
    if (!failed) witness = std::move(what);
    failed = true;
  }

  // Finite halves equal, archimedean halves within tol.
  void same(const HeightValue& x, const HeightValue& y, double tol, const std::string& what) {
    const double dev = std::fabs(x.log_arch() - y.log_arch());
    deviation = std::max(deviation, dev);
    if (!(x.finite() == y.finite())) {
      fail(what + ": finite " + x.finite().str() + " vs " + y.finite().str());
    } else if (!(dev <= tol)) {
      fail(what + ": arch deviation " + std::to_string(dev));
    }
  }

  void at_most(double lhs, double rhs, double tol, const std::string& what) {
    if (!(lhs <= rhs + tol)) fail(what + ": " + std::to_string(lhs) + " > " + std::to_string(rhs));
  }
};

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Field random_field(Rng& rng) {
  static const long radicands[] = {0, -1, 2, -5, 5, -3, 3, -2, 6, -7};
  const long m = radicands[uniform(rng, 0, 9)];
  return m == 0 ? Field() : Field::quadratic(m);
}

mpq_class random_rational(Rng& rng, long bound, long max_den) {
  return mpq_class(uniform(rng, -bound, bound), uniform(rng, 1, max_den));
}

Scalar random_scalar(Rng& rng, const Field& field, long bound = 9, long max_den = 1) {
  mpq_class a = random_rational(rng, bound, max_den);
  mpq_class b = 0;
  if (!field.is_rational() && coin(rng, 0.4)) b = random_rational(rng, bound, max_den);
  a.canonicalize();
  b.canonicalize();
  return Scalar(a, b, field.m());
}

Scalar random_nonzero(Rng& rng, const Field& field, long bound = 12, long max_den = 6) {
  while (true) {
    Scalar s = random_scalar(rng, field, bound, max_den);
    if (!s.is_zero()) return s;
  }
}

MatrixK random_matrix(Rng& rng, const Field& field, std::size_t n, long bound = 9) {
  std::vector<Scalar> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_scalar(rng, field, bound, coin(rng, 0.2) ? 3 : 1));
  return MatrixK(field, n, std::move(e));
}

MatrixK random_nonzero_matrix(Rng& rng, const Field& field, std::size_t n, long bound = 9) {
  while (true) {
    MatrixK t = random_matrix(rng, field, n, bound);
    if (!t.is_zero()) return t;
  }
}

MatrixK random_invertible(Rng& rng, const Field& field, std::size_t n, long bound = 9) {
  while (true) {
    MatrixK t = random_matrix(rng, field, n, bound);
    if (!determinant(t).is_zero()) return t;
  }
}

VectorK random_vector(Rng& rng, const Field& field, std::size_t n, long bound = 9) {
  while (true) {
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(random_scalar(rng, field, bound, coin(rng, 0.2) ? 4 : 1));
    VectorK x(field, std::move(e));
    if (!x.is_zero()) return x;
  }
}

// T of the requested rank: A * diag(1,..,1,0,..,0) * B with A, B invertible.
MatrixK random_of_rank(Rng& rng, const Field& field, std::size_t n, std::size_t r) {
  std::vector<Scalar> d(n, Scalar(0));
  for (std::size_t i = 0; i < r; ++i) d[i] = in_field(1, field);
  return random_invertible(rng, field, n, 3) * MatrixK::diagonal(field, d) * random_invertible(rng, field, n, 3);
}

Subspace random_subspace(Rng& rng, const Field& field, std::size_t n, std::size_t dim) {
  while (true) {
    std::vector<VectorK> basis;
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(random_vector(rng, field, n, 5));
    try {
      return Subspace(field, n, std::move(basis));
    } catch (const std::invalid_argument&) {
    }
  }
}

VectorK random_outside(Rng& rng, const Subspace& x) {
  while (true) {
    VectorK y = random_vector(rng, x.field(), x.ambient(), 5);
    if (!x.contains(y)) return y;
  }
}

std::size_t dim_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(uniform(rng, static_cast<long>(lo), static_cast<long>(hi)));
}

std::string show(const Field& f) { return f.name() + " "; }

// -- checks -----------------------------------------------------------------

void product_formula(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const Scalar x = random_nonzero(rng, field, 60, 30);
  const HeightValue h = product_formula_check(x);
  // Expected halves: |N(x)|^(-1/d) over the primes, |N(x)|^(1/d) at infinity.
  const mpq_class norm = field.is_rational() ? mpq_class(abs(x.a())) : mpq_class(abs(x.norm()));
  const mpq_class d(field.degree());
  PrimePowerProduct finite;
  for (const auto& p : arith::prime_factors(norm.get_num())) finite.multiply(p, -arith::valuation(norm, p) / d);
  for (const auto& p : arith::prime_factors(norm.get_den())) finite.multiply(p, -arith::valuation(norm, p) / d);
  c.same(h, HeightValue(finite, log_abs(norm) / field.degree(), 0), th.arch_tol, show(field) + "x=" + x.str());
}

void homogeneity(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const Scalar lambda = random_nonzero(rng, field);
  const HeightValue f = product_formula_check(lambda);
  const std::string tag = show(field) + "lambda=" + lambda.str();

  const VectorK x = random_vector(rng, field, dim_in(rng, 2, 4));
  c.same(height_vector(lambda * x), height_vector(x) * f, th.arch_tol, tag + " x=" + format_vector(x));

  const MatrixK t = random_nonzero_matrix(rng, field, dim_in(rng, 2, 3));
  const std::string ts = tag + " T=" + format_matrix(t);
  c.same(height_matrix(lambda * t), height_matrix(t) * f, th.arch_tol, ts + " H");
  const HeightValue hs = height_spectral(t);
  const HeightValue hs_scaled = height_spectral(lambda * t);
  if (char_poly(t).is_power_of_x()) {
    c.same(hs_scaled, hs, th.arch_tol, ts + " Hs");
  } else {
    c.same(hs_scaled, hs * f, th.arch_tol, ts + " Hs");
  }
}

void heights_at_least_one(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const MatrixK t = random_nonzero_matrix(rng, field, dim_in(rng, 2, 3));
  const std::string ts = show(field) + "T=" + format_matrix(t);
  c.at_most(0.0, height_matrix(t).log(), th.arch_tol, ts + " H >= 1");
  c.at_most(0.0, height_spectral(t).log(), th.arch_tol, ts + " Hs >= 1");
}

void submultiplicative(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 3);
  const MatrixK t = random_matrix(rng, field, n);
  const MatrixK u = random_matrix(rng, field, n);
  c.at_most(height_matrix(t * u).log(), height_matrix(t).log() + height_matrix(u).log(), th.arch_tol,
            show(field) + "T=" + format_matrix(t) + " T'=" + format_matrix(u));
}

void operator_height_bounds(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 3);
  const MatrixK t = random_of_rank(rng, field, n, dim_in(rng, 1, n));
  OperatorHeightOptions opts;
  opts.search_bound = th.operator_search_bound;
  const OperatorHeightResult op = height_operator(t, opts);
  const double h = height_matrix(t).log();
  const std::string ts = show(field) + "T=" + format_matrix(t);
  if (op.value) c.at_most(op.value->log(), h, th.arch_tol, ts + " Hop");
  if (op.empirical_lower) c.at_most(op.empirical_lower->log(), h, th.arch_tol, ts + " empirical Hop");
}

void spectral_powers(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const MatrixK t = random_nonzero_matrix(rng, field, dim_in(rng, 2, 3));
  const long k = uniform(rng, 2, static_cast<long>(th.max_power));
  c.input = show(field) + "T=" + format_matrix(t) + " k=" + std::to_string(k);
  MatrixK tk = t;
  for (long i = 1; i < k; ++i) tk = tk * t;
  c.same(height_spectral(tk), height_spectral(t).pow(k), th.arch_tol, c.input);
}

void spectral_conjugation(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 3);
  const MatrixK t = random_matrix(rng, field, n);
  const MatrixK s = random_invertible(rng, field, n, 4);
  c.input = show(field) + "T=" + format_matrix(t) + " S=" + format_matrix(s);
  c.same(height_spectral(s * t * inverse(s)), height_spectral(t), th.arch_tol, c.input);
}

void spectral_triangular(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 4);
  const MatrixK r = random_matrix(rng, field, n);
  std::vector<Scalar> e(n * n, Scalar(0)), d;
  for (std::size_t i = 0; i < n; ++i) {
    d.push_back(r(i, i));
    for (std::size_t j = i; j < n; ++j) e[i * n + j] = r(i, j);
  }
  const MatrixK t(field, n, std::move(e));
  c.same(height_spectral(t), height_spectral(MatrixK::diagonal(field, d)), th.arch_tol,
         show(field) + "T=" + format_matrix(t));
}

void spectral_commuting(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 4);
  std::vector<Scalar> a, b;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(random_scalar(rng, field, 9, 4));
    b.push_back(random_scalar(rng, field, 9, 4));
  }
  const MatrixK t = MatrixK::diagonal(field, a), u = MatrixK::diagonal(field, b);
  c.at_most(height_spectral(t * u).log(), height_spectral(t).log() + height_spectral(u).log(), th.arch_tol,
            show(field) + "T=" + format_matrix(t) + " T'=" + format_matrix(u));
}

void invertible_operator_height(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const MatrixK t = random_invertible(rng, field, dim_in(rng, 2, 4));
  const OperatorHeightResult op = height_operator(t);
  const std::string ts = show(field) + "T=" + format_matrix(t);
  if (op.kind != OperatorHeightResult::Kind::exact || !op.value) {
    c.fail(ts + ": not exact");
    return;
  }
  c.same(*op.value, height_matrix(t), th.arch_tol, ts);
}

// H^op(T) H(ker T) = H(T) for T = c w^t over Q; the representatives differ by
// the contents of c and w.
void rank1_operator_height(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field;
  const std::size_t n = dim_in(rng, 2, 4);
  const VectorK u = random_vector(rng, field, n), w = random_vector(rng, field, n);
  const Scalar lambda = random_nonzero(rng, field);
  std::vector<Scalar> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.push_back(lambda * u[i] * w[j]);
  const MatrixK t(field, n, std::move(e));
  const std::string ts = "T=" + format_matrix(t);

  std::size_t j0 = 0;
  while (t.column(j0).is_zero()) ++j0;
  const VectorK col = t.column(j0);
  std::size_t i0 = 0;
  while (col[i0].is_zero()) ++i0;
  std::vector<Scalar> row;
  for (std::size_t j = 0; j < n; ++j) row.push_back(t(i0, j) / col[i0]);
  const mpq_class cc = strip_content(col.entries()).second;
  const mpq_class cw = strip_content(row).second;

  const OperatorHeightResult op = height_operator(t);
  if (op.rank != 1 || !op.value) {
    c.fail(ts + ": rank-1 branch not taken");
    return;
  }
  const auto ker = kernel(t);
  c.same(height_matrix(t), *op.value * height_subspace(*ker) * product_formula_check(Scalar(cc * cw)),
         th.arch_tol, ts);
}

void span_distance_identity(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 4);
  const Subspace x = random_subspace(rng, field, n, dim_in(rng, 1, n - 1));
  const VectorK y = random_outside(rng, x);
  std::vector<VectorK> rows = x.basis();
  const mpq_class cp = strip_content(maximal_minors(rows)).second;
  rows.push_back(y);
  const mpq_class cw = strip_content(maximal_minors(rows)).second;
  std::string tag = show(field) + "X=[";
  for (std::size_t i = 0; i < x.dim(); ++i) tag += (i ? "," : "") + format_vector(x.basis()[i]);
  tag += "] y=" + format_vector(y);
  c.same(distance(y, x) * height_subspace(x) * product_formula_check(Scalar(cp)),
         height_subspace(x.extended_by(y)) * product_formula_check(Scalar(cw)), th.arch_tol, tag);
}

void hyperplane_distance(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field field = random_field(rng);
  const std::size_t n = dim_in(rng, 2, 4);
  const Subspace x = random_subspace(rng, field, n, n - 1);
  const mpq_class cp = strip_content(maximal_minors(x.basis())).second;
  const HeightValue hx = height_subspace(x);
  std::string tag = show(field) + "X=[";
  for (std::size_t i = 0; i < x.dim(); ++i) tag += (i ? "," : "") + format_vector(x.basis()[i]);
  tag += "]";
  std::optional<double> first;
  for (int s = 0; s < 3; ++s) {
    const VectorK y = random_outside(rng, x);
    std::vector<VectorK> rows = x.basis();
    rows.push_back(y);
    const Scalar det = maximal_minors(rows).front();
    const HeightValue d = distance(y, x);
    const std::string ys = tag + " y=" + format_vector(y);
    // d_X(y) H(X) is the product-formula value of det / content, i.e. 1.
    c.same(d * hx, product_formula_check(det / Scalar(cp)), th.arch_tol, ys);
    c.at_most(std::fabs(d.log() + hx.log()), 0.0, th.arch_tol, ys + " d H(X) = 1");
    if (first) c.at_most(std::fabs(d.log() - *first), 0.0, th.arch_tol, ys + " constancy");
    first = d.log();
  }
}

void field_extension(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field q, qi = Field::quadratic(-1);
  const std::size_t n = dim_in(rng, 2, 3);
  const VectorK x = random_vector(rng, q, n);
  const MatrixK t = random_nonzero_matrix(rng, q, n);
  std::vector<Scalar> xe, te;
  for (const auto& s : x.entries()) xe.push_back(in_field(s.a(), qi));
  for (const auto& s : t.entries()) te.push_back(in_field(s.a(), qi));
  const VectorK xi(qi, xe);
  const MatrixK ti(qi, n, te);
  const double tol = th.extension_tol;
  c.same(height_vector(x), height_vector(xi), tol, "x=" + format_vector(x));
  c.same(height_matrix(t), height_matrix(ti), tol, "T=" + format_matrix(t) + " H");
  c.same(height_spectral(t), height_spectral(ti), tol, "T=" + format_matrix(t) + " Hs");
  const OperatorHeightResult a = height_operator(t), b = height_operator(ti);
  if (a.value && b.value) c.same(*a.value, *b.value, tol, "T=" + format_matrix(t) + " Hop");
}

void newton_oracle(Rng& rng, const InvariantThresholds&, Case& c) {
  static const std::vector<long> primes = arith::primes_up_to(97);
  const mpz_class p = primes[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(primes.size()) - 1))];
  const Field q;
  const Place v = places_above(q, p).front();
  const long deg = uniform(rng, 1, 5);
  Polynomial f(q, {Scalar(1)});
  std::optional<mpq_class> best;
  std::string roots;
  for (long i = 0; i < deg; ++i) {
    mpq_class a = 0;
    if (!coin(rng, 0.1)) {
      // Numerators and denominators rich in small primes.
      const long num = uniform(rng, -50, 50) * (coin(rng, 0.5) ? p.get_si() : 1);
      a = mpq_class(num, uniform(rng, 1, 4) * (coin(rng, 0.3) ? p.get_si() : 1));
      a.canonicalize();
    }
    roots += (i ? "," : "") + a.get_str();
    f = f * Polynomial(q, {Scalar(-a), Scalar(1)});
    if (a != 0) {
      const mpq_class e = -arith::valuation(a, p);
      if (!best || e > *best) best = e;
    }
  }
  const LocalMagnitude rho = spectral_radius_finite(CharPoly(f), v);
  const std::string tag = "p=" + p.get_str() + " roots=" + roots;
  if (!best) {
    if (!rho.is_zero()) c.fail(tag + ": expected 0");
  } else if (rho.is_zero() || rho.exponent() != *best) {
    c.fail(tag + ": got " + rho.str() + ", expected " + p.get_str() + "^" + best->get_str());
  }
}

void gelfand_global(Rng& rng, const InvariantThresholds& th, Case& c) {
  const Field q;
  const std::size_t n = dim_in(rng, 2, 3);
  const bool diagonal = coin(rng, 0.2);
  MatrixK t = MatrixK::zero(q, n);
  while (t.is_zero()) {
    std::vector<Scalar> e(n * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!diagonal || i == j) e[i * n + j] = Scalar(uniform(rng, -9, 9));
    t = MatrixK(q, n, std::move(e));
  }
  const ConvergenceTrace trace = gelfand_sequence(t, th.gelfand_jmax);
  const std::string ts = "T=" + format_matrix(t);
  if (trace.truncated || trace.entries.empty()) {
    c.fail(ts + ": trace truncated");
    return;
  }
  c.deviation = trace.entries.back().residual;
  c.at_most(trace.entries.back().residual, th.gelfand_residual, 0.0, ts + " residual");
  if (diagonal) {
    for (const auto& e : trace.entries) {
      if (!e.finite_matches) c.fail(ts + ": finite half differs at k=" + std::to_string(e.k));
    }
  }
}

void local_degrees(Rng& rng, const InvariantThresholds&, Case& c) {
  const Field field = random_field(rng);
  static const std::vector<long> primes = arith::primes_up_to(200);
  const mpz_class p = primes[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(primes.size()) - 1))];
  int total = 0;
  for (const auto& v : places_above(field, p)) total += v.local_degree();
  if (total != field.degree()) c.fail(show(field) + "p=" + p.get_str());
}

using CheckFn = void (*)(Rng&, const InvariantThresholds&, Case&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"product_formula", product_formula},
      {"local_degrees", local_degrees},
      {"homogeneity", homogeneity},
      {"heights_at_least_one", heights_at_least_one},
      {"submultiplicative", submultiplicative},
      {"operator_height_bounds", operator_height_bounds},
      {"spectral_powers", spectral_powers},
      {"spectral_conjugation", spectral_conjugation},
      {"spectral_triangular", spectral_triangular},
      {"spectral_commuting", spectral_commuting},
      {"invertible_operator_height", invertible_operator_height},
      {"rank1_operator_height", rank1_operator_height},
      {"span_distance_identity", span_distance_identity},
      {"hyperplane_distance", hyperplane_distance},
      {"field_extension", field_extension},
      {"newton_oracle", newton_oracle},
      {"gelfand_global", gelfand_global},
  };
  return r;
}

CheckOutcome run_check(const std::string& name, std::size_t index, CheckFn fn, const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  auto run = [&](std::size_t lo, std::size_t hi) {
    CheckOutcome out;
    for (std::size_t i = lo; i < hi; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(i)};
      Rng rng(seq);
      Case c;
      try {
        fn(rng, cfg.thresholds, c);
      } catch (const std::exception& e) {
        c.fail(c.input + (c.input.empty() ? "" : " ") + "case " + std::to_string(i) + " threw: " + e.what());
      }
      ++out.cases;
      out.max_deviation = std::max(out.max_deviation, c.deviation);
      if (c.failed) {
        ++out.failures;
        if (!out.witness || c.witness.size() < out.witness->size() ||
            (c.witness.size() == out.witness->size() && c.witness < *out.witness)) {
          out.witness = c.witness;
        }
      }
    }
    return out;
  };
  const std::size_t w = std::max(1u, cfg.workers);
  const std::size_t chunk = std::max<std::size_t>(1, (cfg.samples + w - 1) / w);
  std::vector<std::future<CheckOutcome>> jobs;
  for (std::size_t lo = 0; lo < cfg.samples; lo += chunk) {
    jobs.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred, run, lo,
                              std::min(cfg.samples, lo + chunk)));
  }
  CheckOutcome total;
  total.name = name;
  for (auto& j : jobs) {
    CheckOutcome o = j.get();
    total.cases += o.cases;
    total.failures += o.failures;
    total.max_deviation = std::max(total.max_deviation, o.max_deviation);
    if (o.witness && (!total.witness || o.witness->size() < total.witness->size() ||
                      (o.witness->size() == total.witness->size() && *o.witness < *total.witness))) {
      total.witness = o.witness;
    }
  }
  total.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return total;
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.failures == 0; });
}

std::vector<std::string> invariant_check_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteReport run_invariant_suite(const SuiteConfig& config) {
  const auto& reg = registry();
  for (const auto& want : config.checks) {
    if (std::none_of(reg.begin(), reg.end(), [&](const auto& e) { return e.first == want; })) {
      throw std::invalid_argument("unknown check '" + want + "'");
    }
  }
  SuiteReport report;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& [name, fn] = reg[i];
    if (!config.checks.empty() && std::find(config.checks.begin(), config.checks.end(), name) == config.checks.end()) {
      continue;
    }
    report.checks.push_back(run_check(name, i, fn, config));
  }
  return report;
}

}  // namespace heightlab
