#include "heightlab/northcott.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <future>
#include <numeric>
#include <stdexcept>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

constexpr double kMaxBoxSize = 5e8;

long box_radius(double bound, std::size_t dims) {
  const double m = std::floor(bound);
  if (std::pow(2 * m + 1, static_cast<double>(dims)) > kMaxBoxSize) {
    throw ResourceError("enumeration box too large");
  }
  return static_cast<long>(m);
}

bool canonical(const std::vector<long>& x) {
  long g = 0;
  for (long c : x) g = std::gcd(g, c);
  if (g != 1) return false;
  for (long c : x) {
    if (c != 0) return c > 0;
  }
  return false;
}

// Runs job(lead) for every lead in [lo, hi], spread round-robin over workers,
// and concatenates the results.
template <typename T>
std::vector<T> by_leading_entry(long lo, long hi, unsigned workers, const std::function<void(long, std::vector<T>&)>& job) {
  const long w = std::max(1u, workers);
  std::vector<std::future<std::vector<T>>> jobs;
  for (long k = 0; k < w; ++k) {
    jobs.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred, [=, &job] {
      std::vector<T> out;
      for (long lead = lo + k; lead <= hi; lead += w) job(lead, out);
      return out;
    }));
  }
  std::vector<T> all;
  for (auto& j : jobs) {
    auto part = j.get();
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  return all;
}

// Visits every x in [-m, m]^dims with x[0] = lead (dims >= 1).
void box_with_lead(std::size_t dims, long m, long lead, const std::function<void(const std::vector<long>&)>& visit) {
  std::vector<long> x(dims, -m);
  x[0] = lead;
  if (dims == 1) {
    visit(x);
    return;
  }
  while (true) {
    visit(x);
    std::size_t i = dims - 1;
    while (i >= 1 && x[i] == m) x[i--] = -m;
    if (i == 0) return;
    ++x[i];
  }
}

MatrixK integer_matrix(std::size_t n, const std::vector<long>& entries) {
  std::vector<Scalar> e(entries.begin(), entries.end());
  return MatrixK(Field(), n, std::move(e));
}

bool entries_less(const MatrixK& a, const MatrixK& b) {
  return std::lexicographical_compare(a.entries().begin(), a.entries().end(), b.entries().begin(),
                                      b.entries().end(),
                                      [](const Scalar& x, const Scalar& y) { return x.a() < y.a(); });
}

mpq_class det_mpq(std::vector<mpq_class> a, std::size_t n) {
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0) continue;
      const mpq_class f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

EndoClass make_class(MatrixK t, std::size_t r) {
  EndoClass c{std::move(t), r, HeightValue(), {}, std::nullopt, std::nullopt, true};
  c.height = height_matrix(c.matrix);
  c.op = height_operator(c.matrix);
  if (r < c.matrix.dim()) {
    c.kernel = kernel(c.matrix);
    c.kernel_height = height_subspace(*c.kernel);
  }
  return c;
}

}  // namespace

mpq_class exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("bound must be finite");
  return mpq_class(x);
}

VectorK ProjectivePoint::vector(const Field& field) const {
  std::vector<Scalar> e;
  e.reserve(coords.size());
  for (const auto& c : coords) e.push_back(in_field(mpq_class(c), field));
  return VectorK(field, std::move(e));
}

std::vector<ProjectivePoint> enum_projective_points(std::size_t n, double bound, unsigned workers) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  if (bound < 1) return {};
  const mpq_class b2 = exact_rational(bound) * exact_rational(bound);
  const long m = box_radius(bound, n);
  auto points = by_leading_entry<ProjectivePoint>(0, m, workers, [&](long lead, std::vector<ProjectivePoint>& out) {
    box_with_lead(n, m, lead, [&](const std::vector<long>& x) {
      long s = 0;
      for (long c : x) s += c * c;
      if (s == 0 || mpq_class(s) > b2 || !canonical(x)) return;
      ProjectivePoint p;
      p.coords.assign(x.begin(), x.end());
      p.height = HeightValue({}, 0.5 * std::log(static_cast<double>(s)), DBL_EPSILON);
      out.push_back(std::move(p));
    });
  });
  std::sort(points.begin(), points.end(),
            [](const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords < b.coords; });
  return points;
}

bool largest_singular_value_at_most(const MatrixK& t, const mpq_class& bound_squared) {
  const std::size_t n = t.dim();
  std::vector<mpq_class> g(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class s = i == j ? bound_squared : mpq_class(0);
      for (std::size_t k = 0; k < n; ++k) {
        if (!t(k, i).is_rational() || !t(k, j).is_rational()) {
          throw std::invalid_argument("exact singular value test needs rational entries");
        }
        s -= t(k, i).a() * t(k, j).a();
      }
      g[i * n + j] = s;
    }
  }
  // Positive semidefinite iff every principal minor is nonnegative.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    std::vector<mpq_class> sub(idx.size() * idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i * idx.size() + j] = g[idx[i] * n + idx[j]];
    if (det_mpq(std::move(sub), idx.size()) < 0) return false;
  }
  return true;
}

std::vector<EndoClass> enum_invertible_endos(std::size_t n, double bound, unsigned workers) {
  if (n == 0) throw std::invalid_argument("dimension must be positive");
  if (bound < 1) return {};
  const mpq_class b2 = exact_rational(bound) * exact_rational(bound);
  const long m = box_radius(bound, n * n);
  auto classes = by_leading_entry<EndoClass>(0, m, workers, [&](long lead, std::vector<EndoClass>& out) {
    box_with_lead(n * n, m, lead, [&](const std::vector<long>& x) {
      if (!canonical(x)) return;
      // Every column norm is a lower bound for sigma_max.
      for (std::size_t j = 0; j < n; ++j) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += x[i * n + j] * x[i * n + j];
        if (mpq_class(s) > b2) return;
      }
      std::vector<mpq_class> q(x.begin(), x.end());
      if (det_mpq(q, n) == 0) return;
      MatrixK t = integer_matrix(n, x);
      if (!largest_singular_value_at_most(t, b2)) return;
      out.push_back(make_class(std::move(t), n));
    });
  });
  std::sort(classes.begin(), classes.end(),
            [](const EndoClass& a, const EndoClass& b) { return entries_less(a.matrix, b.matrix); });
  return classes;
}

std::vector<EndoClass> enum_rank1_endos(std::size_t n, double bound, double kernel_cap, unsigned workers) {
  const auto us = enum_projective_points(n, bound, workers);
  const auto ws = enum_projective_points(n, kernel_cap, workers);
  std::vector<EndoClass> out;
  for (const auto& u : us) {
    for (const auto& w : ws) {
      std::vector<long> e(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = u.coords[i].get_si() * w.coords[j].get_si();
      out.push_back(make_class(integer_matrix(n, e), 1));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EndoClass& a, const EndoClass& b) { return entries_less(a.matrix, b.matrix); });
  return out;
}

std::vector<Rank1DemoRow> rank1_unbounded_demo(unsigned long count) {
  std::vector<Rank1DemoRow> rows;
  for (unsigned long k = 1; k <= count; ++k) {
    const Scalar sk{mpz_class(k)};
    MatrixK t(Field(), 2, std::vector<Scalar>{Scalar(1), sk, Scalar(1), sk});
    const OperatorHeightResult op = height_operator(t);
    rows.push_back({k, t, *op.value, height_subspace(*kernel(t))});
  }
  return rows;
}

std::vector<EndoClass> scan_middle_rank(std::size_t n, double bound, unsigned workers) {
  if (n < 3 || bound < 1) return {};
  const long m = box_radius(bound, n * n);
  const double log_bound = std::log(bound);
  auto classes = by_leading_entry<EndoClass>(0, m, workers, [&](long lead, std::vector<EndoClass>& out) {
    box_with_lead(n * n, m, lead, [&](const std::vector<long>& x) {
      if (!canonical(x)) return;
      MatrixK t = integer_matrix(n, x);
      const std::size_t r = rank(t);
      if (r <= 1 || r >= n) return;
      EndoClass c{t, r, height_matrix(t), {}, kernel(t), std::nullopt, false};
      OperatorHeightOptions opts;
      opts.search_bound = bound;
      c.op = height_operator(t, opts);
      if (c.op.empirical_lower && c.op.empirical_lower->log() > log_bound + 1e-12) return;
      c.kernel_height = height_subspace(*c.kernel);
      out.push_back(std::move(c));
    });
  });
  std::sort(classes.begin(), classes.end(),
            [](const EndoClass& a, const EndoClass& b) { return entries_less(a.matrix, b.matrix); });
  return classes;
}

}  // namespace heightlab
