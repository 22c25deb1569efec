#include "heightlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

// (|c|_v ||S||_v)^(1/k) from the stripped power S * c = T^k.
LocalMagnitude root_of_power(const StrippedPower& s, const Place& v, unsigned long k, double tol) {
  const LocalMagnitude norm = operator_norm(s.matrix, v, tol);
  if (norm.is_zero()) return norm;
  const LocalMagnitude c = abs_value(Scalar(s.scale), v);
  const mpq_class kq(static_cast<long>(k));
  if (norm.is_exact()) return LocalMagnitude::exact(v.prime(), (norm.exponent() + c.exponent()) / kq);
  const double kd = static_cast<double>(k);
  return LocalMagnitude::real((norm.log() + c.log()) / kd, (norm.rel_err() + c.rel_err()) / kd);
}

double residual(double value, double target) {
  if (std::isinf(value) && std::isinf(target) && value < 0 && target < 0) return 0.0;
  return std::fabs(value - target);
}

template <typename Step>
void run_powers(const MatrixK& t, unsigned jmax, const GelfandOptions& options, ConvergenceTrace& trace, Step step) {
  try {
    StrippedPower power = power_stripped(t, 1, options.bit_budget);
    for (unsigned j = 0; j <= jmax; ++j) {
      step(power, 1UL << j);
      if (j < jmax) power = square_stripped(power, options.bit_budget);
    }
  } catch (const ResourceError& e) {
    trace.truncated = true;
    trace.truncation_reason = e.what();
  }
}

}  // namespace

ConvergenceTrace gelfand_sequence(const MatrixK& t, unsigned jmax, const GelfandOptions& options) {
  if (t.is_zero()) throw DegenerateInputError("the power sequence needs a nonzero matrix");
  if (jmax >= 63) throw std::invalid_argument("jmax too large");
  const std::size_t n = t.dim();
  ConvergenceTrace trace;
  const HeightValue target = height_spectral(t, options.tol);
  trace.target_finite = target.finite();
  trace.target_log_arch = target.log_arch();
  trace.target_log = target.log();

  // Every place where some ||T^k||_v differs from 1 lies above one of these.
  const CharPoly f = char_poly(t);
  std::vector<mpz_class> primes = candidate_primes(t.entries());
  for (auto& p : spectral_candidate_primes(f)) primes.push_back(std::move(p));
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> places = finite_places(t.field(), primes);
  for (auto& v : archimedean_places(t.field())) places.push_back(std::move(v));

  const bool invertible = !determinant(t).is_zero();
  std::optional<double> log_kernel_bound;
  if (!invertible) {
    const auto stable = stable_kernel(t);
    log_kernel_bound = std::log(options.c_hat) + height_subspace(*stable).log();
  }

  run_powers(t, jmax, options, trace, [&](const StrippedPower& power, unsigned long k) {
    TraceEntry e;
    e.k = k;
    e.exact_flag = invertible;
    if (!power.matrix.is_zero()) {
      for (const auto& v : places) e.places.push_back({v, root_of_power(power, v, k, options.tol)});
    }
    const HeightValue h = assemble(e.places);
    e.finite = h.finite();
    e.log_arch = h.log_arch();
    e.log_value = h.log();
    e.residual = residual(e.log_value, trace.target_log);
    e.finite_matches = e.finite == trace.target_finite;

    const double kd = static_cast<double>(k);
    const std::size_t r = power.matrix.is_zero() ? 0 : rank(power.matrix);
    if (r == 0) {
      e.op_log = 0.0;
    } else if (r == n) {
      e.op_log = e.log_value;
    } else if (r == 1) {
      for (std::size_t j = 0; j < n; ++j) {
        const VectorK c = power.matrix.column(j);
        if (c.is_zero()) continue;
        e.op_log = height_vector(primitive(c)).log() / kd;
        break;
      }
    }
    if (log_kernel_bound) e.op_lower_log = e.log_value - *log_kernel_bound / kd;
    trace.entries.push_back(std::move(e));
  });
  return trace;
}

ConvergenceTrace local_gelfand_sequence(const MatrixK& t, const Place& v, unsigned jmax,
                                        const GelfandOptions& options) {
  if (t.is_zero()) throw DegenerateInputError("the power sequence needs a nonzero matrix");
  if (jmax >= 63) throw std::invalid_argument("jmax too large");
  if (!(v.field() == t.field())) throw std::invalid_argument("place and matrix over different fields");
  ConvergenceTrace trace;
  const LocalMagnitude rho = spectral_radius(t, v, options.tol);
  if (rho.is_exact() && !rho.is_zero()) trace.target_finite.multiply(v.prime(), rho.exponent());
  if (!rho.is_exact()) trace.target_log_arch = rho.log();
  trace.target_log = rho.log();

  run_powers(t, jmax, options, trace, [&](const StrippedPower& power, unsigned long k) {
    TraceEntry e;
    e.k = k;
    const LocalMagnitude m = root_of_power(power, v, k, options.tol);
    e.exact_flag = v.is_finite();
    if (m.is_exact() && !m.is_zero()) e.finite.multiply(v.prime(), m.exponent());
    if (!m.is_exact() && !m.is_zero()) e.log_arch = m.log();
    e.log_value = m.log();
    e.residual = residual(e.log_value, trace.target_log);
    e.finite_matches = v.is_finite() && m.is_zero() == rho.is_zero() && e.finite == trace.target_finite;
    e.places.push_back({v, m});
    trace.entries.push_back(std::move(e));
  });
  return trace;
}

void write_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << "k,log_height_over_k,target,residual,exact_flag\n";
  char buf[160];
  for (const auto& e : trace.entries) {
    std::snprintf(buf, sizeof buf, "%lu,%.17g,%.17g,%.17g,%d\n", e.k, e.log_value, trace.target_log, e.residual,
                  e.exact_flag ? 1 : 0);
    os << buf;
  }
}

}  // namespace heightlab
