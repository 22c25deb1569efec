#pragma once

// Power sequences H(T^k)^(1/k) and ||T^k||_v^(1/k) at k = 2^j, tracked
// against H_s(T) and rho_v(T). Powers come from content-stripped repeated
// squaring, so each step costs one product of moderately sized matrices.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/linalg.hpp"

namespace heightlab {

struct TraceEntry {
  unsigned long k = 1;
  /// H(T^k)^(1/k) (global) or ||T^k||_v^(1/k) (local), split in halves.
  PrimePowerProduct finite;
  double log_arch = 0.0;
  double log_value = 0.0;  ///< -inf for a local zero.
  double residual = 0.0;
  /// The finite half equals the target's finite half exactly.
  bool finite_matches = false;
  /// Global: T is invertible, so the value is exactly H^op(T^k)^(1/k).
  /// Local: the value is exact (finite place).
  bool exact_flag = false;
  /// log H^op(T^k)^(1/k) when it has a closed form (rank of T^k in {0, 1, n}).
  std::optional<double> op_log;
  /// (log H(T^k) - log(c_hat H(ker T^n))) / k for singular T.
  std::optional<double> op_lower_log;
  std::vector<PlaceContribution> places;
};

struct ConvergenceTrace {
  PrimePowerProduct target_finite;
  double target_log_arch = 0.0;
  double target_log = 0.0;
  std::vector<TraceEntry> entries;
  bool truncated = false;
  std::string truncation_reason;
};

struct GelfandOptions {
  std::size_t bit_budget = kDefaultBitBudget;
  double tol = kDefaultTolerance;
  double c_hat = 1e3;
};

/// k = 1, 2, 4, ..., 2^jmax. Stops early (truncated = true) when the power
/// exceeds the bit budget.
ConvergenceTrace gelfand_sequence(const MatrixK& t, unsigned jmax, const GelfandOptions& options = {});

ConvergenceTrace local_gelfand_sequence(const MatrixK& t, const Place& v, unsigned jmax,
                                        const GelfandOptions& options = {});

/// Columns k, log_height_over_k, target, residual, exact_flag.
void write_csv(std::ostream& os, const ConvergenceTrace& trace);

}  // namespace heightlab
