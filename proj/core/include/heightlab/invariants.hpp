#pragma once

// Seeded randomized checks of the identities and inequalities that heights
// satisfy. Each check draws its cases from an RNG seeded by (seed, check,
// case index), so results do not depend on the worker count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heightlab {

struct InvariantThresholds {
  double arch_tol = 1e-9;        ///< Archimedean halves, in log units.
  double extension_tol = 1e-12;  ///< Q versus Q(i).
  double gelfand_residual = 0.05;
  unsigned gelfand_jmax = 12;
  unsigned max_power = 8;
  double operator_search_bound = 2.0;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 100;
  unsigned workers = 1;
  InvariantThresholds thresholds;
  /// Names of the checks to run; empty runs all of them.
  std::vector<std::string> checks;
};

struct CheckOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Shortest failing input, if any.
  std::optional<std::string> witness;
  /// Largest archimedean deviation seen (log units).
  double max_deviation = 0.0;
  double seconds = 0.0;
};

struct SuiteReport {
  std::vector<CheckOutcome> checks;
  bool ok() const;
};

/// All check names, in run order.
std::vector<std::string> invariant_check_names();

/// Throws std::invalid_argument for an unknown check name.
SuiteReport run_invariant_suite(const SuiteConfig& config);

}  // namespace heightlab
