#pragma once

// Per-place analysis: local vector and operator norms, spectral radii
// (Newton polygons at finite places, polished complex roots at archimedean
// places) and the seminorm ||y||_{X_v} = inf_{x in X_v} ||y - x||_v.

#include <vector>

#include "heightlab/linalg.hpp"
#include "heightlab/numberfield.hpp"

namespace heightlab {

constexpr double kDefaultTolerance = 1e-9;

/// Lower convex hull of the points (i, w_v(a_i)) of a polynomial.
struct NewtonPolygon {
  struct Point {
    int index;
    mpq_class valuation;
  };
  struct Segment {
    mpq_class slope;
    int multiplicity;  ///< Number of roots of valuation -slope.
  };

  std::vector<Point> points;  ///< Nonzero coefficients from the lowest nonzero one upward.
  std::vector<Point> hull;    ///< Hull vertices, ascending index.
  std::vector<Segment> slopes;  ///< Nondecreasing.
  int zero_roots = 0;

  /// Largest slope; requires at least one segment.
  const mpq_class& max_slope() const { return slopes.back().slope; }
  int total_multiplicity() const;
};

/// Polygon of f at the finite place v; zero roots are split off and counted.
NewtonPolygon newton_polygon(const CharPoly& f, const Place& v);

/// l2 norm of the embedded entries at archimedean v; sup |x_i|_v at finite v.
LocalMagnitude vector_norm(const VectorK& x, const Place& v);

/// sup_{ij} |t_ij|_v.
LocalMagnitude operator_norm_finite(const MatrixK& t, const Place& v);

/// Largest singular value of the embedded matrix, via the exact product T*T
/// and a Hermitian eigen-solve.
LocalMagnitude operator_norm_arch(const MatrixK& t, const Place& v, double tol = kDefaultTolerance);

LocalMagnitude operator_norm(const MatrixK& t, const Place& v, double tol = kDefaultTolerance);

/// p^{max slope} of the Newton polygon of the characteristic polynomial; exact
/// zero for nilpotent input.
LocalMagnitude spectral_radius_finite(const MatrixK& t, const Place& v);
LocalMagnitude spectral_radius_finite(const CharPoly& f, const Place& v);

/// Max modulus of the complex roots of the characteristic polynomial embedded
/// at v. The roots of the squarefree part are located with a companion
/// eigen-solve, Newton-polished in extended precision, then validated against
/// the Cauchy and Fujiwara bounds and against ||T^(2^j)||^(1/2^j).
LocalMagnitude spectral_radius_arch(const MatrixK& t, const Place& v, double tol = kDefaultTolerance);
LocalMagnitude spectral_radius_arch(const CharPoly& f, const Place& v, double tol = kDefaultTolerance);

LocalMagnitude spectral_radius(const MatrixK& t, const Place& v, double tol = kDefaultTolerance);

/// ||y||_{X_v} as the exterior-algebra ratio ||P(X) ^ y||_v / ||P(X)||_v.
/// Throws DegenerateInputError when y lies in X.
LocalMagnitude subspace_seminorm(const VectorK& y, const Subspace& x, const Place& v);

/// Natural log of the archimedean l2 norm of a list of scalars at v; -inf
/// for an all-zero list. Works for entries of any size.
double log_l2_norm(const std::vector<Scalar>& entries, const Place& v);

/// min_i w_v(x_i) over nonzero entries, or nullopt when all vanish.
std::optional<mpq_class> min_valuation(const std::vector<Scalar>& entries, const Place& v);

/// Primes p such that some place above p may see a non-unit sup norm of the
/// given entries: denominators, plus common divisors of the entry norms.
std::vector<mpz_class> candidate_primes(const std::vector<Scalar>& entries);

/// Primes at which rho_v can differ from 1 for this characteristic polynomial.
std::vector<mpz_class> spectral_candidate_primes(const CharPoly& f);

/// All places above the given primes, in order.
std::vector<Place> finite_places(const Field& field, const std::vector<mpz_class>& primes);

}  // namespace heightlab
