#pragma once

// Bounded-height enumeration over Q. Classes are stored by their canonical
// representative: primitive integer entries, first nonzero entry positive.
// Bounds are compared exactly: B is read as the exact rational value of the
// double and heights are compared through their squares.

#include <optional>
#include <vector>

#include "heightlab/heights.hpp"
#include "heightlab/linalg.hpp"

namespace heightlab {

struct ProjectivePoint {
  std::vector<mpz_class> coords;
  HeightValue height;  ///< Euclidean norm of coords; finite part 1.

  VectorK vector(const Field& field = Field()) const;
};

/// All points of P^{n-1}(Q) with H <= bound, lexicographic on coords.
std::vector<ProjectivePoint> enum_projective_points(std::size_t n, double bound, unsigned workers = 1);

struct EndoClass {
  MatrixK matrix;
  std::size_t rank = 0;
  HeightValue height;  ///< H(T)
  OperatorHeightResult op;
  std::optional<Subspace> kernel;
  std::optional<HeightValue> kernel_height;
  bool certified = true;
};

/// Invertible classes with H(T) = H^op(T) <= bound, found in the box
/// |t_ij| <= floor(bound) with an exact largest-singular-value test.
std::vector<EndoClass> enum_invertible_endos(std::size_t n, double bound, unsigned workers = 1);

/// Rank-1 classes u w^t with H([u]) <= bound and H(ker) = H([w]) <= kernel_cap.
std::vector<EndoClass> enum_rank1_endos(std::size_t n, double bound, double kernel_cap, unsigned workers = 1);

/// T_k = [[1,k],[1,k]] for k = 1..count: H^op = sqrt 2 throughout while the
/// kernel heights sqrt(k^2+1) grow.
struct Rank1DemoRow {
  unsigned long index;
  MatrixK matrix;
  HeightValue op_height;
  HeightValue kernel_height;
};
std::vector<Rank1DemoRow> rank1_unbounded_demo(unsigned long count);

/// Best-effort scan of ranks strictly between 1 and n in the box
/// |t_ij| <= floor(bound). Keeps a class unless its empirical lower bound
/// already exceeds bound. Not complete; every result has certified = false.
std::vector<EndoClass> scan_middle_rank(std::size_t n, double bound, unsigned workers = 1);

/// Exact test sigma_max(T) <= bound for a rational matrix (B^2 I - T^t T is
/// positive semidefinite).
bool largest_singular_value_at_most(const MatrixK& t, const mpq_class& bound_squared);

/// Exact rational value of a double.
mpq_class exact_rational(double x);

}  // namespace heightlab
