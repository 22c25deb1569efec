#pragma once

// Global heights assembled from local data. Each height is the product over
// places of a local quantity raised to d_v, evaluated on the representative
// that was passed in: the finite part and the archimedean part are the two
// halves of that product. Their product is projectively invariant; the split
// itself moves by the product-formula factor of a rescaling (see
// product_formula_check).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "heightlab/height_value.hpp"
#include "heightlab/linalg.hpp"
#include "heightlab/local.hpp"
#include "heightlab/numberfield.hpp"

namespace heightlab {

/// Finitely many places where the standard norm is replaced by
/// N_v(x) = ||A_v x||_v for an invertible A_v.
class TwistSpec {
 public:
  TwistSpec() = default;
  void add(const Place& v, MatrixK a);
  bool empty() const noexcept { return twists_.empty(); }
  const std::map<Place, MatrixK>& twists() const noexcept { return twists_; }
  const MatrixK* find(const Place& v) const;

  /// N_v(x) = ||A x||_v at every place. Stored only where A is not in
  /// GL_n(O_v), i.e. at the archimedean places and above the primes of the
  /// entries of A and of det A.
  static TwistSpec global(const MatrixK& a);

 private:
  std::map<Place, MatrixK> twists_;
};

struct PlaceContribution {
  Place place;
  LocalMagnitude magnitude;
};

/// prod m_v^{d_v}; every magnitude must be nonzero.
HeightValue assemble(const std::vector<PlaceContribution>& parts);

/// prod_v |x|_v^{d_v} split into its finite and archimedean halves; the
/// whole is 1. Multiplying a representative by x multiplies each half of its
/// height by the corresponding half of this value.
HeightValue product_formula_check(const Scalar& x);

std::vector<PlaceContribution> vector_height_places(const VectorK& x, const TwistSpec& twist = {},
                                                    double tol = kDefaultTolerance);
HeightValue height_vector(const VectorK& x, const TwistSpec& twist = {}, double tol = kDefaultTolerance);

std::vector<PlaceContribution> matrix_height_places(const MatrixK& t, double tol = kDefaultTolerance);
/// Same, over the finite places above the given primes only; the caller
/// guarantees that every other finite place contributes 1.
std::vector<PlaceContribution> matrix_height_places(const MatrixK& t, const std::vector<mpz_class>& primes,
                                                    double tol = kDefaultTolerance);
HeightValue height_matrix(const MatrixK& t, double tol = kDefaultTolerance);

/// Empty for nilpotent T.
std::vector<PlaceContribution> spectral_height_places(const MatrixK& t, double tol = kDefaultTolerance);
HeightValue height_spectral(const MatrixK& t, double tol = kDefaultTolerance);

/// H of the primitive Pluecker vector; H(K^n) = 1.
HeightValue height_subspace(const Subspace& x);

/// d_X(y) = prod ||y||_{X_v}^{d_v}. Throws DegenerateInputError for y in X.
HeightValue distance(const VectorK& y, const Subspace& x);
/// H(<X, y>) / H(X); equals distance(y, X) as a number.
HeightValue distance_via_span(const VectorK& y, const Subspace& x);

struct ApproximationRatio {
  double ratio = 0.0;
  std::optional<VectorK> best;  ///< The x in X attaining the minimum.
  std::size_t tried = 0;
};

/// min H(y - x) / (d_X(y) H(X)) over x = sum c_i b_i with integer
/// |c_i| <= coeff_bound; an upper estimate of the infimum over all of X.
ApproximationRatio approximation_ratio(const VectorK& y, const Subspace& x, long coeff_bound);

struct OperatorHeightOptions {
  double search_bound = 3.0;  ///< Height bound for the empirical lower search.
  double c_hat = 1e3;         ///< Stand-in for C(K, n); not rigorous.
  double tol = kDefaultTolerance;
  unsigned workers = 1;
};

struct OperatorHeightResult {
  enum class Kind { exact, bounded };
  Kind kind = Kind::exact;
  std::size_t rank = 0;
  /// Exact case: H^op(T). Bounded case: unset.
  std::optional<HeightValue> value;
  /// Bounded case: H(T) / (c_hat H(ker T)), H(T). Equal to value when exact.
  HeightValue lower;
  HeightValue upper;
  /// max H(Ty)/H(y) over the searched rational points (bounded case only).
  std::optional<HeightValue> empirical_lower;
  std::optional<VectorK> witness;
  bool lower_is_rigorous = true;
};

/// Invertible: H(T). Rank 1: height of the image line. Zero: 1. Other
/// ranks: bounds only.
OperatorHeightResult height_operator(const MatrixK& t, const OperatorHeightOptions& options = {});

struct SupResult {
  HeightValue value;
  std::optional<VectorK> witness;
  std::size_t points = 0;
};

/// max H(Ty) / d_X(y) over rational projective points y of height <= bound
/// outside X = ker T (d_X = H when T is injective).
SupResult kernel_quotient_sup(const MatrixK& t, double bound, unsigned workers = 1);

/// Heights over the non-adelic family N_p(x1, x2) = max(|x1|_p, |p x2|_p),
/// N_inf = max(|x1|, |x2|); x1 must be nonzero so that the support is finite.
HeightValue pseudo_height(const mpq_class& x1, const mpq_class& x2);

struct PseudoHeightDemo {
  mpz_class q;
  HeightValue pseudo;    ///< H_F(q, 1)
  HeightValue standard;  ///< H_E(q, 1)
  double ratio;          ///< H_E / H_F
};

PseudoHeightDemo pseudo_height_demo(const mpz_class& q);

struct ComparisonInterval {
  double c_min = 1.0;
  double c_max = 1.0;
  std::size_t samples = 0;
};

/// Sampled range of H_twisted(x) / H(x) over random primitive integer
/// vectors with coordinates in [-coord_bound, coord_bound].
ComparisonInterval comparison_constant(const TwistSpec& twist, const Field& field, std::size_t n,
                                       std::size_t samples, std::uint64_t seed, long coord_bound = 9);

}  // namespace heightlab
