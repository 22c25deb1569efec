#pragma once

// Exact linear algebra over K: vectors, square matrices, characteristic
// polynomials, kernels, Pluecker coordinates and content-stripped powers.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "heightlab/numberfield.hpp"

namespace heightlab {

class VectorK {
 public:
  VectorK(Field field, std::vector<Scalar> entries);
  static VectorK zero(const Field& field, std::size_t n);
  static VectorK unit(const Field& field, std::size_t n, std::size_t i);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Scalar>& entries() const noexcept { return entries_; }
  bool is_zero() const;

  VectorK operator-(const VectorK& o) const;
  VectorK operator+(const VectorK& o) const;
  friend VectorK operator*(const Scalar& s, const VectorK& x);

  friend bool operator==(const VectorK& x, const VectorK& y) {
    return x.field_ == y.field_ && x.entries_ == y.entries_;
  }

 private:
  Field field_;
  std::vector<Scalar> entries_;
};

class MatrixK {
 public:
  /// Row-major n x n entries.
  MatrixK(Field field, std::size_t n, std::vector<Scalar> entries);
  static MatrixK zero(const Field& field, std::size_t n);
  static MatrixK identity(const Field& field, std::size_t n);
  static MatrixK diagonal(const Field& field, const std::vector<Scalar>& diag);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<Scalar>& entries() const noexcept { return a_; }
  VectorK column(std::size_t j) const;
  VectorK row(std::size_t i) const;
  bool is_zero() const;

  MatrixK transpose() const;
  /// Transpose with every entry Galois-conjugated; embeds to the adjoint at
  /// a complex place.
  MatrixK conjugate_transpose() const;

  MatrixK operator*(const MatrixK& o) const;
  MatrixK operator+(const MatrixK& o) const;
  MatrixK operator-(const MatrixK& o) const;
  VectorK operator*(const VectorK& x) const;
  friend MatrixK operator*(const Scalar& s, const MatrixK& t);

  friend bool operator==(const MatrixK& x, const MatrixK& y) {
    return x.field_ == y.field_ && x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  Field field_;
  std::size_t n_;
  std::vector<Scalar> a_;
};

/// Polynomial over K with ascending coefficients a_0..a_d (trailing zeros trimmed).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Field field, std::vector<Scalar> coeffs);

  const Field& field() const noexcept { return field_; }
  const std::vector<Scalar>& coefficients() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const Scalar& leading() const { return c_.back(); }
  Scalar operator()(const Scalar& x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Field field_;
  std::vector<Scalar> c_;
};

/// (quotient, remainder); g nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& f, const Polynomial& g);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& f, const Polynomial& g);
/// f / gcd(f, f'), monic.
Polynomial squarefree_part(const Polynomial& f);

/// Monic characteristic polynomial det(xI - T).
class CharPoly {
 public:
  explicit CharPoly(Polynomial poly);
  const Polynomial& polynomial() const noexcept { return poly_; }
  const Field& field() const noexcept { return poly_.field(); }
  int degree() const noexcept { return poly_.degree(); }
  /// a_i for 0 <= i <= degree.
  const Scalar& coefficient(int i) const { return poly_.coefficients()[static_cast<std::size_t>(i)]; }
  /// All non-leading coefficients vanish (T nilpotent).
  bool is_power_of_x() const;
  /// Multiplicity of the root 0.
  int zero_root_multiplicity() const;

 private:
  Polynomial poly_;
};

CharPoly char_poly(const MatrixK& t);

Scalar determinant(const MatrixK& t);
std::size_t rank(const MatrixK& t);
/// Throws std::domain_error when t is singular.
MatrixK inverse(const MatrixK& t);

/// All l x l minors of the l x n matrix with the given rows, column subsets
/// in lexicographic order. No normalisation.
std::vector<Scalar> maximal_minors(const std::vector<VectorK>& rows);

/// A nonzero subspace of K^n given by an exact basis.
class Subspace {
 public:
  /// Throws std::invalid_argument if the rows are dependent or empty.
  Subspace(Field field, std::size_t ambient, std::vector<VectorK> basis);
  static Subspace full(const Field& field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<VectorK>& basis() const noexcept { return basis_; }

  /// Primitive Pluecker vector of length C(n, l) (computed once, shared by copies).
  const VectorK& plucker() const;

  bool contains(const VectorK& y) const;
  /// <X, y>; y must not lie in X.
  Subspace extended_by(const VectorK& y) const;
  /// Same subspace (proportional Pluecker vectors).
  bool same_as(const Subspace& o) const;

 private:
  struct Cache;
  Field field_;
  std::size_t n_;
  std::vector<VectorK> basis_;
  std::shared_ptr<Cache> cache_;
};

/// Pluecker coordinates of X: maximal minors of its basis, made primitive.
VectorK plucker(const Subspace& x);

/// ker T, or nullopt when T is injective.
std::optional<Subspace> kernel(const MatrixK& t);
/// ker T^n (= ker T^k for every k >= n), or nullopt.
std::optional<Subspace> stable_kernel(const MatrixK& t);

/// Divides out the rational content of a list: returns (primitive list, c)
/// with list = c * primitive; c = 0 for an all-zero list. Over Q the
/// primitive list is integral with gcd 1; over Q(sqrt m) the a- and b-parts
/// are jointly coprime integers.
std::pair<std::vector<Scalar>, mpq_class> strip_content(const std::vector<Scalar>& values);
VectorK primitive(const VectorK& x);

struct StrippedPower {
  MatrixK matrix;
  /// Exact accumulated factor: matrix * scale = T^k.
  mpq_class scale;
};

constexpr std::size_t kDefaultBitBudget = 10'000'000;

/// Total bit size of the entries (numerators and denominators of both parts).
std::size_t entry_bits(const MatrixK& t);

/// T^k by repeated squaring with rational content divided out after every
/// product. Throws ResourceError when the stripped entries exceed bit_budget.
StrippedPower power_stripped(const MatrixK& t, unsigned long k,
                             std::size_t bit_budget = kDefaultBitBudget);

/// One squaring step: (S, c) -> strip(S^2), c^2 * content.
StrippedPower square_stripped(const StrippedPower& s, std::size_t bit_budget = kDefaultBitBudget);

}  // namespace heightlab
