#pragma once

// The base field K (Q or a quadratic field Q(sqrt m)), its elements, its
// places and the normalised absolute values |.|_v with |p|_v = p^{-1}.

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace heightlab {

class Field {
 public:
  enum class Kind { rational, quadratic };

  /// Q.
  Field() = default;

  static Field rational() { return Field(); }
  /// Q(sqrt m); m must be squarefree and different from 0 and 1.
  static Field quadratic(long m);

  Kind kind() const noexcept { return m_ == 0 ? Kind::rational : Kind::quadratic; }
  bool is_rational() const noexcept { return m_ == 0; }
  /// Radicand; 0 for Q.
  long m() const noexcept { return m_; }
  int degree() const noexcept { return m_ == 0 ? 1 : 2; }
  /// Field discriminant (1 for Q).
  long discriminant() const noexcept;
  bool is_real() const noexcept { return m_ >= 0; }

  /// "Q", "Q(i)", "Q(sqrt2)", "Q(sqrt-5)".
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(long m) : m_(m) {}
  long m_ = 0;
};

/// An element a + b*sqrt(m) of K with a, b rational in lowest terms.
/// Scalars with b = 0 mix freely with any field; two irrational scalars must
/// share the same radicand.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpz_class& v) : a_(v) {}  // NOLINT
  Scalar(const mpq_class& v) : a_(v) {}  // NOLINT
  Scalar(const mpq_class& a, const mpq_class& b, long m);

  const mpq_class& a() const noexcept { return a_; }
  const mpq_class& b() const noexcept { return b_; }
  long radicand() const noexcept { return m_; }

  bool is_zero() const noexcept { return a_ == 0 && b_ == 0; }
  bool is_rational() const noexcept { return b_ == 0; }

  /// Relative norm a^2 - m b^2.
  mpq_class norm() const { return a_ * a_ - mpq_class(m_) * b_ * b_; }
  /// Galois conjugate a - b sqrt(m).
  Scalar conjugate() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// "a/b" or "a/b+c/d*r" (r = sqrt m).
  std::string str() const;

 private:
  long merged_radicand(const Scalar& o) const;

  mpq_class a_;
  mpq_class b_;
  long m_ = 0;
};

/// Embeds a rational in the field (useful for promoting Q-data into Q(sqrt m)).
Scalar in_field(const mpq_class& v, const Field& field);

/// One equivalence class of absolute values of K.
class Place {
 public:
  enum class Kind { archimedean, finite };
  /// real: sqrt m -> +sqrt m; real_conjugate: sqrt m -> -sqrt m.
  enum class Embedding { real, real_conjugate, complex };

  static Place archimedean(const Field& field, Embedding embedding);
  /// branch selects sqrt m -> +r or -r at split primes; 0 otherwise.
  static Place finite(const Field& field, const mpz_class& p, int e, int f, int branch);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_archimedean() const noexcept { return kind_ == Kind::archimedean; }
  const Field& field() const noexcept { return field_; }
  Embedding embedding() const noexcept { return embedding_; }
  const mpz_class& prime() const noexcept { return prime_; }
  int ramification() const noexcept { return e_; }
  int residue_degree() const noexcept { return f_; }
  int branch() const noexcept { return branch_; }
  bool is_split() const noexcept { return is_finite() && field_.degree() == 2 && e_ * f_ == 1; }

  /// n_v.
  int local_degree() const noexcept;
  /// d_v = n_v / [K:Q].
  mpq_class weight() const;

  /// "inf", "inf'", "inf(C)", "p", "p:0", "p:1".
  std::string label() const;

  friend bool operator==(const Place& x, const Place& y);
  friend bool operator<(const Place& x, const Place& y);

 private:
  Place() = default;
  Kind kind_ = Kind::archimedean;
  Field field_;
  Embedding embedding_ = Embedding::real;
  mpz_class prime_ = 0;
  int e_ = 1;
  int f_ = 1;
  int branch_ = 0;
};

/// |x|_v. Finite places: exact p^q (or exact zero). Archimedean places: a
/// float, kept in log form so that huge magnitudes stay representable.
class LocalMagnitude {
 public:
  static LocalMagnitude zero(bool exact);
  static LocalMagnitude exact(const mpz_class& p, const mpq_class& exponent);
  static LocalMagnitude real(double log_value, double rel_err);

  bool is_zero() const noexcept { return zero_; }
  bool is_exact() const noexcept { return exact_; }
  /// Base prime of an exact magnitude.
  const mpz_class& prime() const noexcept { return prime_; }
  /// q in p^q for exact magnitudes.
  const mpq_class& exponent() const noexcept { return exponent_; }
  /// Natural log; -inf for zero.
  double log() const;
  double value() const;
  double rel_err() const noexcept { return rel_err_; }

  std::string str() const;

 private:
  bool zero_ = false;
  bool exact_ = false;
  mpz_class prime_ = 1;
  mpq_class exponent_ = 0;
  double log_ = 0.0;
  double rel_err_ = 0.0;
};

std::vector<Place> places_above(const Field& field, const mpz_class& p);
std::vector<Place> archimedean_places(const Field& field);

/// Valuation w_v(x) normalised by w_v(p) = 1; x nonzero, v finite.
mpq_class valuation(const Scalar& x, const Place& v);

LocalMagnitude abs_value(const Scalar& x, const Place& v);

/// sigma_v(x) * 2^{-shift} in extended precision; cancellation in
/// a + b sqrt m is avoided through the exact norm.
std::complex<long double> embed(const Scalar& x, const Place& v, long shift = 0);

/// Rough log2 size of x (max of the bit lengths of its parts), for scaling.
long bit_size(const Scalar& x);

/// q * 2^{-shift} in extended precision without overflow in the intermediates.
long double scaled_value(const mpq_class& q, long shift);

/// Natural log of |q|, q nonzero, for arbitrarily large q.
double log_abs(const mpq_class& q);

}  // namespace heightlab
