#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

namespace heightlab {

/// Exact product of prime powers p1^q1 * p2^q2 * ... with rational exponents.
class PrimePowerProduct {
 public:
  PrimePowerProduct() = default;

  /// Multiplies in p^q.
  void multiply(const mpz_class& p, const mpq_class& q);

  PrimePowerProduct& operator*=(const PrimePowerProduct& o);
  friend PrimePowerProduct operator*(PrimePowerProduct x, const PrimePowerProduct& y) {
    return x *= y;
  }
  PrimePowerProduct inverse() const;
  PrimePowerProduct pow(const mpq_class& e) const;

  bool is_one() const noexcept { return exps_.empty(); }
  const std::map<mpz_class, mpq_class>& exponents() const noexcept { return exps_; }
  mpq_class exponent_of(const mpz_class& p) const;

  double log() const;
  /// The value when every exponent is an integer.
  std::optional<mpq_class> as_rational() const;
  /// "1" or "2^-1 * 3^1/2".
  std::string str() const;

  friend bool operator==(const PrimePowerProduct&, const PrimePowerProduct&) = default;

 private:
  std::map<mpz_class, mpq_class> exps_;
};

/// A global height: exact finite-place factor times an archimedean float
/// factor (held as a log so H(T^k) for large k stays finite).
class HeightValue {
 public:
  HeightValue() = default;
  HeightValue(PrimePowerProduct finite, double log_arch, double rel_err)
      : finite_(std::move(finite)), log_arch_(log_arch), rel_err_(rel_err) {}

  static HeightValue one() { return {}; }

  const PrimePowerProduct& finite() const noexcept { return finite_; }
  double log_arch() const noexcept { return log_arch_; }
  double arch() const;
  double rel_err() const noexcept { return rel_err_; }
  double log() const { return finite_.log() + log_arch_; }
  double value() const;

  HeightValue& operator*=(const HeightValue& o);
  HeightValue& operator/=(const HeightValue& o);
  friend HeightValue operator*(HeightValue x, const HeightValue& y) { return x *= y; }
  friend HeightValue operator/(HeightValue x, const HeightValue& y) { return x /= y; }
  HeightValue pow(const mpq_class& e) const;

 private:
  PrimePowerProduct finite_;
  double log_arch_ = 0.0;
  double rel_err_ = 0.0;
};

/// Finite parts equal exactly and archimedean parts within rel_tol.
bool same_height(const HeightValue& x, const HeightValue& y, double rel_tol);

}  // namespace heightlab
