#include "heightlab/height_value.hpp"

#include <cmath>
#include <sstream>

#include "heightlab/numberfield.hpp"

namespace heightlab {

void PrimePowerProduct::multiply(const mpz_class& p, const mpq_class& q) {
  if (q == 0) return;
  auto [it, inserted] = exps_.try_emplace(p, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) exps_.erase(it);
  }
}

PrimePowerProduct& PrimePowerProduct::operator*=(const PrimePowerProduct& o) {
  for (const auto& [p, q] : o.exps_) multiply(p, q);
  return *this;
}

PrimePowerProduct PrimePowerProduct::inverse() const { return pow(-1); }

PrimePowerProduct PrimePowerProduct::pow(const mpq_class& e) const {
  PrimePowerProduct out;
  if (e == 0) return out;
  for (const auto& [p, q] : exps_) out.exps_.emplace(p, q * e);
  return out;
}

mpq_class PrimePowerProduct::exponent_of(const mpz_class& p) const {
  auto it = exps_.find(p);
  return it == exps_.end() ? mpq_class(0) : it->second;
}

double PrimePowerProduct::log() const {
  double s = 0.0;
  for (const auto& [p, q] : exps_) s += q.get_d() * log_abs(mpq_class(p));
  return s;
}

std::optional<mpq_class> PrimePowerProduct::as_rational() const {
  mpq_class out = 1;
  for (const auto& [p, q] : exps_) {
    if (q.get_den() != 1) return std::nullopt;
    mpz_class pk;
    const mpz_class& e = q.get_num();
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), mpz_class(abs(e)).get_ui());
    if (e > 0) {
      out *= pk;
    } else {
      out /= pk;
    }
  }
  return out;
}

std::string PrimePowerProduct::str() const {
  if (exps_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, q] : exps_) {
    if (!first) os << " * ";
    first = false;
    os << p.get_str() << "^" << q.get_str();
  }
  return os.str();
}

double HeightValue::arch() const { return std::exp(log_arch_); }

double HeightValue::value() const { return std::exp(log()); }

HeightValue& HeightValue::operator*=(const HeightValue& o) {
  finite_ *= o.finite_;
  log_arch_ += o.log_arch_;
  rel_err_ += o.rel_err_;
  return *this;
}

HeightValue& HeightValue::operator/=(const HeightValue& o) {
  finite_ *= o.finite_.inverse();
  log_arch_ -= o.log_arch_;
  rel_err_ += o.rel_err_;
  return *this;
}

HeightValue HeightValue::pow(const mpq_class& e) const {
  const double ed = e.get_d();
  return {finite_.pow(e), log_arch_ * ed, rel_err_ * std::fabs(ed)};
}

bool same_height(const HeightValue& x, const HeightValue& y, double rel_tol) {
  return x.finite() == y.finite() && std::fabs(x.log_arch() - y.log_arch()) <= rel_tol;
}

}  // namespace heightlab
