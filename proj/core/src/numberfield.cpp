#include "heightlab/numberfield.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "heightlab/arith.hpp"

namespace heightlab {

// ---------------------------------------------------------------------------
// Field

Field Field::quadratic(long m) {
  if (m == 0 || m == 1 || !arith::is_squarefree(m)) {
    throw std::invalid_argument("quadratic field needs squarefree m not in {0,1}, got " +
                                std::to_string(m));
  }
  return Field(m);
}

long Field::discriminant() const noexcept {
  if (m_ == 0) return 1;
  long r = ((m_ % 4) + 4) % 4;
  return r == 1 ? m_ : 4 * m_;
}

std::string Field::name() const {
  if (m_ == 0) return "Q";
  if (m_ == -1) return "Q(i)";
  return "Q(sqrt" + std::to_string(m_) + ")";
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const mpq_class& a, const mpq_class& b, long m) : a_(a), b_(b), m_(m) {
  a_.canonicalize();
  b_.canonicalize();
  if (m_ == 0 && b_ != 0) throw std::invalid_argument("irrational part over Q");
}

Scalar in_field(const mpq_class& v, const Field& field) { return Scalar(v, 0, field.m()); }

long Scalar::merged_radicand(const Scalar& o) const {
  if (m_ == o.m_) return m_;
  if (m_ == 0) return o.m_;
  if (o.m_ == 0) return m_;
  if (b_ == 0 && o.b_ == 0) return m_;
  if (b_ == 0) return o.m_;
  if (o.b_ == 0) return m_;
  throw std::invalid_argument("scalars from different quadratic fields");
}

Scalar Scalar::conjugate() const { return Scalar(a_, -b_, m_); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  mpq_class n = norm();
  return Scalar(a_ / n, -b_ / n, m_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  m_ = merged_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  m_ = merged_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  m_ = merged_radicand(o);
  if (b_ == 0 && o.b_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  mpq_class a = a_ * o.a_ + mpq_class(m_) * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_rational()) {
    if (o.a_ == 0) throw std::domain_error("division by zero");
    m_ = merged_radicand(o);
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, m_); }

std::string Scalar::str() const {
  if (b_ == 0) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str();
  if (b_ > 0 && !out.empty()) out += "+";
  if (b_ == 1) {
    out += "r";
  } else if (b_ == -1) {
    out += "-r";
  } else {
    out += b_.get_str() + "*r";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Place

Place Place::archimedean(const Field& field, Embedding embedding) {
  Place v;
  v.kind_ = Kind::archimedean;
  v.field_ = field;
  v.embedding_ = embedding;
  return v;
}

Place Place::finite(const Field& field, const mpz_class& p, int e, int f, int branch) {
  Place v;
  v.kind_ = Kind::finite;
  v.field_ = field;
  v.prime_ = p;
  v.e_ = e;
  v.f_ = f;
  v.branch_ = branch;
  return v;
}

int Place::local_degree() const noexcept {
  if (is_finite()) return e_ * f_;
  return embedding_ == Embedding::complex ? 2 : 1;
}

mpq_class Place::weight() const {
  mpq_class w(local_degree(), field_.degree());
  w.canonicalize();
  return w;
}

std::string Place::label() const {
  if (is_archimedean()) return embedding_ == Embedding::real_conjugate ? "inf'" : "inf";
  std::string s = prime_.get_str();
  if (is_split()) s += ":" + std::to_string(branch_);
  return s;
}

bool operator==(const Place& x, const Place& y) {
  return x.kind_ == y.kind_ && x.field_ == y.field_ && x.embedding_ == y.embedding_ &&
         x.prime_ == y.prime_ && x.branch_ == y.branch_;
}

bool operator<(const Place& x, const Place& y) {
  if (x.kind_ != y.kind_) return x.kind_ == Place::Kind::archimedean;
  if (x.is_archimedean()) return static_cast<int>(x.embedding_) < static_cast<int>(y.embedding_);
  if (x.prime_ != y.prime_) return x.prime_ < y.prime_;
  return x.branch_ < y.branch_;
}

std::vector<Place> archimedean_places(const Field& field) {
  if (field.is_rational()) return {Place::archimedean(field, Place::Embedding::real)};
  if (field.m() > 0) {
    return {Place::archimedean(field, Place::Embedding::real),
            Place::archimedean(field, Place::Embedding::real_conjugate)};
  }
  return {Place::archimedean(field, Place::Embedding::complex)};
}

std::vector<Place> places_above(const Field& field, const mpz_class& p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("places_above: " + p.get_str() + " is not prime");
  if (field.is_rational()) return {Place::finite(field, p, 1, 1, 0)};
  const mpz_class m = field.m();
  enum { ramified, split, inert } kind;
  if (p == 2) {
    mpz_class m8;
    mpz_mod_ui(m8.get_mpz_t(), m.get_mpz_t(), 8);
    if (mpz_even_p(m.get_mpz_t()) || m8 == 3 || m8 == 7) {
      kind = ramified;
    } else {
      kind = m8 == 1 ? split : inert;
    }
  } else if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    kind = ramified;
  } else {
    kind = arith::legendre(m, p) == 1 ? split : inert;
  }
  switch (kind) {
    case ramified:
      return {Place::finite(field, p, 2, 1, 0)};
    case inert:
      return {Place::finite(field, p, 1, 2, 0)};
    case split:
      break;
  }
  return {Place::finite(field, p, 1, 1, 0), Place::finite(field, p, 1, 1, 1)};
}

// ---------------------------------------------------------------------------
// Valuations and absolute values

mpq_class valuation(const Scalar& x, const Place& v) {
  if (!v.is_finite()) throw std::invalid_argument("valuation at an archimedean place");
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  const mpz_class& p = v.prime();
  if (x.is_rational()) return arith::valuation(x.a(), p);
  if (!v.is_split()) {
    mpq_class w(arith::valuation(x.norm(), p), 2);
    w.canonicalize();
    return w;
  }
  // Split prime: embed into Z_p through a Hensel-lifted root of X^2 - m.
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), x.a().get_den_mpz_t(), x.b().get_den_mpz_t());
  const mpz_class A = x.a().get_num() * (den / x.a().get_den());
  const mpz_class B = x.b().get_num() * (den / x.b().get_den());
  const mpz_class m = v.field().m();
  const long sign = v.branch() == 0 ? 1 : -1;
  for (unsigned long k = 4;; k *= 2) {
    mpz_class r = arith::sqrt_mod_prime_power(m, p, k);
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), k);
    mpz_class t = A + sign * B * r;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
    if (t != 0) return mpq_class(arith::valuation(t, p) - arith::valuation(den, p));
  }
}

LocalMagnitude LocalMagnitude::zero(bool exact) {
  LocalMagnitude z;
  z.zero_ = true;
  z.exact_ = exact;
  return z;
}

LocalMagnitude LocalMagnitude::exact(const mpz_class& p, const mpq_class& exponent) {
  LocalMagnitude z;
  z.exact_ = true;
  z.prime_ = p;
  z.exponent_ = exponent;
  return z;
}

LocalMagnitude LocalMagnitude::real(double log_value, double rel_err) {
  LocalMagnitude z;
  if (std::isinf(log_value) && log_value < 0) z.zero_ = true;
  z.log_ = log_value;
  z.rel_err_ = rel_err;
  return z;
}

double LocalMagnitude::log() const {
  if (zero_) return -std::numeric_limits<double>::infinity();
  if (exact_) return exponent_.get_d() * log_abs(mpq_class(prime_));
  return log_;
}

double LocalMagnitude::value() const { return zero_ ? 0.0 : std::exp(log()); }

std::string LocalMagnitude::str() const {
  if (zero_) return "0";
  if (exact_) return prime_.get_str() + "^" + exponent_.get_str();
  std::ostringstream os;
  os.precision(17);
  os << value();
  return os.str();
}

LocalMagnitude abs_value(const Scalar& x, const Place& v) {
  if (v.is_finite()) {
    if (x.is_zero()) return LocalMagnitude::zero(true);
    return LocalMagnitude::exact(v.prime(), -valuation(x, v));
  }
  if (x.is_zero()) return LocalMagnitude::zero(false);
  const long shift = bit_size(x) - 64;
  const long double z = std::abs(embed(x, v, shift));
  return LocalMagnitude::real(static_cast<double>(std::log(z) + shift * std::log(2.0L)),
                              8 * LDBL_EPSILON);
}

namespace {

// |n| = t * 2^e with t holding the leading 64 bits.
long double top_bits(const mpz_class& n, long& e) {
  const long bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  mpz_class t = abs(n);
  e = 0;
  if (bits > 64) {
    e = bits - 64;
    t >>= e;
  }
  long double v = static_cast<long double>(mpz_get_ui(t.get_mpz_t()));
  return n < 0 ? -v : v;
}

}  // namespace

long double scaled_value(const mpq_class& q, long shift) {
  if (q == 0) return 0.0L;
  long en = 0, ed = 0;
  const long double n = top_bits(q.get_num(), en);
  const long double d = top_bits(q.get_den(), ed);
  return std::ldexp(n / d, static_cast<int>(en - ed - shift));
}

double log_abs(const mpq_class& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

long bit_size(const Scalar& x) {
  auto size = [](const mpq_class& q) -> long {
    if (q == 0) return std::numeric_limits<long>::min() / 4;
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  };
  return std::max(size(x.a()), size(x.b()));
}

std::complex<long double> embed(const Scalar& x, const Place& v, long shift) {
  if (!v.is_archimedean()) throw std::invalid_argument("embed needs an archimedean place");
  const long double a = scaled_value(x.a(), shift);
  if (x.is_rational()) return {a, 0.0L};
  const long m = v.field().m();
  if (m == 0 || (x.radicand() != 0 && x.radicand() != m)) {
    throw std::invalid_argument("scalar does not belong to the place's field");
  }
  const long double root = std::sqrt(static_cast<long double>(std::labs(m)));
  const long double b = scaled_value(x.b(), shift) * root;
  if (m < 0) return {a, b};
  const long double t2 = v.embedding() == Place::Embedding::real ? b : -b;
  if (a == 0 || t2 == 0 || (a > 0) == (t2 > 0)) return {a + t2, 0.0L};
  // Opposite signs: a + t2 = N / (a - t2) with N computed exactly.
  return {scaled_value(x.norm(), 2 * shift) / (a - t2), 0.0L};
}

}  // namespace heightlab
