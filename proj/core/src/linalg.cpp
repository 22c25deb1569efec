#include "heightlab/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "heightlab/arith.hpp"
#include "heightlab/errors.hpp"

namespace heightlab {

// ---------------------------------------------------------------------------
// VectorK / MatrixK

VectorK::VectorK(Field field, std::vector<Scalar> entries)
    : field_(field), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("vector of dimension 0");
}

VectorK VectorK::zero(const Field& field, std::size_t n) {
  return VectorK(field, std::vector<Scalar>(n, in_field(0, field)));
}

VectorK VectorK::unit(const Field& field, std::size_t n, std::size_t i) {
  std::vector<Scalar> e(n, in_field(0, field));
  e.at(i) = in_field(1, field);
  return VectorK(field, std::move(e));
}

bool VectorK::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

VectorK VectorK::operator-(const VectorK& o) const {
  std::vector<Scalar> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= o.entries_.at(i);
  return VectorK(field_, std::move(out));
}

VectorK VectorK::operator+(const VectorK& o) const {
  std::vector<Scalar> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.entries_.at(i);
  return VectorK(field_, std::move(out));
}

VectorK operator*(const Scalar& s, const VectorK& x) {
  std::vector<Scalar> out(x.entries_);
  for (auto& e : out) e *= s;
  return VectorK(x.field_, std::move(out));
}

MatrixK::MatrixK(Field field, std::size_t n, std::vector<Scalar> entries)
    : field_(field), n_(n), a_(std::move(entries)) {
  if (n_ == 0) throw std::invalid_argument("matrix of dimension 0");
  if (a_.size() != n_ * n_) throw std::invalid_argument("matrix must be square");
}

MatrixK MatrixK::zero(const Field& field, std::size_t n) {
  return MatrixK(field, n, std::vector<Scalar>(n * n, in_field(0, field)));
}

MatrixK MatrixK::identity(const Field& field, std::size_t n) {
  MatrixK m = zero(field, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = in_field(1, field);
  return m;
}

MatrixK MatrixK::diagonal(const Field& field, const std::vector<Scalar>& diag) {
  MatrixK m = zero(field, diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.a_[i * diag.size() + i] = diag[i];
  return m;
}

VectorK MatrixK::column(std::size_t j) const {
  std::vector<Scalar> c;
  c.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) c.push_back((*this)(i, j));
  return VectorK(field_, std::move(c));
}

VectorK MatrixK::row(std::size_t i) const {
  return VectorK(field_, std::vector<Scalar>(a_.begin() + static_cast<long>(i * n_),
                                             a_.begin() + static_cast<long>((i + 1) * n_)));
}

bool MatrixK::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

MatrixK MatrixK::transpose() const {
  std::vector<Scalar> out(a_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[j * n_ + i] = a_[i * n_ + j];
  return MatrixK(field_, n_, std::move(out));
}

MatrixK MatrixK::conjugate_transpose() const {
  std::vector<Scalar> out(a_.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[j * n_ + i] = a_[i * n_ + j].conjugate();
  return MatrixK(field_, n_, std::move(out));
}

MatrixK MatrixK::operator*(const MatrixK& o) const {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch");
  std::vector<Scalar> out(n_ * n_, in_field(0, field_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Scalar& aik = a_[i * n_ + k];
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const Scalar& bkj = o.a_[k * n_ + j];
        if (!bkj.is_zero()) out[i * n_ + j] += aik * bkj;
      }
    }
  }
  return MatrixK(field_, n_, std::move(out));
}

MatrixK MatrixK::operator+(const MatrixK& o) const {
  std::vector<Scalar> out(a_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.a_.at(i);
  return MatrixK(field_, n_, std::move(out));
}

MatrixK MatrixK::operator-(const MatrixK& o) const {
  std::vector<Scalar> out(a_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= o.a_.at(i);
  return MatrixK(field_, n_, std::move(out));
}

VectorK MatrixK::operator*(const VectorK& x) const {
  if (x.size() != n_) throw std::invalid_argument("dimension mismatch");
  std::vector<Scalar> out(n_, in_field(0, field_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += a_[i * n_ + j] * x[j];
  return VectorK(field_, std::move(out));
}

MatrixK operator*(const Scalar& s, const MatrixK& t) {
  std::vector<Scalar> out(t.a_);
  for (auto& e : out) e *= s;
  return MatrixK(t.field_, t.n_, std::move(out));
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(Field field, std::vector<Scalar> coeffs)
    : field_(field), c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Polynomial::operator()(const Scalar& x) const {
  Scalar acc = in_field(0, field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Scalar(static_cast<long>(i)));
  return Polynomial(field_, std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  const Scalar inv = c_.back().inverse();
  std::vector<Scalar> out(c_);
  for (auto& e : out) e *= inv;
  return Polynomial(field_, std::move(out));
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) return Polynomial(f.field_, {});
  std::vector<Scalar> out(f.c_.size() + g.c_.size() - 1, in_field(0, f.field_));
  for (std::size_t i = 0; i < f.c_.size(); ++i)
    for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += f.c_[i] * g.c_[j];
  return Polynomial(f.field_, std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Scalar> r = f.coefficients();
  const int dg = g.degree();
  if (f.degree() < dg) return {Polynomial(f.field(), {}), f};
  std::vector<Scalar> q(static_cast<std::size_t>(f.degree() - dg + 1), in_field(0, f.field()));
  const Scalar inv = g.leading().inverse();
  for (int i = f.degree(); i >= dg; --i) {
    const Scalar c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - dg)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dg; ++j) {
      r[static_cast<std::size_t>(i - dg + j)] -= c * g.coefficients()[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(f.field(), std::move(q)), Polynomial(f.field(), std::move(r))};
}

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  Polynomial a = f, b = g;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& f) {
  if (f.degree() <= 0) return f.monic();
  return divmod(f, gcd(f, f.derivative())).first.monic();
}

CharPoly::CharPoly(Polynomial poly) : poly_(std::move(poly)) {
  if (poly_.is_zero() || !(poly_.leading() == Scalar(1))) {
    throw std::invalid_argument("characteristic polynomial must be monic");
  }
}

bool CharPoly::is_power_of_x() const {
  const auto& c = poly_.coefficients();
  return std::all_of(c.begin(), c.end() - 1, [](const Scalar& s) { return s.is_zero(); });
}

int CharPoly::zero_root_multiplicity() const {
  int z = 0;
  while (z < degree() && coefficient(z).is_zero()) ++z;
  return z;
}

// Faddeev-LeVerrier: M_k = T M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(T M_k) / k.
CharPoly char_poly(const MatrixK& t) {
  const std::size_t n = t.dim();
  const Field& field = t.field();
  std::vector<Scalar> c(n + 1, in_field(0, field));
  c[n] = in_field(1, field);
  MatrixK m = MatrixK::zero(field, n);
  const MatrixK id = MatrixK::identity(field, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = t * m + c[n - k + 1] * id;
    const MatrixK tm = t * m;
    Scalar tr = in_field(0, field);
    for (std::size_t i = 0; i < n; ++i) tr += tm(i, i);
    c[n - k] = -tr / Scalar(static_cast<long>(k));
  }
  return CharPoly(Polynomial(field, std::move(c)));
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

using Rows = std::vector<std::vector<Scalar>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Rows& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Scalar inv = rows[r][col].inverse();
    for (auto& e : rows[r]) e *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Scalar f = rows[i][col];
      for (std::size_t j = col; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

Rows to_rows(const MatrixK& t) {
  Rows rows(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) rows[i] = t.row(i).entries();
  return rows;
}

Rows to_rows(const std::vector<VectorK>& vs) {
  Rows rows;
  rows.reserve(vs.size());
  for (const auto& v : vs) rows.push_back(v.entries());
  return rows;
}

std::size_t row_rank(const std::vector<VectorK>& vs) {
  if (vs.empty()) return 0;
  Rows rows = to_rows(vs);
  return rref(rows, vs.front().size()).size();
}

Scalar small_determinant(Rows rows) {
  const std::size_t n = rows.size();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && rows[piv][col].is_zero()) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(rows[piv], rows[col]);
      det = -det;
    }
    det *= rows[col][col];
    const Scalar inv = rows[col][col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (rows[i][col].is_zero()) continue;
      const Scalar f = rows[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[col][j];
    }
  }
  return det;
}

}  // namespace

Scalar determinant(const MatrixK& t) {
  Scalar d = small_determinant(to_rows(t));
  return d * in_field(1, t.field());
}

std::size_t rank(const MatrixK& t) {
  Rows rows = to_rows(t);
  return rref(rows, t.dim()).size();
}

MatrixK inverse(const MatrixK& t) {
  const std::size_t n = t.dim();
  Rows rows = to_rows(t);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].resize(2 * n, in_field(0, t.field()));
    rows[i][n + i] = in_field(1, t.field());
  }
  auto piv = rref(rows, n);
  if (piv.size() != n) throw std::domain_error("matrix is singular");
  std::vector<Scalar> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(rows[i][n + j]);
  return MatrixK(t.field(), n, std::move(out));
}

std::vector<Scalar> maximal_minors(const std::vector<VectorK>& rows) {
  if (rows.empty()) throw std::invalid_argument("no rows");
  const std::size_t l = rows.size();
  const std::size_t n = rows.front().size();
  if (l > n) throw std::invalid_argument("more rows than columns");
  std::vector<Scalar> out;
  std::vector<std::size_t> cols(l);
  for (std::size_t i = 0; i < l; ++i) cols[i] = i;
  while (true) {
    Rows sub(l, std::vector<Scalar>(l));
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) sub[i][j] = rows[i][cols[j]];
    out.push_back(small_determinant(std::move(sub)) * in_field(1, rows.front().field()));
    // Next l-subset in lexicographic order.
    std::size_t i = l;
    while (i > 0 && cols[i - 1] == n - l + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < l; ++j) cols[j] = cols[j - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Content

std::pair<std::vector<Scalar>, mpq_class> strip_content(const std::vector<Scalar>& values) {
  std::vector<mpq_class> parts;
  parts.reserve(2 * values.size());
  for (const auto& v : values) {
    parts.push_back(v.a());
    parts.push_back(v.b());
  }
  const mpq_class c = arith::rational_content(parts);
  if (c == 0) return {values, 0};
  std::vector<Scalar> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(Scalar(v.a() / c, v.b() / c, v.radicand()));
  return {std::move(out), c};
}

VectorK primitive(const VectorK& x) {
  auto [entries, c] = strip_content(x.entries());
  if (c == 0) return x;
  auto first = std::find_if(entries.begin(), entries.end(), [](const Scalar& s) { return !s.is_zero(); });
  const bool negate = first->a() < 0 || (first->a() == 0 && first->b() < 0);
  if (negate) {
    for (auto& e : entries) e = -e;
  }
  return VectorK(x.field(), std::move(entries));
}

std::size_t entry_bits(const MatrixK& t) {
  std::size_t bits = 0;
  auto size = [](const mpq_class& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  for (const auto& e : t.entries()) bits += size(e.a()) + size(e.b());
  return bits;
}

namespace {

StrippedPower strip(const MatrixK& t, const mpq_class& scale, std::size_t bit_budget) {
  auto [entries, c] = strip_content(t.entries());
  MatrixK s(t.field(), t.dim(), std::move(entries));
  if (entry_bits(s) > bit_budget) {
    throw ResourceError("power entries exceed the bit budget of " + std::to_string(bit_budget) + " bits");
  }
  return {std::move(s), c == 0 ? scale : mpq_class(scale * c)};
}

}  // namespace

StrippedPower square_stripped(const StrippedPower& s, std::size_t bit_budget) {
  return strip(s.matrix * s.matrix, s.scale * s.scale, bit_budget);
}

StrippedPower power_stripped(const MatrixK& t, unsigned long k, std::size_t bit_budget) {
  if (k == 0) throw std::invalid_argument("power_stripped needs k >= 1");
  StrippedPower base = strip(t, 1, bit_budget);
  std::optional<StrippedPower> acc;
  while (true) {
    if (k & 1UL) {
      if (acc) {
        acc = strip(acc->matrix * base.matrix, acc->scale * base.scale, bit_budget);
      } else {
        acc = base;
      }
    }
    k >>= 1;
    if (k == 0) break;
    base = square_stripped(base, bit_budget);
  }
  return *acc;
}

// ---------------------------------------------------------------------------
// Subspaces

struct Subspace::Cache {
  std::once_flag once;
  std::optional<VectorK> plucker;
};

Subspace::Subspace(Field field, std::size_t ambient, std::vector<VectorK> basis)
    : field_(field), n_(ambient), basis_(std::move(basis)), cache_(std::make_shared<Cache>()) {
  if (basis_.empty()) throw std::invalid_argument("subspace basis is empty");
  for (const auto& b : basis_) {
    if (b.size() != n_) throw std::invalid_argument("basis vector has wrong dimension");
  }
  if (row_rank(basis_) != basis_.size()) throw std::invalid_argument("basis vectors are dependent");
}

Subspace Subspace::full(const Field& field, std::size_t n) {
  std::vector<VectorK> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(VectorK::unit(field, n, i));
  return Subspace(field, n, std::move(basis));
}

const VectorK& Subspace::plucker() const {
  std::call_once(cache_->once, [this] {
    cache_->plucker = primitive(VectorK(field_, maximal_minors(basis_)));
  });
  return *cache_->plucker;
}

VectorK plucker(const Subspace& x) { return x.plucker(); }

bool Subspace::contains(const VectorK& y) const {
  if (y.size() != n_) throw std::invalid_argument("vector has wrong dimension");
  if (dim() == n_) return true;
  std::vector<VectorK> rows = basis_;
  rows.push_back(y);
  return row_rank(rows) == dim();
}

Subspace Subspace::extended_by(const VectorK& y) const {
  if (contains(y)) throw DegenerateInputError("vector lies in the subspace");
  std::vector<VectorK> rows = basis_;
  rows.push_back(y);
  return Subspace(field_, n_, std::move(rows));
}

bool Subspace::same_as(const Subspace& o) const {
  if (o.n_ != n_ || o.dim() != dim()) return false;
  const VectorK& p = plucker();
  const VectorK& q = o.plucker();
  std::size_t i = 0;
  while (p[i].is_zero()) ++i;
  if (q[i].is_zero()) return false;
  const Scalar ratio = q[i] / p[i];
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] * ratio == q[j])) return false;
  }
  return true;
}

std::optional<Subspace> kernel(const MatrixK& t) {
  const std::size_t n = t.dim();
  Rows rows = to_rows(t);
  const auto pivots = rref(rows, n);
  if (pivots.size() == n) return std::nullopt;
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VectorK> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(n, in_field(0, t.field()));
    v[free] = in_field(1, t.field());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    basis.push_back(primitive(VectorK(t.field(), std::move(v))));
  }
  return Subspace(t.field(), n, std::move(basis));
}

std::optional<Subspace> stable_kernel(const MatrixK& t) {
  return kernel(power_stripped(t, t.dim()).matrix);
}

}  // namespace heightlab
