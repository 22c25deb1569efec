#include "heightlab/text_io.hpp"

#include <cctype>

#include "heightlab/arith.hpp"
#include "heightlab/errors.hpp"

namespace heightlab {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ == s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }
  std::size_t pos() const { return i_; }

  std::string digits() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a digit");
    return std::string(s_.substr(start, i_ - start));
  }

  // Unsigned rational "a" or "a/b".
  mpq_class rational() {
    mpq_class q{mpz_class(digits())};
    if (accept('/')) {
      const std::size_t at = pos();
      mpz_class d(digits());
      if (d == 0) throw ParseError("zero denominator", at);
      q /= d;
    }
    return q;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

Scalar scalar_at(Cursor& c, const Field& field) {
  mpq_class a = 0, b = 0;
  bool have_a = false, have_b = false;
  bool first = true;
  while (true) {
    const std::size_t start = c.pos();
    int sign = 1;
    if (c.accept('-')) {
      sign = -1;
    } else if (!first && !c.accept('+')) {
      break;
    }
    mpq_class coeff = 1;
    bool radical = false;
    if (c.peek() == 'r') {
      c.accept('r');
      radical = true;
    } else if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      coeff = c.rational();
      if (c.accept('*')) {
        if (!c.accept('r')) c.fail("expected 'r' after '*'");
        radical = true;
      }
    } else {
      c.fail("expected a number or 'r'");
    }
    coeff *= sign;
    if (radical) {
      if (field.is_rational()) throw ParseError("'r' is not defined over Q", start);
      if (have_b) throw ParseError("repeated irrational part", start);
      b = coeff;
      have_b = true;
    } else {
      if (have_a) throw ParseError("repeated rational part", start);
      a = coeff;
      have_a = true;
    }
    first = false;
  }
  return Scalar(a, b, field.m());
}

std::vector<Scalar> list_at(Cursor& c, const Field& field) {
  c.expect('[');
  std::vector<Scalar> out;
  if (c.accept(']')) c.fail("empty list");
  do {
    out.push_back(scalar_at(c, field));
  } while (c.accept(','));
  c.expect(']');
  return out;
}

std::vector<std::vector<Scalar>> nested_at(Cursor& c, const Field& field) {
  c.expect('[');
  std::vector<std::vector<Scalar>> rows;
  do {
    const std::size_t at = c.pos();
    rows.push_back(list_at(c, field));
    if (rows.size() > 1 && rows.back().size() != rows.front().size()) throw ParseError("ragged rows", at);
  } while (c.accept(','));
  c.expect(']');
  return rows;
}

std::string join(const std::vector<Scalar>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].str();
  }
  return out + "]";
}

}  // namespace

Field parse_field(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s == "Q") return Field();
  if (s == "Q(i)") return Field::quadratic(-1);
  const std::string head = "Q(sqrt";
  if (s.rfind(head, 0) != 0 || s.back() != ')') throw ParseError("unknown field '" + s + "'", 0);
  std::string body = s.substr(head.size(), s.size() - head.size() - 1);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  std::size_t used = 0;
  long m = 0;
  try {
    m = std::stol(body, &used);
  } catch (const std::exception&) {
    throw ParseError("bad radicand", head.size());
  }
  if (used != body.size()) throw ParseError("bad radicand", head.size() + used);
  if (m == 1 || m == 0 || !arith::is_squarefree(m)) {
    throw ParseError("radicand must be squarefree and not 0 or 1", head.size());
  }
  return Field::quadratic(m);
}

Scalar parse_scalar(std::string_view text, const Field& field) {
  Cursor c(text);
  Scalar x = scalar_at(c, field);
  c.expect_end();
  return x;
}

VectorK parse_vector(std::string_view text, const Field& field) {
  Cursor c(text);
  auto xs = list_at(c, field);
  c.expect_end();
  return VectorK(field, std::move(xs));
}

MatrixK parse_matrix(std::string_view text, const Field& field) {
  Cursor c(text);
  auto rows = nested_at(c, field);
  c.expect_end();
  const std::size_t n = rows.size();
  if (rows.front().size() != n) throw ParseError("matrix is not square", 0);
  std::vector<Scalar> e;
  for (auto& r : rows) std::move(r.begin(), r.end(), std::back_inserter(e));
  return MatrixK(field, n, std::move(e));
}

std::vector<VectorK> parse_rows(std::string_view text, const Field& field) {
  Cursor c(text);
  auto rows = nested_at(c, field);
  c.expect_end();
  std::vector<VectorK> out;
  for (auto& r : rows) out.emplace_back(field, std::move(r));
  return out;
}

Place parse_place(std::string_view text, const Field& field) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.rfind("inf", 0) == 0) {
    for (const auto& v : archimedean_places(field)) {
      if (v.label() == s) return v;
    }
    throw ParseError("no archimedean place '" + s + "' for " + field.name(), 0);
  }
  const std::size_t colon = s.find(':');
  const std::string ps = s.substr(0, colon);
  if (ps.empty() || ps.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a prime", 0);
  }
  const mpz_class p(ps);
  if (!arith::is_prime(p)) throw ParseError(ps + " is not prime", 0);
  for (const auto& v : places_above(field, p)) {
    if (v.label() == s) return v;
  }
  throw ParseError("no place '" + s + "' above " + ps + " in " + field.name(), colon == std::string::npos ? 0 : colon);
}

std::vector<mpz_class> parse_integer_list(std::string_view text) {
  Cursor c(text);
  std::vector<mpz_class> out;
  do {
    const bool neg = c.accept('-');
    mpz_class v(c.digits());
    out.push_back(neg ? mpz_class(-v) : v);
  } while (c.accept(','));
  c.expect_end();
  return out;
}

std::string format_vector(const VectorK& x) { return join(x.entries()); }

std::string format_matrix(const MatrixK& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (i) out += ",";
    out += join(t.row(i).entries());
  }
  return out + "]";
}

}  // namespace heightlab
