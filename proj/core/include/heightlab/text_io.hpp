#pragma once

// Text forms: fields "Q", "Q(i)", "Q(sqrt2)", "Q(sqrt-5)"; scalars "a/b" or
// "a/b+c/d*r" with r = sqrt m; vectors "[3,4]"; matrices and row lists
// "[[1,1/2],[0,1]]"; places "inf", "inf'", "p", "p:b". Whitespace is ignored.
// Errors are ParseError with a 0-based character position.

#include <string>
#include <string_view>
#include <vector>

#include "heightlab/linalg.hpp"
#include "heightlab/numberfield.hpp"

namespace heightlab {

Field parse_field(std::string_view text);
Scalar parse_scalar(std::string_view text, const Field& field);
VectorK parse_vector(std::string_view text, const Field& field);
MatrixK parse_matrix(std::string_view text, const Field& field);
/// Rows of equal length, e.g. a subspace basis.
std::vector<VectorK> parse_rows(std::string_view text, const Field& field);
Place parse_place(std::string_view text, const Field& field);
/// Comma-separated integers ("2,3,101").
std::vector<mpz_class> parse_integer_list(std::string_view text);

std::string format_vector(const VectorK& x);
std::string format_matrix(const MatrixK& t);

}  // namespace heightlab
