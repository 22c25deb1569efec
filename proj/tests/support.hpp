#pragma once

#include <cmath>
#include <string>

#include "heightlab/heights.hpp"
#include "heightlab/text_io.hpp"

namespace testing_support {

inline heightlab::VectorK vec(const std::string& s, const heightlab::Field& f = heightlab::Field()) {
  return heightlab::parse_vector(s, f);
}
inline heightlab::MatrixK mat(const std::string& s, const heightlab::Field& f = heightlab::Field()) {
  return heightlab::parse_matrix(s, f);
}
inline heightlab::Place prime_place(long p, const heightlab::Field& f = heightlab::Field(), std::size_t i = 0) {
  return heightlab::places_above(f, p).at(i);
}
inline heightlab::Place real_place() {
  return heightlab::archimedean_places(heightlab::Field()).front();
}

/// |log x - log y| within tol, compared on the whole value.
inline bool close_log(double lx, double ly, double tol) { return std::abs(lx - ly) <= tol; }

}  // namespace testing_support
