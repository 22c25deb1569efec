#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heightlab {

/// Malformed textual input (field strings, scalars, vectors, matrices).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// The input lies on the excluded locus of an operation (e.g. y in X for d_X(y)).
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A floating-point routine failed to reach its tolerance. Carries the best
/// bracket it could establish.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Exact arithmetic exceeded the configured entry bit-size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heightlab
