#pragma once

#include <stdexcept>
#include <string>

namespace focal {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad values, bad dimensions, malformed files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed input stream; carries the 1-based line number where parsing failed.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Degenerate geometry: the requested analysis is undefined for this configuration.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Group centroid coincides with the context centroid (D_fg = 0).
class CoincidentCentroidsError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Context carries no dispersion as seen from the reference point.
class DegenerateContextError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace focal
