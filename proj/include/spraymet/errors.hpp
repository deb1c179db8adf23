#ifndef SPRAYMET_ERRORS_HPP
#define SPRAYMET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spraymet {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed expression text; `offset` is the 0-based character position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Coordinate index outside [1, n] for the declared dimension.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Evaluation left the domain of an elementary function (ln/sqrt of a
// non-positive real part, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A partial derivative beyond the truncation order was requested.
class OrderError : public Error {
 public:
  using Error::Error;
};

// A quadrature node fell outside the admitted region of the spray.
class PathDomainError : public Error {
 public:
  using Error::Error;
};

// Panel refinement could not reach the requested quadrature tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

// Scenario file is structurally invalid; `field` is the offending path.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& field, const std::string& detail = "")
      : Error("schema error at '" + field + "'" + (detail.empty() ? "" : ": " + detail)),
        field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Rejection sampling failed to reach the requested sample count.
class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace spraymet

#endif  // SPRAYMET_ERRORS_HPP
