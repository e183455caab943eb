#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dkp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index outside 0..3 (or another domain violation on an argument).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Exact and floating scalars mixed in one computation.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// The basis built from a representation does not span 25 dimensions.
class RepresentationDefect : public Error {
 public:
  RepresentationDefect(const std::string& what, std::size_t rank)
      : Error(what), rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// Malformed grid file. `offset` is the byte position where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class StencilError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Plane-wave momentum violates k.k = m^2; `violation` is |k.k - m^2|.
class MassShellError : public Error {
 public:
  MassShellError(const std::string& what, double violation)
      : Error(what), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

/// Division by a scalar density below the singularity threshold.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Every grid point is masked; nothing can be reconstructed.
class EmptyDomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace dkp
