#pragma once

#include <stdexcept>
#include <string>

namespace jcwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text: syntax, unknown keys, unparsable values.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or unsupported model/grid configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different grids.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operand carries the wrong channel basis tag.
class BasisError : public Error {
 public:
  using Error::Error;
};

/// The grid cannot resolve the requested state or lattice.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf detected or the packet reached the grid boundary.
class NumericalBlowup : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation too small for the requested state.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t required)
      : Error(what), required_n_max(required) {}
  std::size_t required_n_max;
};

}  // namespace jcwave
