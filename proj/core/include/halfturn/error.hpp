#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halfturn {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed textual input (words, presentations, case specs).
  class ParseError : public Error {
   public:
    ParseError(std::string const& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          _position(position) {}

    explicit ParseError(std::string const& message) : Error(message), _position(0) {}

    // 1-based character position of the offending token (0 if unknown).
    std::size_t position() const noexcept {
      return _position;
    }

   private:
    std::size_t _position;
  };

  // Raised when a computation leaves its valid domain.
  class ComputationError : public Error {
   public:
    using Error::Error;
  };

  // Axes of a and b coincide (rho0^2 == 4); the representation formulas are
  // singular there.
  class DegenerateAxes : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  // A trace constraint whose trace has both an even and a w-odd part.
  class MixedParity : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  class InvalidOrder : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  // (x, y, z, w) does not satisfy w^2 = F(x, y, z).
  class InconsistentPoint : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  class NotLineMatrix : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  class OverflowError : public ComputationError {
   public:
    using ComputationError::ComputationError;
  };

  // A case spec that is syntactically fine but violates its case pattern.
  class SpecError : public Error {
   public:
    using Error::Error;
  };

}  // namespace halfturn
