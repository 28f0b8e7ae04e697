#pragma once

#include <stdexcept>
#include <string>

namespace weft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (grid mismatch,
/// off-lattice point, invalid grid parameters, ...).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A state pair is numerically orthogonal, so a quantity divided by the
/// overlap is undefined. Carries the measured overlap magnitude.
class OrthogonalityError : public Error {
  public:
    OrthogonalityError(const std::string &what, double overlap_magnitude)
        : Error(what), overlap_magnitude_(overlap_magnitude) {}

    double overlap_magnitude() const noexcept { return overlap_magnitude_; }

  private:
    double overlap_magnitude_;
};

/// Malformed input file, unreadable path or unwritable output.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace weft
