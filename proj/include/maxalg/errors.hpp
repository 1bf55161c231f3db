#pragma once

// Error taxonomy shared across the library. Every failure the CLI maps to an
// exit code derives from one of these.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxalg {

// Argument outside the mathematical domain of an operation (e.g. a free
// power exponent below 1).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A distribution function of the wrong support class was passed to an
// operation that requires a stricter class.
class ClassError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid parameter for a distribution family constructor.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A theorem hypothesis does not hold for the supplied input.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The survival function reached exactly zero at a tail probe.
class TailVanished : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Discontinuity exclusions removed every grid point.
class EmptyGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expression-language errors. ParseError carries the byte offset and the
// expected-token set so messages stay stable for golden tests.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : std::runtime_error("parse error at byte " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ArityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace maxalg
