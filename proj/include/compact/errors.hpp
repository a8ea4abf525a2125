#pragma once

#include <stdexcept>
#include <string>

namespace compact {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IndexError : public Error { using Error::Error; };
class ConsistencyError : public Error { using Error::Error; };
class UnsupportedSystemError : public Error { using Error::Error; };
class InvalidExcitationError : public Error { using Error::Error; };
class DegeneracyError : public Error { using Error::Error; };
class LedgerInconsistencyError : public Error { using Error::Error; };
class MappingError : public Error { using Error::Error; };
class CapacityError : public Error { using Error::Error; };
class StateError : public Error { using Error::Error; };
class HermiticityError : public Error { using Error::Error; };
class DimensionError : public Error { using Error::Error; };

}  // namespace compact
