#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcalc {

enum class ErrorKind {
  InvalidArgument,
  NotPrime,
  Reducible,
  DegreeMismatch,
  TooLarge,
  DivisionByZero,
  ZeroDirection,
  DependentDirections,
  FieldMismatch,
  LengthMismatch,
  TooManyDirections,
  RangeError,
  ZeroMu,
  BasisMismatch,
  NotApplicable,
  InternalInconsistency,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures additionally report the byte offset into the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::ParseError, "at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  // Structural errors in an already-tokenized document are located by a
  // JSON pointer instead of a byte offset.
  ParseError(const std::string& pointer, const std::string& message)
      : Error(ErrorKind::ParseError, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + message),
        position_(std::string::npos) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dcalc
