#include "dcalc/error.hpp"

namespace dcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::DependentDirections: return "DependentDirections";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooManyDirections: return "TooManyDirections";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dcalc
