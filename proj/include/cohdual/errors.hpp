#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohdual {

enum class ErrorKind {
  EmptyMatrix,
  NotFinite,
  NotSquare,
  NotHermitian,
  NotPsd,
  DimensionMismatch,
  LengthMismatch,
  NotNormalized,
  NegativeProbability,
  IndexOutOfRange,
  WrongArity,
  DomainError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cohdual
