#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdet {

enum class ErrorCode {
  InvalidArgument,
  InvalidField,
  FieldMismatch,
  DivisionByZero,
  ParseError,
  NonSquare,
  ShapeMismatch,
  SizeMismatch,
  SizeCapExceeded,
  ExpansionCapExceeded,
  CharacteristicTwo,
  IndexOutOfRange,
  NonIncreasingIndices,
  NotRankOne,
  ZeroEntry,
  BadPermutation,
  ZeroDiagonal,
  NotInvertible,
  BadField,
  NotMonomial,
  ParityViolation,
  ProductNotOne,
  DegenerateParams,
  RoundTripMismatch,
  UnclassifiedSolution,
  ConstraintViolated,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::ExpansionCapExceeded: return "ExpansionCapExceeded";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonIncreasingIndices: return "NonIncreasingIndices";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::ProductNotOne: return "ProductNotOne";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::RoundTripMismatch: return "RoundTripMismatch";
    case ErrorCode::UnclassifiedSolution: return "UnclassifiedSolution";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-status mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gdet
