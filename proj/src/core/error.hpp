#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levymult {

enum class ErrorCode {
  AtomAtOrigin,
  NonIntegrableMeasure,
  ShapeMismatch,
  ModulatorExceedsOne,
  ModulatorUndefinedOnSupport,
  QuadratureNotConverged,
  EpsTooLarge,
  RequiresFiniteMeasure,
  RequiresEqualMatrices,
  DegenerateDenominator,
  KNormExceedsOne,
  ZeroFrequencyVector,
  AlphaOutOfRange,
  ZeroCoordinate,
  GridMismatch,
  SymbolBoundViolated,
  PlancherelMismatch,
  TraceMismatch,
  StepTooCoarse,
  Unsupported,
  InvalidArgument,
  ParseError,
  ValidationError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AtomAtOrigin: return "AtomAtOrigin";
    case ErrorCode::NonIntegrableMeasure: return "NonIntegrableMeasure";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ModulatorExceedsOne: return "ModulatorExceedsOne";
    case ErrorCode::ModulatorUndefinedOnSupport: return "ModulatorUndefinedOnSupport";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::RequiresFiniteMeasure: return "RequiresFiniteMeasure";
    case ErrorCode::RequiresEqualMatrices: return "RequiresEqualMatrices";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::KNormExceedsOne: return "KNormExceedsOne";
    case ErrorCode::ZeroFrequencyVector: return "ZeroFrequencyVector";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SymbolBoundViolated: return "SymbolBoundViolated";
    case ErrorCode::PlancherelMismatch: return "PlancherelMismatch";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Non-fatal diagnostics (quadrature node doubling, near-singular branches).
// The default sink writes to stderr; tests and the C API may redirect it.
using WarningSink = void (*)(std::string_view);
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace levymult
