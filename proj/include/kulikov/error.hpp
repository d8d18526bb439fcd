#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kulikov {

enum class ErrorCode {
  SingularPairing,
  ZeroVector,
  InvalidScale,
  UnsupportedRank,
  WindowTooSmall,
  UncertifiedFan,
  ShapeMismatch,
  OddData,
  NotHInvariant,
  NotUnipotent,
  NotNilpotent,
  BadSquare,
  InvalidIndex,
  HypothesisFailed,
  NotMultiplicative,
  DimensionMismatch,
  InvalidInput,
  FormulaMismatch,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::UncertifiedFan: return "UncertifiedFan";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OddData: return "OddData";
    case ErrorCode::NotHInvariant: return "NotHInvariant";
    case ErrorCode::NotUnipotent: return "NotUnipotent";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::BadSquare: return "BadSquare";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotMultiplicative: return "NotMultiplicative";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kulikov
