#include "schemeforge/errors.hpp"

namespace schemeforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::NoSecondOrderTerms: return "NoSecondOrderTerms";
    case ErrorCode::DegenerateAllZero: return "DegenerateAllZero";
    case ErrorCode::NonConstantFirstOrderCoefficients:
      return "NonConstantFirstOrderCoefficients";
    case ErrorCode::NoDifferentialTerms: return "NoDifferentialTerms";
    case ErrorCode::NonDivisibleExtent: return "NonDivisibleExtent";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::MultipleCrossings: return "MultipleCrossings";
    case ErrorCode::NegativeArea: return "NegativeArea";
    case ErrorCode::UnsupportedProblemFamily: return "UnsupportedProblemFamily";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string Error::compose(ErrorCode code, const std::string& message,
                           const std::string& path) {
  std::string out(to_string(code));
  if (!path.empty()) out += " at '" + path + "'";
  out += ": " + message;
  return out;
}

}  // namespace schemeforge
