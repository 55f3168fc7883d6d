#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schemeforge {

enum class ErrorCode {
  // problem_spec
  SyntaxError,
  ValidationError,
  UnsupportedFeature,
  // classifier
  NoSecondOrderTerms,
  DegenerateAllZero,
  NonConstantFirstOrderCoefficients,
  NoDifferentialTerms,
  // mesh / discretisation
  NonDivisibleExtent,
  UnsupportedOrder,
  SingularJacobian,
  SizeMismatch,
  InvalidArgument,
  // time integration
  NonFiniteState,
  NewtonDivergence,
  // metrics
  NoCrossing,
  MultipleCrossings,
  NegativeArea,
  // drivers
  UnsupportedProblemFamily,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. `path()` holds the offending key
/// path for input errors (e.g. `equations[0].terms[2].order`) or the field
/// name for classification errors; empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(compose(code, message, path)),
        code_(code),
        path_(std::move(path)) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  static std::string compose(ErrorCode code, const std::string& message,
                             const std::string& path);

  ErrorCode code_;
  std::string path_;
};

}  // namespace schemeforge
