#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brannulus {

enum class ErrorCode {
  ZeroLeadingCoefficient,
  DegreeTooSmall,
  NoConvergence,
  ZeroInput,
  EmptyCriticalValues,
  ZeroCriticalValue,
  PathTooCloseToCriticalValue,
  StepUnderflow,
  EndpointMatchAmbiguous,
  InfinityIndexUnstable,
  DescentStalled,
  PointTooCloseToCurve,
  WindingInconsistent,
  ChainNotMonotone,
  LabelMismatch,
  ProductNotDCycle,
  CompatibilityViolation,
  UnroutablePath,
  TransitivityFailure,
  MissingTraces,
  DistinctRootsRequired,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type; the code is
// what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace brannulus
