#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncspectra {

enum class ErrorCode {
  InvalidFamily,
  NonConfining,
  DegenerateDeformation,
  SingularAttraction,
  ConstraintViolated,
  UnsupportedDegree,
  NoRealSolution,
  DivisionByZeroNu,
  ComplexRoots,
  NotConverged,
  NoBoundState,
  InvalidGrid,
  OracleUnavailable,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that front ends can turn it into a structured status instead of text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ncspectra
