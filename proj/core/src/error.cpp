#include "ncspectra/error.hpp"

namespace ncspectra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidFamily: return "invalid_family";
    case ErrorCode::NonConfining: return "non_confining";
    case ErrorCode::DegenerateDeformation: return "degenerate_deformation";
    case ErrorCode::SingularAttraction: return "singular_attraction";
    case ErrorCode::ConstraintViolated: return "constraint_violated";
    case ErrorCode::UnsupportedDegree: return "unsupported_degree";
    case ErrorCode::NoRealSolution: return "no_real_solution";
    case ErrorCode::DivisionByZeroNu: return "division_by_zero_nu";
    case ErrorCode::ComplexRoots: return "complex_roots";
    case ErrorCode::NotConverged: return "not_converged";
    case ErrorCode::NoBoundState: return "no_bound_state";
    case ErrorCode::InvalidGrid: return "invalid_grid";
    case ErrorCode::OracleUnavailable: return "oracle_unavailable";
    case ErrorCode::ConfigError: return "config_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace ncspectra
