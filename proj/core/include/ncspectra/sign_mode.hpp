#pragma once

#include <string_view>

namespace ncspectra {

/// Literal reproduces the published formulas verbatim, including their sign
/// and index slips; Normalizable uses the rederived equations whose solutions
/// are square-integrable. The CLI spells these "paper" and "rederived".
enum class SignMode { Literal, Normalizable };

constexpr std::string_view to_string(SignMode mode) noexcept {
  return mode == SignMode::Literal ? "paper" : "rederived";
}

}  // namespace ncspectra
