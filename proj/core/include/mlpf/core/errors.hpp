#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlpf {

/// Failure categories shared by every module. The CLI prints the kind name
/// verbatim in its single-line error report.
enum class ErrorKind {
  Range,                // query outside the stored span
  Domain,               // argument outside the mathematical domain
  NonConvergence,       // inner fixed-point iteration exceeded its cap
  SpeedBoundViolation,  // transport speed left its declared bounds
  NotYetReachable,      // characteristic originates before recorded data
  NoPositiveRoot,       // gain equation has no strictly positive root
  CFLViolation,         // time step too large for the upwind scheme
  NonFinite,            // simulation produced NaN/Inf
  Config,               // malformed or unknown configuration entry
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mlpf
