#include "mlpf/core/errors.hpp"

namespace mlpf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SpeedBoundViolation: return "SpeedBoundViolation";
    case ErrorKind::NotYetReachable: return "NotYetReachable";
    case ErrorKind::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorKind::CFLViolation: return "CFLViolation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace mlpf
