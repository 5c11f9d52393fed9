#include "mlpf/control/safety.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::control {

SafetyCertificate safety_check(const SafetyInputs& in) {
  if (!(in.rework > 0.0)) throw Error(ErrorKind::Domain, "safety check requires A > 0");
  if (in.friction_max < 0.0) throw Error(ErrorKind::Domain, "safety check requires C(x) >= 0");
  if (!(in.processing_time > 0.0) || !(in.length > 0.0) || in.tau < 0.0) {
    throw Error(ErrorKind::Domain, "safety check requires P > 0, D > 0 and tau >= 0");
  }
  if (!(in.q0 >= 0.0 && in.q0 < in.q_max)) {
    std::ostringstream os;
    os << "safety check requires 0 <= Q(0) < Q_max (Q(0) = " << in.q0 << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (in.nominal_values.empty()) {
    throw Error(ErrorKind::Domain, "safety check needs at least one nominal input value");
  }
  SafetyCertificate cert;
  cert.u_lower = *std::min_element(in.nominal_values.begin(), in.nominal_values.end());
  if (!(cert.u_lower > 0.0)) {
    std::ostringstream os;
    os << "safety check: minimum nominal input " << cert.u_lower << " is not positive";
    throw Error(ErrorKind::Domain, os.str());
  }
  const double congestion = 1.0 + in.tau * in.q_max;
  const double p = in.processing_time;
  cert.rho_bar = std::max(in.rho0_max, p * congestion * congestion * in.b_max);
  cert.m = cert.rho_bar * std::exp(2.0 * in.rework * p * in.length * in.length * congestion);
  cert.lhs = cert.m / cert.u_lower;
  cert.rhs = 2.0 / (in.rework * in.length * p * p * congestion);
  cert.satisfied = cert.lhs < cert.rhs;
  return cert;
}

}  // namespace mlpf::control
