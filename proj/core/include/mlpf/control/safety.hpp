#pragma once

#include <vector>

namespace mlpf::control {

/// Inputs of the positivity certificate for the production line.
struct SafetyInputs {
  double rework = 0.0;          // A
  double friction_max = 0.0;    // sup C(x), must be >= 0
  double processing_time = 0.0; // P
  double tau = 0.0;
  double q_max = 0.0;
  double length = 0.0;          // D
  double b_max = 0.0;
  double rho0_max = 0.0;
  double q0 = 0.0;
  /// Nominal inputs whose minimum is u_lower: Q*/alpha, u(Q*, Q(0)), u(Q*, p1(D, 0)).
  std::vector<double> nominal_values;
};

/// rho_bar = max{rho0_max, P (1 + tau Q_max)^2 B_max}
/// M       = rho_bar exp(2 A P D^2 (1 + tau Q_max))
/// satisfied iff M / u_lower < 2 / (A D P^2 (1 + tau Q_max)).
struct SafetyCertificate {
  double lhs = 0.0;
  double rhs = 0.0;
  double m = 0.0;
  double rho_bar = 0.0;
  double u_lower = 0.0;
  bool satisfied = false;
};

/// DomainError unless A > 0, sup C >= 0, P, D > 0, 0 <= Q0 < Q_max and u_lower > 0.
[[nodiscard]] SafetyCertificate safety_check(const SafetyInputs& in);

}  // namespace mlpf::control
