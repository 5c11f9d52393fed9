#pragma once

#include <utility>

namespace mlpf::control {

/// Softened bang-bang law for the buffer dQ/dt = alpha u - min(Q, mu).
///
///   B_l(Q) = Q*/a + (B_max - Q*/a) (1 - e^{L_l (Q - Q*)}) / (1 - e^{-L_l Q*}),      Q < Q*
///   B_r(Q) = Q*/a - (Q*/a)        (1 - e^{-L_r (Q - Q*)}) / (1 - e^{-L_r (Q_max - Q*)}),  Q > Q*
///
/// The branch gains L_l, L_r are chosen so both branches have slope -S at Q*.
struct BangBangGains {
  double q_star = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double b_max = 0.0;
  double q_max = 0.0;
  double slope = 0.0;
  double lambda_left = 0.0;
  double lambda_right = 0.0;

  [[nodiscard]] double setpoint_input() const { return q_star / alpha; }
};

/// Smallest admissible slope: max{ (B_max - Q*/a)/Q*, (Q*/a)/(Q_max - Q*) }.
/// DomainError unless 0 < Q* < Q_max and alpha > 0.
[[nodiscard]] double s_min(double q_star, double alpha, double b_max, double q_max);

/// Strictly positive roots (L_l, L_r) of
///   L_l (B_max - Q*/a) - S (1 - e^{-L_l Q*}) = 0,
///   L_r (Q*/a)         - S (1 - e^{-L_r (Q_max - Q*)}) = 0,
/// by bisection. NoPositiveRoot when S does not exceed a branch's minimum.
[[nodiscard]] std::pair<double, double> solve_gains(double q_star, double alpha, double b_max,
                                                    double q_max, double slope);

/// Residuals of the two gain equations at the given roots.
[[nodiscard]] std::pair<double, double> gain_residuals(const BangBangGains& gains);

/// Validates the setpoint constraints, sets S = S_min + slope_offset and
/// solves the gains.
[[nodiscard]] BangBangGains make_gains(double q_star, double mu, double alpha, double b_max,
                                       double q_max, double slope_offset);

[[nodiscard]] double bang_bang_left(double q, const BangBangGains& gains);
[[nodiscard]] double bang_bang_right(double q, const BangBangGains& gains);

/// u(Q*, Q); Q outside [0, Q_max] is clamped first (see out_of_range).
[[nodiscard]] double bang_bang(double q, const BangBangGains& gains);
[[nodiscard]] bool out_of_range(double q, const BangBangGains& gains);

}  // namespace mlpf::control
