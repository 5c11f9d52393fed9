#pragma once

#include <span>
#include <vector>

#include "mlpf/predictor/march.hpp"

namespace mlpf::verify {

/// Constant-delay reference for dX/dt = aX + b U(t - h), h = D/v, U = -k P(t),
///   P(t) = e^{a h} X(t) + int_0^h e^{a (h - s)} b U(t - h + s) ds,
/// with a left Riemann sum on the dt grid, zero input before t = 0 and the
/// same explicit Euler step. Returns X at t_n = n dt, n = 0..round(t_final/dt).
[[nodiscard]] std::vector<double> classical_predictor_reference(double a, double b, double k,
                                                                double v, double length,
                                                                double x0, double dt,
                                                                double t_final);

/// Piecewise-linear value of a sampled series; RangeError outside [times.front(), times.back()].
[[nodiscard]] double interpolate_series(std::span<const double> times,
                                        std::span<const double> values, double t);

/// max_x |p1(x, t0) - X(sigma(x, t0))| with X read from a recorded trajectory.
[[nodiscard]] double predictor_oracle_error(const predictor::PredictorBundle& bundle,
                                            std::span<const double> times,
                                            std::span<const double> states);

}  // namespace mlpf::verify
