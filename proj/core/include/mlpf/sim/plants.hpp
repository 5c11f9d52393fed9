#pragma once

#include "mlpf/control/bang_bang.hpp"
#include "mlpf/core/plant.hpp"

namespace mlpf::sim {

/// Parameters of the bundled plants. Defaults reproduce the production-line
/// experiment (D = 2, N = 80, dt = 0.0025).
struct ModelParams {
  // production line
  double processing_time = 0.25;  // P
  double tau = 0.2;
  double rework = 0.1;    // A
  double friction = 1.0;  // C, constant along the line
  double alpha = 0.5;
  double mu = 0.8;
  double q_max = 1.0;
  double q_star = 0.3;
  double b_max = 1.2;
  double s_offset = 20.0;

  // scalar example plants
  double ode_a = 1.0;
  double ode_b = 1.0;
  double ode_cubic = 0.0;
  double gain_k = 3.0;
  double speed_min = 1.0;
  double speed_max = 1.0;
  double recycle = 0.0;
};

[[nodiscard]] control::BangBangGains production_gains(const ModelParams& p);

/// Buffer + conveyor: f(Q, q) = alpha q - min(Q, mu), lambda(R) = 1/(P(1+R)),
/// g(x, v) = A (D - x) v, c = -C, kappa = softened bang-bang. Flux boundary.
[[nodiscard]] PlantModel make_production_line(const ModelParams& p, double length,
                                              const control::BangBangGains& gains);

/// f = aX + bU, kappa = -kX, g(x, v) = recycle v, c = 0,
/// lambda(z) = v_min + (v_max - v_min)/(1 + z^2). Value boundary.
[[nodiscard]] PlantModel make_section2(const ModelParams& p, double length);

/// f = aX - cubic X^3 + b q, kappa = -kX, g(x, v) = recycle (1 + x) tanh(v),
/// c = -friction, same speed law as make_section2. Flux boundary.
[[nodiscard]] PlantModel make_section3(const ModelParams& p, double length);

}  // namespace mlpf::sim
