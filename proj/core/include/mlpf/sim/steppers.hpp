#pragma once

#include <functional>

#include "mlpf/core/grid.hpp"

namespace mlpf::sim {

/// Source term s(x, u(0,t), u(x,t)) of the transport equation.
using SourceFn = std::function<double(double x, double u_outlet, double u_local)>;

/// One explicit step of du/dt = speed du/dx + source with right-neighbour
/// upwinding. The source sees the pre-step outlet value u(0). Node N is set to
/// boundary_value afterwards. Throws CFLViolation if speed dt > dx.
[[nodiscard]] SpatialProfile pde_step(const SpatialProfile& u, double speed,
                                      const SourceFn& source, double boundary_value, double dt);

/// X + dt f(X, input).
[[nodiscard]] double ode_step_general(double state, double input,
                                      const std::function<double(double, double)>& f, double dt);

/// Q + dt (alpha phi_out - min(Q, mu)).
[[nodiscard]] double buffer_step(double q, double phi_out, double alpha, double mu, double dt);

/// Throws CFLViolation unless speed_max dt <= dx (relative slack 1e-12).
void check_cfl(double speed_max, double dt, double dx);

}  // namespace mlpf::sim
