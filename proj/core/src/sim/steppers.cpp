#include "mlpf/sim/steppers.hpp"

#include <algorithm>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::sim {

void check_cfl(double speed_max, double dt, double dx) {
  if (!(dt > 0.0)) throw Error(ErrorKind::Domain, "time step must be positive");
  if (speed_max * dt > dx * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "CFL condition violated: speed " << speed_max << " * dt " << dt << " = "
       << speed_max * dt << " exceeds dx = " << dx;
    throw Error(ErrorKind::CFLViolation, os.str());
  }
}

SpatialProfile pde_step(const SpatialProfile& u, double speed, const SourceFn& source,
                        double boundary_value, double dt) {
  const Grid& grid = u.grid();
  check_cfl(speed, dt, grid.dx());
  const double r = speed * dt / grid.dx();
  const std::size_t last = grid.nodes() - 1;
  const double outlet = u[0];
  SpatialProfile next(grid);
  for (std::size_t i = 0; i < last; ++i) {
    double v = (1.0 - r) * u[i] + r * u[i + 1];
    if (source) v += dt * source(grid.node(i), outlet, u[i]);
    next[i] = v;
  }
  next[last] = boundary_value;
  return next;
}

double ode_step_general(double state, double input,
                        const std::function<double(double, double)>& f, double dt) {
  return state + dt * f(state, input);
}

double buffer_step(double q, double phi_out, double alpha, double mu, double dt) {
  return q + dt * (alpha * phi_out - std::min(q, mu));
}

}  // namespace mlpf::sim
