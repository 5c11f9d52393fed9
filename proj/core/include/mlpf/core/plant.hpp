#pragma once

#include <functional>
#include <string>

#include "mlpf/core/grid.hpp"

namespace mlpf {

/// How the boundary input enters the transport equation.
///  - Value: u(D,t) = U(t); the ODE is driven by u(0,t).
///  - Flux:  U(t) = lambda(R(t)) u(D,t); the ODE is driven by lambda(R(t)) u(0,t).
enum class BoundaryKind { Value, Flux };

/// Scalar ODE actuated through a transport PDE with state-dependent speed.
///
///   dX/dt     = f(X, q),                      q = s(R) u(0,t)
///   du/dt     = lambda(R) du/dx + g(x, u(0,t)) + c(x) u(x,t)
///   R(t)      = integral of X over [t - tau, t]
///
/// with s(R) = lambda(R) for Flux plants and 1 for Value plants.
struct PlantModel {
  std::string name;
  BoundaryKind boundary = BoundaryKind::Flux;

  std::function<double(double state, double input)> f;
  std::function<double(double window_integral)> speed;
  double speed_min = 1.0;
  double speed_max = 1.0;
  std::function<double(double state)> nominal;  // kappa

  /// g(x, v); must vanish at v = 0.
  std::function<double(double x, double v)> source;
  double source_lipschitz = 0.0;
  /// c(x); negative values model losses.
  std::function<double(double x)> friction;

  /// When false the corresponding term is known to vanish identically and
  /// the O(N^2) quadratures that involve it are skipped.
  bool has_source = false;
  bool has_friction = false;

  /// lambda(z) with the declared-bounds guard; throws SpeedBoundViolation.
  [[nodiscard]] double lambda(double z) const;

  /// s(z): lambda(z) for Flux plants, 1 for Value plants.
  [[nodiscard]] double flux_scale(double z) const {
    return boundary == BoundaryKind::Flux ? lambda(z) : 1.0;
  }

  [[nodiscard]] double g(double x, double v) const { return has_source ? source(x, v) : 0.0; }
  [[nodiscard]] double c(double x) const { return has_friction ? friction(x) : 0.0; }

  /// False for plants regulated to a nonzero setpoint (the production line,
  /// whose nominal law saturates at B_max for an empty buffer).
  bool nominal_vanishes_at_origin = true;

  /// Spot-checks the declared invariants: speed bounds on [z_lo, z_hi],
  /// g(x, 0) = 0 on the grid nodes, kappa(0) = 0 where declared. Throws
  /// DomainError or SpeedBoundViolation with the failing probe.
  void validate(const Grid& grid, double z_lo, double z_hi, int probes = 257) const;
};

}  // namespace mlpf
