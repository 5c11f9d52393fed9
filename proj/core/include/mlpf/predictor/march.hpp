#pragma once

#include <cstddef>
#include <span>

#include "mlpf/core/grid.hpp"
#include "mlpf/core/history.hpp"
#include "mlpf/core/plant.hpp"

namespace mlpf::predictor {

/// The predictor layers at one time instant.
///  p1(x)    forecast of X(sigma(x))
///  p2(x)    forecast of the effective outlet value u(0, sigma(x))
///  p3(x)    forecast of the window integral ending at sigma(x)
///  sigma(x) time at which the characteristic through (x, t) reaches x = 0
///  kernel_col(y) = K(D, y, t)
struct PredictorBundle {
  double time = 0.0;
  SpatialProfile p1;
  SpatialProfile p2;
  SpatialProfile p3;
  SpatialProfile sigma;
  SpatialProfile kernel_col;
  /// Actuator profile the bundle is consistent with. For bundles produced by
  /// close_boundary() the last node holds the closed boundary value.
  SpatialProfile actuator;
  int max_inner_iterations = 0;

  explicit PredictorBundle(const Grid& grid)
      : p1(grid), p2(grid), p3(grid), sigma(grid), kernel_col(grid, 1.0), actuator(grid) {}

  [[nodiscard]] const Grid& grid() const noexcept { return p1.grid(); }
  /// K(D, D, t).
  [[nodiscard]] double kernel_diag() const { return kernel_col.back(); }
};

struct MarchOptions {
  double tolerance = 1e-12;  // max-norm, scaled by max(1, |value|)
  int max_iterations = 50;
};

/// Forward predictors from the actuator state u(., t): the coupled Volterra
/// system is marched node by node with trapezoid quadrature, each node's
/// implicit diagonal term resolved by fixed-point iteration.
/// Throws NonConvergence or SpeedBoundViolation.
[[nodiscard]] PredictorBundle march_predictors(const PlantModel& plant, const Grid& grid,
                                               double state, const HistoryBuffer& hist,
                                               const SpatialProfile& actuator, double t,
                                               const MarchOptions& opts = {});

/// Backward predictors (pi layers) driven by a target-state profile w: the
/// p2 equation is replaced by pi2 = (w + kappa(pi1)) / s(pi3).
/// `actuator` of the result holds the profile recovered by inverting the
/// engine's own p2 quadrature; verify::inverse_transform_u evaluates the
/// inverse transformation independently through kernel L.
[[nodiscard]] PredictorBundle march_backward_predictors(const PlantModel& plant, const Grid& grid,
                                                        double state, const HistoryBuffer& hist,
                                                        const SpatialProfile& target, double t,
                                                        const MarchOptions& opts = {});

struct ClosedBoundary {
  PredictorBundle bundle;
  /// u(D, t) making the target state vanish at x = D.
  double boundary_value;
};

/// Marches nodes 0..N-1 from `actuator` and closes node N with w(D,t) = 0,
/// i.e. p2(D) = kappa(p1(D)) / s(p3(D)). The recovered u(D,t) equals the
/// boundary value implied by the predictor-feedback law on this bundle.
[[nodiscard]] ClosedBoundary close_boundary(const PlantModel& plant, const Grid& grid,
                                            double state, const HistoryBuffer& hist,
                                            const SpatialProfile& actuator, double t,
                                            const MarchOptions& opts = {});

/// Location of y* = inf{ y : sigma(y) >= target } inside a strictly
/// increasing nodal sigma profile: y* = (cell + theta) * dx.
struct Cutoff {
  std::size_t cell = 0;
  double theta = 0.0;
};

/// Monotone search + linear interpolation over sigma[0..last]; requires
/// sigma[0] < target <= sigma[last].
[[nodiscard]] Cutoff locate_cutoff(std::span<const double> sigma, std::size_t last, double target);

/// y* for node `x_index`: 0 when sigma(x) - tau <= t, otherwise the interpolated
/// position where sigma first reaches sigma(x) - tau.
[[nodiscard]] double find_gamma_cutoff(const SpatialProfile& sigma, std::size_t x_index, double tau,
                                       double t);

}  // namespace mlpf::predictor
