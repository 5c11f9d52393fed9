#pragma once

#include "mlpf/core/grid.hpp"
#include "mlpf/core/history.hpp"
#include "mlpf/core/plant.hpp"
#include "mlpf/predictor/march.hpp"

namespace mlpf::verify {

/// Backstepping transform of the actuator state u through the forward
/// predictors. With K evaluated row by row from kernel_row_exponents:
///   w(x) = s(p3(x)) [ K(x,x) u(x) + int_0^x K(x,x)/K(x,y) g(x-y, p2(y))/lambda(p3(y)) dy ]
///          - kappa(p1(x)),
/// s = lambda for Flux plants and 1 for Value plants.
[[nodiscard]] SpatialProfile transform_w(const PlantModel& plant,
                                         const predictor::PredictorBundle& bundle,
                                         const SpatialProfile& u);

/// Inverse transform: marches the backward predictors from w and returns
///   u(x) = L(x,x) pi2(x) - int_0^x L(x,y) g(x-y, pi2(y))/lambda(pi3(y)) dy,
/// pi2 = (w + kappa(pi1)) / s(pi3).
[[nodiscard]] SpatialProfile inverse_transform_u(const PlantModel& plant,
                                                 const SpatialProfile& w, double state,
                                                 const HistoryBuffer& hist, double t,
                                                 const predictor::MarchOptions& opts = {});

}  // namespace mlpf::verify
