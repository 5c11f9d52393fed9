#pragma once

#include "mlpf/core/grid.hpp"
#include "mlpf/core/plant.hpp"
#include "mlpf/predictor/characteristics.hpp"
#include "mlpf/predictor/march.hpp"

namespace mlpf::verify {

/// Closed-form target state: w0(x + xi(t)) while x + xi(t) <= D, else 0.
[[nodiscard]] double target_explicit(const SpatialProfile& w0,
                                     const predictor::CharacteristicMap& map, double x, double t);

struct TargetDiagnostics {
  SpatialProfile w;
  double w_boundary = 0.0;
  double sup_w = 0.0;
};

[[nodiscard]] TargetDiagnostics target_diagnostics(const PlantModel& plant,
                                                   const predictor::PredictorBundle& bundle,
                                                   const SpatialProfile& u);

/// sup|p2| <= K1 sup|u| exp(K2 L_g D / lambda_min) with
/// K1 = max_x K(x,x), K2 = max_{y<=x} K(x,x)/K(x,y) on the bundle's p3.
struct P2Bound {
  double k1 = 1.0;
  double k2 = 1.0;
  double sup_p2 = 0.0;
  double bound = 0.0;
  bool holds = true;
};

[[nodiscard]] P2Bound p2_bound(const PlantModel& plant, const predictor::PredictorBundle& bundle,
                               const SpatialProfile& u);

/// coarse / fine error ratio; 1 halving at first order gives about 2.
[[nodiscard]] double refinement_ratio(double coarse_error, double fine_error);

}  // namespace mlpf::verify
