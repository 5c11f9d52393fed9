#pragma once

#include <functional>

#include "mlpf/control/bang_bang.hpp"
#include "mlpf/core/plant.hpp"
#include "mlpf/predictor/march.hpp"

namespace mlpf::control {

/// Value-boundary law:
///   U = kappa(p1(D)) - int_0^D g_lin(D - y) p2(y) / lambda(p3(y)) dy.
[[nodiscard]] double control_linear_recycle(const PlantModel& plant,
                                            const predictor::PredictorBundle& bundle,
                                            const std::function<double(double)>& g_lin);

/// Flux-boundary law:
///   U = lambda(p3(0)) kappa(p1(D)) / (lambda(p3(D)) K(D,D))
///       - int_0^D lambda(p3(0)) g(D - y, p2(y)) / (K(D,y) lambda(p3(y))) dy.
[[nodiscard]] double control_flux(const PlantModel& plant,
                                  const predictor::PredictorBundle& bundle);

/// Picks the law matching plant.boundary. Value plants use g_lin(x) = g(x, 1).
[[nodiscard]] double apply_control_law(const PlantModel& plant,
                                       const predictor::PredictorBundle& bundle);

/// Production-line law written directly in buffer variables, with the rework
/// integrand A P y p2 (1 + p3). It differs from control_flux on the same
/// bundle by a factor P in the compensation term; kept for cross-checking.
struct ProductionLawTerms {
  double nominal = 0.0;
  double compensation = 0.0;
  [[nodiscard]] double value() const { return nominal - compensation; }
};

[[nodiscard]] ProductionLawTerms production_control_literal(
    const predictor::PredictorBundle& bundle, const BangBangGains& gains, double rework,
    double processing_time);

}  // namespace mlpf::control
