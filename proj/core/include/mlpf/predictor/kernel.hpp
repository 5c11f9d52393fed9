#pragma once

#include <cstddef>
#include <vector>

#include "mlpf/core/grid.hpp"
#include "mlpf/core/plant.hpp"

namespace mlpf::predictor {

/// Trapezoid of c(x1 - z) / lambda(p3(z)) over z in [0, x2] on p3's grid;
/// a partial last cell uses the linearly interpolated p3. Requires
/// 0 <= x2 <= x1 <= D, else DomainError.
[[nodiscard]] double kernel_exponent(const PlantModel& plant, const SpatialProfile& p3, double x1,
                                     double x2);

/// K(x1, x2) = exp(+kernel_exponent) on the forward predictor p3.
[[nodiscard]] double kernel_K(const PlantModel& plant, const SpatialProfile& p3, double x1,
                              double x2);

/// L(x1, x2) = exp(-kernel_exponent) on the backward predictor pi3.
[[nodiscard]] double kernel_L(const PlantModel& plant, const SpatialProfile& pi3, double x1,
                              double x2);

/// Cumulative exponents E_j = int_0^{y_j} c(x_i - z)/lambda(p3(z)) dz for
/// j = 0..i, so that K(x_i, y_j) = exp(E_j) and L(x_i, y_j) = exp(-E_j).
[[nodiscard]] std::vector<double> kernel_row_exponents(const PlantModel& plant,
                                                       const SpatialProfile& p3, std::size_t i);

}  // namespace mlpf::predictor
