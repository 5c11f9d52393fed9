#include "mlpf/verify/transform.hpp"

#include <cmath>

#include "mlpf/predictor/kernel.hpp"

namespace mlpf::verify {

using predictor::PredictorBundle;

namespace {

// Trapezoid over y_j <= x_i of weight(j) g(x_i - y_j, v_j)/lambda(z_j), with weight(j)
// = exp(E_i - E_j) = K(x,x)/K(x,y) for the forward transform and exp(-E_j) = L(x,y)
// for the inverse.
double source_integral(const PlantModel& plant, const SpatialProfile& v, const SpatialProfile& z,
                       const std::vector<double>& row, std::size_t i, bool inverse) {
  if (!plant.has_source || i == 0) return 0.0;
  const Grid& grid = v.grid();
  const double x = grid.node(i);
  double sum = 0.0;
  for (std::size_t j = 0; j <= i; ++j) {
    const double weight = (j == 0 || j == i) ? 0.5 * grid.dx() : grid.dx();
    const double ratio = inverse ? std::exp(-row[j]) : std::exp(row[i] - row[j]);
    sum += weight * ratio * plant.g(x - grid.node(j), v[j]) / plant.lambda(z[j]);
  }
  return sum;
}

}  // namespace

SpatialProfile transform_w(const PlantModel& plant, const PredictorBundle& bundle,
                           const SpatialProfile& u) {
  const Grid& grid = u.grid();
  SpatialProfile w(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const auto row = predictor::kernel_row_exponents(plant, bundle.p3, i);
    const double kxx = std::exp(row[i]);
    const double integral = source_integral(plant, bundle.p2, bundle.p3, row, i, false);
    w[i] = plant.flux_scale(bundle.p3[i]) * (kxx * u[i] + integral) -
           plant.nominal(bundle.p1[i]);
  }
  return w;
}

SpatialProfile inverse_transform_u(const PlantModel& plant, const SpatialProfile& w,
                                   double state, const HistoryBuffer& hist, double t,
                                   const predictor::MarchOptions& opts) {
  const Grid& grid = w.grid();
  const PredictorBundle pi =
      predictor::march_backward_predictors(plant, grid, state, hist, w, t, opts);
  SpatialProfile u(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const auto row = predictor::kernel_row_exponents(plant, pi.p3, i);
    const double lxx = std::exp(-row[i]);
    u[i] = lxx * pi.p2[i] - source_integral(plant, pi.p2, pi.p3, row, i, true);
  }
  return u;
}

}  // namespace mlpf::verify
