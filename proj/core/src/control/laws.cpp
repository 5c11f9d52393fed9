#include "mlpf/control/laws.hpp"

namespace mlpf::control {

using predictor::PredictorBundle;

double control_linear_recycle(const PlantModel& plant, const PredictorBundle& bundle,
                              const std::function<double(double)>& g_lin) {
  const Grid& grid = bundle.grid();
  const std::size_t n = grid.nodes();
  const double length = grid.length();
  double integral = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = (j == 0 || j + 1 == n) ? 0.5 * grid.dx() : grid.dx();
    integral += weight * g_lin(length - grid.node(j)) * bundle.p2[j] / plant.lambda(bundle.p3[j]);
  }
  return plant.nominal(bundle.p1.back()) - integral;
}

double control_flux(const PlantModel& plant, const PredictorBundle& bundle) {
  const Grid& grid = bundle.grid();
  const std::size_t n = grid.nodes();
  const double length = grid.length();
  const double lam0 = plant.lambda(bundle.p3.front());
  const double nominal = lam0 * plant.nominal(bundle.p1.back()) /
                         (plant.lambda(bundle.p3.back()) * bundle.kernel_diag());
  if (!plant.has_source) return nominal;
  double integral = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = (j == 0 || j + 1 == n) ? 0.5 * grid.dx() : grid.dx();
    integral += weight * plant.g(length - grid.node(j), bundle.p2[j]) /
                (bundle.kernel_col[j] * plant.lambda(bundle.p3[j]));
  }
  return nominal - lam0 * integral;
}

double apply_control_law(const PlantModel& plant, const PredictorBundle& bundle) {
  if (plant.boundary == BoundaryKind::Flux) return control_flux(plant, bundle);
  return control_linear_recycle(plant, bundle, [&plant](double x) { return plant.g(x, 1.0); });
}

ProductionLawTerms production_control_literal(const PredictorBundle& bundle,
                                              const BangBangGains& gains, double rework,
                                              double processing_time) {
  const Grid& grid = bundle.grid();
  const std::size_t n = grid.nodes();
  const double inv0 = 1.0 / (1.0 + bundle.p3.front());
  ProductionLawTerms terms;
  terms.nominal = (1.0 + bundle.p3.back()) * bang_bang(bundle.p1.back(), gains) * inv0 /
                  bundle.kernel_diag();
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = (j == 0 || j + 1 == n) ? 0.5 * grid.dx() : grid.dx();
    const double y = grid.node(j);
    terms.compensation += weight * rework * processing_time * y * bundle.p2[j] *
                          (1.0 + bundle.p3[j]) * inv0 / bundle.kernel_col[j];
  }
  return terms;
}

}  // namespace mlpf::control
