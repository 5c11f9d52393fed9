#include "mlpf/verify/target.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlpf/predictor/kernel.hpp"
#include "mlpf/verify/transform.hpp"

namespace mlpf::verify {

double target_explicit(const SpatialProfile& w0, const predictor::CharacteristicMap& map,
                       double x, double t) {
  const double foot = x + map.xi_at(t);
  const double length = w0.grid().length();
  if (foot > length * (1.0 + 1e-12)) return 0.0;
  return w0.at(std::min(foot, length));
}

TargetDiagnostics target_diagnostics(const PlantModel& plant,
                                     const predictor::PredictorBundle& bundle,
                                     const SpatialProfile& u) {
  TargetDiagnostics d{transform_w(plant, bundle, u), 0.0, 0.0};
  d.w_boundary = d.w.back();
  d.sup_w = d.w.max_abs();
  return d;
}

P2Bound p2_bound(const PlantModel& plant, const predictor::PredictorBundle& bundle,
                 const SpatialProfile& u) {
  P2Bound b;
  if (plant.has_friction) {
    double k1 = 0.0;
    double k2 = 0.0;
    for (std::size_t i = 0; i < bundle.grid().nodes(); ++i) {
      const auto row = predictor::kernel_row_exponents(plant, bundle.p3, i);
      k1 = std::max(k1, std::exp(row[i]));
      for (std::size_t j = 0; j <= i; ++j) k2 = std::max(k2, std::exp(row[i] - row[j]));
    }
    b.k1 = k1;
    b.k2 = k2;
  }
  const double growth =
      std::exp(b.k2 * plant.source_lipschitz * bundle.grid().length() / plant.speed_min);
  b.sup_p2 = bundle.p2.max_abs();
  b.bound = b.k1 * u.max_abs() * growth;
  b.holds = b.sup_p2 <= b.bound * (1.0 + 1e-12) + 1e-14;
  return b;
}

double refinement_ratio(double coarse_error, double fine_error) {
  if (fine_error == 0.0) return std::numeric_limits<double>::infinity();
  return coarse_error / fine_error;
}

}  // namespace mlpf::verify
