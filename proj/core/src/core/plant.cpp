#include "mlpf/core/plant.hpp"

#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf {

double PlantModel::lambda(double z) const {
  const double v = speed(z);
  const double tol = 1e-12 * speed_max;
  if (!(v >= speed_min - tol && v <= speed_max + tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "transport speed " << v << " at window integral " << z << " outside declared bounds ["
       << speed_min << ", " << speed_max << "]";
    throw Error(ErrorKind::SpeedBoundViolation, os.str());
  }
  return v;
}

void PlantModel::validate(const Grid& grid, double z_lo, double z_hi, int probes) const {
  if (!(speed_min > 0.0) || !(speed_max >= speed_min)) {
    throw Error(ErrorKind::Domain, name + ": speed bounds must satisfy 0 < min <= max");
  }
  for (int k = 0; k < probes; ++k) {
    const double z = z_lo + (z_hi - z_lo) * k / std::max(1, probes - 1);
    (void)lambda(z);
  }
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double x = grid.node(i);
    if (g(x, 0.0) != 0.0) {
      std::ostringstream os;
      os << name << ": source g(" << x << ", 0) = " << g(x, 0.0) << " must vanish";
      throw Error(ErrorKind::Domain, os.str());
    }
  }
  if (nominal_vanishes_at_origin && nominal(0.0) != 0.0) {
    throw Error(ErrorKind::Domain, name + ": nominal law must satisfy kappa(0) = 0");
  }
}

}  // namespace mlpf
