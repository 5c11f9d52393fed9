#include "mlpf/predictor/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::predictor {

double kernel_exponent(const PlantModel& plant, const SpatialProfile& p3, double x1, double x2) {
  const Grid& grid = p3.grid();
  const double tol = 1e-12 * grid.length();
  if (x2 > x1 + tol || x2 < -tol || x1 > grid.length() + tol) {
    std::ostringstream os;
    os << "kernel arguments must satisfy 0 <= x2 <= x1 <= D (got x1 = " << x1 << ", x2 = " << x2
       << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (!plant.has_friction || x2 <= 0.0) return 0.0;

  const double dx = grid.dx();
  auto integrand = [&](double z, double p3z) { return plant.c(x1 - z) / plant.lambda(p3z); };

  auto whole = static_cast<std::size_t>(std::floor(x2 / dx + 1e-9));
  whole = std::min(whole, grid.nodes() - 1);
  double sum = 0.0;
  double e_prev = integrand(0.0, p3[0]);
  for (std::size_t j = 1; j <= whole; ++j) {
    const double e_j = integrand(grid.node(j), p3[j]);
    sum += 0.5 * dx * (e_prev + e_j);
    e_prev = e_j;
  }
  const double rest = x2 - grid.node(whole);
  if (rest > 1e-12 * dx) {
    sum += 0.5 * rest * (e_prev + integrand(x2, p3.at(x2)));
  }
  return sum;
}

double kernel_K(const PlantModel& plant, const SpatialProfile& p3, double x1, double x2) {
  return std::exp(kernel_exponent(plant, p3, x1, x2));
}

double kernel_L(const PlantModel& plant, const SpatialProfile& pi3, double x1, double x2) {
  return std::exp(-kernel_exponent(plant, pi3, x1, x2));
}

std::vector<double> kernel_row_exponents(const PlantModel& plant, const SpatialProfile& p3,
                                         std::size_t i) {
  std::vector<double> row(i + 1, 0.0);
  if (!plant.has_friction) return row;
  const Grid& grid = p3.grid();
  const double dx = grid.dx();
  const double x = grid.node(i);
  double e_prev = plant.c(x) / plant.lambda(p3[0]);
  for (std::size_t j = 1; j <= i; ++j) {
    const double e_j = plant.c(x - grid.node(j)) / plant.lambda(p3[j]);
    row[j] = row[j - 1] + 0.5 * dx * (e_prev + e_j);
    e_prev = e_j;
  }
  return row;
}

}  // namespace mlpf::predictor
