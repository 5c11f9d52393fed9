#pragma once

#include <cmath>

#include "mlpf/core/plant.hpp"

namespace mlpf::testing {

/// Scalar plant with constant speed v, no source, no friction.
inline PlantModel constant_speed_plant(double v, BoundaryKind kind = BoundaryKind::Flux) {
  PlantModel m;
  m.name = "constant_speed";
  m.boundary = kind;
  m.f = [](double, double) { return 0.0; };
  m.speed = [v](double) { return v; };
  m.speed_min = v;
  m.speed_max = v;
  m.nominal = [](double x) { return -x; };
  m.source = [](double, double) { return 0.0; };
  m.friction = [](double) { return 0.0; };
  return m;
}

/// Trapezoid of fn over [a, b] with n cells, computed independently of the library.
template <class F>
double trapezoid(F&& fn, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (fn(a) + fn(b));
  for (int i = 1; i < n; ++i) s += fn(a + i * h);
  return s * h;
}

}  // namespace mlpf::testing
