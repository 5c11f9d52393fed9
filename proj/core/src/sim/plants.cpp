#include "mlpf/sim/plants.hpp"

#include <algorithm>
#include <cmath>

#include "mlpf/core/errors.hpp"

namespace mlpf::sim {

namespace {

std::function<double(double)> bounded_speed(double v_min, double v_max) {
  return [v_min, v_max](double z) { return v_min + (v_max - v_min) / (1.0 + z * z); };
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw Error(ErrorKind::Domain, std::string(what) + " must be positive");
}

void check_scalar_params(const ModelParams& p) {
  require_positive(p.speed_min, "speed_min");
  if (!(p.speed_max >= p.speed_min)) {
    throw Error(ErrorKind::Domain, "speed_max must be at least speed_min");
  }
  if (p.tau < 0.0) throw Error(ErrorKind::Domain, "tau must be non-negative");
}

}  // namespace

control::BangBangGains production_gains(const ModelParams& p) {
  return control::make_gains(p.q_star, p.mu, p.alpha, p.b_max, p.q_max, p.s_offset);
}

PlantModel make_production_line(const ModelParams& p, double length,
                                const control::BangBangGains& gains) {
  require_positive(p.processing_time, "processing_time");
  require_positive(p.rework, "rework");
  require_positive(p.alpha, "alpha");
  require_positive(p.mu, "mu");
  require_positive(p.q_max, "q_max");
  if (p.friction < 0.0) throw Error(ErrorKind::Domain, "friction must be non-negative");
  if (p.tau < 0.0) throw Error(ErrorKind::Domain, "tau must be non-negative");

  PlantModel m;
  m.name = "production_line";
  m.boundary = BoundaryKind::Flux;
  const double alpha = p.alpha;
  const double mu = p.mu;
  const double proc = p.processing_time;
  m.f = [alpha, mu](double q, double flux) { return alpha * flux - std::min(q, mu); };
  m.speed = [proc](double r) { return 1.0 / (proc * (1.0 + r)); };
  m.speed_max = 1.0 / proc;
  m.speed_min = 1.0 / (proc * (1.0 + p.tau * p.q_max));
  m.nominal = [gains](double q) { return control::bang_bang(q, gains); };
  m.nominal_vanishes_at_origin = false;

  const double a = p.rework;
  m.source = [a, length](double x, double v) { return a * (length - x) * v; };
  m.source_lipschitz = a * length;
  m.has_source = true;
  const double c = p.friction;
  m.friction = [c](double) { return -c; };
  m.has_friction = c != 0.0;
  return m;
}

PlantModel make_section2(const ModelParams& p, double /*length*/) {
  check_scalar_params(p);
  PlantModel m;
  m.name = "section2";
  m.boundary = BoundaryKind::Value;
  const double a = p.ode_a;
  const double b = p.ode_b;
  const double k = p.gain_k;
  m.f = [a, b](double x, double u) { return a * x + b * u; };
  m.speed = bounded_speed(p.speed_min, p.speed_max);
  m.speed_min = p.speed_min;
  m.speed_max = p.speed_max;
  m.nominal = [k](double x) { return -k * x; };

  const double r = p.recycle;
  m.source = [r](double, double v) { return r * v; };
  m.source_lipschitz = std::abs(r);
  m.has_source = r != 0.0;
  m.friction = [](double) { return 0.0; };
  m.has_friction = false;
  return m;
}

PlantModel make_section3(const ModelParams& p, double length) {
  check_scalar_params(p);
  PlantModel m;
  m.name = "section3";
  m.boundary = BoundaryKind::Flux;
  const double a = p.ode_a;
  const double b = p.ode_b;
  const double cubic = p.ode_cubic;
  const double k = p.gain_k;
  m.f = [a, b, cubic](double x, double q) { return a * x - cubic * x * x * x + b * q; };
  m.speed = bounded_speed(p.speed_min, p.speed_max);
  m.speed_min = p.speed_min;
  m.speed_max = p.speed_max;
  m.nominal = [k](double x) { return -k * x; };

  const double r = p.recycle;
  m.source = [r](double x, double v) { return r * (1.0 + x) * std::tanh(v); };
  m.source_lipschitz = std::abs(r) * (1.0 + length);
  m.has_source = r != 0.0;
  const double c = p.friction;
  m.friction = [c](double) { return -c; };
  m.has_friction = c != 0.0;
  return m;
}

}  // namespace mlpf::sim
