#include "mlpf/sim/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/control/laws.hpp"
#include "mlpf/core/errors.hpp"
#include "mlpf/core/history.hpp"
#include "mlpf/sim/steppers.hpp"
#include "mlpf/verify/target.hpp"

namespace mlpf::sim {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::OpenLoop: return "open_loop";
    case Scenario::Uncompensated: return "uncompensated";
    case Scenario::Compensated: return "compensated";
  }
  return "unknown";
}

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Section2Linear: return "section2";
    case ModelKind::Section3General: return "section3";
    case ModelKind::ProductionLine: return "production_line";
  }
  return "unknown";
}

std::string to_string(Injection i) { return i == Injection::Density ? "density" : "flux"; }

std::vector<double> RunLog::times() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.t);
  return out;
}

std::vector<double> RunLog::states() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.state);
  return out;
}

PlantModel make_plant(const SimConfig& cfg, std::optional<control::BangBangGains>* gains) {
  switch (cfg.model) {
    case ModelKind::ProductionLine: {
      const auto g = production_gains(cfg.params);
      if (gains != nullptr) *gains = g;
      return make_production_line(cfg.params, cfg.length, g);
    }
    case ModelKind::Section2Linear:
      return make_section2(cfg.params, cfg.length);
    case ModelKind::Section3General:
      return make_section3(cfg.params, cfg.length);
  }
  throw Error(ErrorKind::Config, "unknown model kind");
}

void validate(const SimConfig& cfg, const PlantModel& plant) {
  if (!(cfg.t_final > 0.0)) throw Error(ErrorKind::Config, "t_final must be positive");
  if (!(cfg.dt > 0.0)) throw Error(ErrorKind::Config, "dt must be positive");
  if (cfg.snapshot_every == 0 || cfg.diagnostics_every == 0) {
    throw Error(ErrorKind::Config, "snapshot_every and diagnostics_every must be at least 1");
  }
  const Grid grid(cfg.length, cfg.n_cells);
  check_cfl(plant.speed_max, cfg.dt, grid.dx());
}

namespace {

bool near_capture(const std::vector<double>& times, double t, double dt) {
  return std::any_of(times.begin(), times.end(),
                     [&](double c) { return std::abs(c - t) <= 0.5 * dt * (1.0 + 1e-9); });
}

}  // namespace

RunLog run_closed_loop(const SimConfig& cfg) {
  std::optional<control::BangBangGains> gains;
  const PlantModel plant = make_plant(cfg, &gains);
  validate(cfg, plant);

  const Grid grid(cfg.length, cfg.n_cells);
  const std::size_t last = grid.nodes() - 1;
  const double dt = cfg.dt;
  const bool production = cfg.model == ModelKind::ProductionLine;
  const bool compensated = cfg.scenario == Scenario::Compensated;
  const auto steps = static_cast<std::size_t>(std::llround(cfg.t_final / dt));

  RunLog log(grid);
  log.dt = dt;
  log.gains = gains;
  log.steps.reserve(steps + 1);

  const double x0 = cfg.initial_state;
  HistoryBuffer hist = HistoryBuffer::seeded(cfg.params.tau, dt, [x0](double) { return x0; });
  SpatialProfile u = cfg.initial_profile ? SpatialProfile::sample(grid, cfg.initial_profile)
                                         : SpatialProfile(grid);
  const double rho0_max = std::max(0.0, *std::max_element(u.values().begin(), u.values().end()));
  double x = x0;

  SourceFn source;
  if (plant.has_source || plant.has_friction) {
    source = [&plant](double at, double outlet, double local) {
      return plant.g(at, outlet) + plant.c(at) * local;
    };
  }

  for (std::size_t n = 0;; ++n) {
    const double t = static_cast<double>(n) * dt;
    if (n > 0) predictor::update_xi(log.characteristics, hist, t, dt, plant);
    const double window = hist.window_integral(t);
    const double lam = plant.lambda(window);

    std::optional<predictor::PredictorBundle> bundle;
    double control = 0.0;
    if (compensated) {
      auto closed = predictor::close_boundary(plant, grid, x, hist, u, t, cfg.march);
      if (n == 0 && std::abs(u[last] - closed.boundary_value) > 1e-6) {
        std::ostringstream os;
        os << "initial profile incompatible with the control law at x = D: u0(D) = " << u[last]
           << ", law requires " << closed.boundary_value << "; boundary node overwritten";
        log.warnings.push_back(os.str());
      }
      u[last] = closed.boundary_value;
      control = control::apply_control_law(plant, closed.bundle);
      if (production && control::out_of_range(closed.bundle.p1.back(), *gains)) ++log.clamp_count;
      log.p3_identity_gap =
          std::max(log.p3_identity_gap, std::abs(closed.bundle.p3.front() - window));
      log.max_inner_iterations =
          std::max(log.max_inner_iterations, closed.bundle.max_inner_iterations);
      bundle = std::move(closed.bundle);
    } else {
      if (cfg.scenario == Scenario::OpenLoop) {
        control = production ? gains->setpoint_input() : 0.0;
        u[last] = plant.boundary == BoundaryKind::Flux ? control / lam : control;
      } else {
        const double nominal = plant.nominal(x);
        if (production && control::out_of_range(x, *gains)) ++log.clamp_count;
        const bool as_flux = plant.boundary == BoundaryKind::Flux &&
                             cfg.uncompensated_injection == Injection::Flux;
        u[last] = as_flux ? nominal / lam : nominal;
        control = plant.flux_scale(window) * u[last];
      }
    }

    const bool diagnose = cfg.target_diagnostics && n % cfg.diagnostics_every == 0;
    const bool capture = near_capture(cfg.capture_times, t, dt);
    if (!bundle && (diagnose || capture || (n == 0 && production))) {
      bundle = predictor::march_predictors(plant, grid, x, hist, u, t, cfg.march);
    }

    const double q = plant.flux_scale(window) * u[0];
    StepRecord rec;
    rec.t = t;
    rec.state = x;
    rec.control = control;
    rec.q_flux = q;
    rec.u0 = u[0];
    rec.window = window;
    rec.min_profile = u.min();
    if (production) {
      rec.nu_in = cfg.params.alpha * q;
      rec.nu_out = std::min(x, cfg.params.mu);
    } else {
      rec.nu_in = q;
      rec.nu_out = q - plant.f(x, q);
    }

    if (diagnose) {
      const auto diag = verify::target_diagnostics(plant, *bundle, u);
      rec.has_diagnostics = true;
      rec.sup_w = diag.sup_w;
      rec.w_at_d = diag.w_boundary;
      rec.kernel_dd = bundle->kernel_diag();
      if (!verify::p2_bound(plant, *bundle, u).holds) ++log.p2_bound_violations;
      if (n == 0) {
        log.sup_w0 = diag.sup_w;
        log.lipschitz_w0 = diag.w.lipschitz();
        log.sigma_d0 = bundle->sigma.back();
      } else if (!log.vanish_time && diag.sup_w <= 0.05 * log.sup_w0) {
        log.vanish_time = t;
      }
    }

    if (n == 0 && production) {
      control::SafetyInputs in;
      in.rework = cfg.params.rework;
      in.friction_max = cfg.params.friction;
      in.processing_time = cfg.params.processing_time;
      in.tau = cfg.params.tau;
      in.q_max = cfg.params.q_max;
      in.length = cfg.length;
      in.b_max = cfg.params.b_max;
      in.rho0_max = rho0_max;
      in.q0 = x;
      in.nominal_values = {gains->setpoint_input(), control::bang_bang(x, *gains),
                           control::bang_bang(bundle->p1.back(), *gains)};
      try {
        log.certificate = control::safety_check(in);
      } catch (const Error& e) {
        log.warnings.push_back(std::string("safety certificate not evaluated: ") + e.what());
      }
    }

    if (capture) log.captures.push_back(Capture{t, *bundle});
    log.steps.push_back(rec);
    if (n % cfg.snapshot_every == 0) {
      log.snapshots.push_back(Snapshot{t, {u.values().begin(), u.values().end()}});
    }
    if (n == steps) break;

    const double x_next = ode_step_general(x, q, plant.f, dt);
    u = pde_step(u, lam, source, u[last], dt);
    x = x_next;
    hist.append(static_cast<double>(n + 1) * dt, x);
    if (!std::isfinite(x) || !u.all_finite()) {
      std::ostringstream os;
      os << "non-finite state at t = " << static_cast<double>(n + 1) * dt;
      throw Error(ErrorKind::NonFinite, os.str());
    }
  }

  if (log.clamp_count > 0) {
    std::ostringstream os;
    os << "nominal law clamped an out-of-range load " << log.clamp_count << " times";
    log.warnings.push_back(os.str());
  }
  return log;
}

HistoryBuffer replay_history(const SimConfig& cfg, const RunLog& log, std::size_t step) {
  if (step >= log.steps.size()) throw Error(ErrorKind::Range, "replay step beyond the run log");
  const double x0 = cfg.initial_state;
  HistoryBuffer hist = HistoryBuffer::seeded(cfg.params.tau, cfg.dt, [x0](double) { return x0; });
  for (std::size_t n = 1; n <= step; ++n) hist.append(log.steps[n].t, log.steps[n].state);
  return hist;
}

}  // namespace mlpf::sim
