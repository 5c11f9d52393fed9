#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mlpf/control/bang_bang.hpp"
#include "mlpf/control/safety.hpp"
#include "mlpf/core/grid.hpp"
#include "mlpf/core/history.hpp"
#include "mlpf/core/plant.hpp"
#include "mlpf/predictor/characteristics.hpp"
#include "mlpf/predictor/march.hpp"
#include "mlpf/sim/plants.hpp"

namespace mlpf::sim {

enum class Scenario { OpenLoop, Uncompensated, Compensated };
enum class ModelKind { Section2Linear, Section3General, ProductionLine };
/// How an uncompensated nominal value enters a Flux plant: as the boundary
/// density u(D,t) itself, or as the flux U = lambda(R) u(D,t).
enum class Injection { Density, Flux };

[[nodiscard]] std::string to_string(Scenario s);
[[nodiscard]] std::string to_string(ModelKind m);
[[nodiscard]] std::string to_string(Injection i);

struct SimConfig {
  double length = 2.0;
  int n_cells = 80;
  double dt = 0.0025;
  double t_final = 20.0;
  Scenario scenario = Scenario::Compensated;
  ModelKind model = ModelKind::ProductionLine;
  ModelParams params;
  Injection uncompensated_injection = Injection::Density;

  /// X(0); the history on [-tau, 0] is held at this value.
  double initial_state = 0.0;
  /// u(x, 0); empty means the zero profile.
  std::function<double(double)> initial_profile;

  std::size_t snapshot_every = 100;
  /// Transform the actuator state to the target variable every
  /// diagnostics_every steps (O(N^2) per evaluation).
  bool target_diagnostics = true;
  std::size_t diagnostics_every = 1;
  /// Predictor bundles are retained at the steps nearest to these times.
  std::vector<double> capture_times;
  predictor::MarchOptions march;
};

struct StepRecord {
  double t = 0.0;
  double state = 0.0;    // X or Q
  double control = 0.0;  // U; for Flux plants the injected flux lambda(R) u(D,t)
  double nu_in = 0.0;
  double nu_out = 0.0;
  double q_flux = 0.0;   // s(R) u(0, t)
  double u0 = 0.0;
  double window = 0.0;   // R(t)
  double min_profile = 0.0;
  /// Valid when has_diagnostics.
  double sup_w = 0.0;
  double w_at_d = 0.0;
  double kernel_dd = 0.0;
  bool has_diagnostics = false;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> values;
};

struct Capture {
  double t = 0.0;
  predictor::PredictorBundle bundle;
};

struct RunLog {
  Grid grid;
  double dt = 0.0;
  std::vector<StepRecord> steps;
  std::vector<Snapshot> snapshots;
  std::vector<Capture> captures;
  std::vector<std::string> warnings;
  predictor::CharacteristicMap characteristics;

  std::optional<control::BangBangGains> gains;
  std::optional<control::SafetyCertificate> certificate;
  std::size_t clamp_count = 0;

  /// Target-state reference values at t = 0 (compensated runs with diagnostics).
  double sup_w0 = 0.0;
  double lipschitz_w0 = 0.0;
  double sigma_d0 = 0.0;
  std::optional<double> vanish_time;
  std::size_t p2_bound_violations = 0;
  /// max over steps of |p3(0,t) - R(t)|.
  double p3_identity_gap = 0.0;
  int max_inner_iterations = 0;

  explicit RunLog(Grid g) : grid(g) {}

  [[nodiscard]] std::vector<double> times() const;
  [[nodiscard]] std::vector<double> states() const;
};

/// Builds the plant selected by cfg.model (gains are solved for the production line).
[[nodiscard]] PlantModel make_plant(const SimConfig& cfg,
                                    std::optional<control::BangBangGains>* gains = nullptr);

/// Validates dt, t_final, grid and the CFL bound for the selected plant.
void validate(const SimConfig& cfg, const PlantModel& plant);

[[nodiscard]] RunLog run_closed_loop(const SimConfig& cfg);

/// The history buffer as it stood at log.steps[step], rebuilt from the seed
/// and the recorded states.
[[nodiscard]] HistoryBuffer replay_history(const SimConfig& cfg, const RunLog& log,
                                           std::size_t step);

}  // namespace mlpf::sim
