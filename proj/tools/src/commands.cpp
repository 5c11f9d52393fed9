#include "mlpf/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "mlpf/cli/config.hpp"
#include "mlpf/cli/output.hpp"
#include "mlpf/control/bang_bang.hpp"
#include "mlpf/core/errors.hpp"
#include "mlpf/predictor/kernel.hpp"
#include "mlpf/verify/oracles.hpp"
#include "mlpf/verify/target.hpp"
#include "mlpf/verify/transform.hpp"

namespace mlpf::cli {

namespace {

CheckResult bounded(std::string name, double measured, double limit, std::string tol_text) {
  CheckResult r;
  r.name = std::move(name);
  r.measured = measured;
  r.tolerance = std::move(tol_text);
  r.status = measured <= limit ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

CheckResult skipped(std::string name, std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.measured = std::nan("");
  r.status = CheckStatus::Skipped;
  r.note = std::move(note);
  return r;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

double max_abs_series(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Longest possible transit time D / lambda_min plus a margin of two steps.
double horizon_after(const sim::SimConfig& cfg, const PlantModel& plant, double t0) {
  return t0 + cfg.length / plant.speed_min + 2.0 * cfg.dt;
}

double oracle_error(const sim::SimConfig& base, int cells, double dt, double t0,
                    const PlantModel& plant) {
  sim::SimConfig cfg = base;
  cfg.n_cells = cells;
  cfg.dt = dt;
  cfg.target_diagnostics = false;
  cfg.snapshot_every = 1u << 30;
  cfg.capture_times = {t0};
  cfg.t_final = horizon_after(cfg, plant, t0);
  const auto log = sim::run_closed_loop(cfg);
  return verify::predictor_oracle_error(log.captures.at(0).bundle, log.times(), log.states());
}

}  // namespace

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

VerifyReport verify_suite(const sim::SimConfig& cfg_in, const VerifyOptions& opts) {
  VerifyReport report;
  std::optional<control::BangBangGains> gains;
  const PlantModel plant = sim::make_plant(cfg_in, &gains);
  sim::validate(cfg_in, plant);

  const double t_probe = std::round(std::min(5.0, 0.5 * cfg_in.t_final) / cfg_in.dt) * cfg_in.dt;
  sim::SimConfig cfg = cfg_in;
  cfg.capture_times = {t_probe};
  cfg.t_final = std::max(cfg_in.t_final, horizon_after(cfg, plant, t_probe));
  const auto log = sim::run_closed_loop(cfg);
  const auto& cap = log.captures.at(0);
  const auto step = static_cast<std::size_t>(std::llround(cap.t / cfg.dt));
  const double state = log.steps[step].state;
  const HistoryBuffer hist = sim::replay_history(cfg, log, step);
  const auto& bundle = cap.bundle;
  const Grid& grid = bundle.grid();

  // Kernel product over all node pairs y <= x.
  double kl = 0.0;
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double x1 = grid.node(i);
      const double x2 = grid.node(j);
      const double k = predictor::kernel_K(plant, bundle.p3, x1, x2);
      const double l = opts.corrupt_kernel_sign ? predictor::kernel_K(plant, bundle.p3, x1, x2)
                                                : predictor::kernel_L(plant, bundle.p3, x1, x2);
      kl = std::max(kl, std::abs(k * l - 1.0));
    }
  }
  report.checks.push_back(bounded("kernel_product", kl, 1e-10, "1e-10"));

  const SpatialProfile w = verify::transform_w(plant, bundle, bundle.actuator);
  const SpatialProfile back =
      verify::inverse_transform_u(plant, w, state, hist, cap.t, cfg.march);
  report.checks.push_back(
      bounded("round_trip", max_abs_diff(back, bundle.actuator), 1e-8, "1e-8"));

  const auto pi =
      predictor::march_backward_predictors(plant, grid, state, hist, w, cap.t, cfg.march);
  const double agree = std::max({max_abs_diff(pi.p1, bundle.p1), max_abs_diff(pi.p2, bundle.p2),
                                 max_abs_diff(pi.p3, bundle.p3),
                                 max_abs_diff(pi.sigma, bundle.sigma)});
  report.checks.push_back(bounded("forward_backward", agree, 1e-8, "1e-8"));

  const bool diagnosed = cfg.target_diagnostics && cfg.scenario == sim::Scenario::Compensated;
  if (diagnosed) {
    double wd = 0.0;
    double late = 0.0;
    double rise = 0.0;
    double running = std::numeric_limits<double>::infinity();
    for (const auto& s : log.steps) {
      if (!s.has_diagnostics) continue;
      wd = std::max(wd, std::abs(s.w_at_d));
      if (s.t >= log.sigma_d0 + 1.0) late = std::max(late, s.sup_w);
      rise = std::max(rise, s.sup_w - running);
      running = std::min(running, s.sup_w);
    }
    report.checks.push_back(bounded("w_boundary", wd, 1e-8 * (1.0 + log.sup_w0),
                                    sci(1e-8 * (1.0 + log.sup_w0))));
    report.checks.push_back(
        bounded("target_decay", late, 0.05 * log.sup_w0, sci(0.05 * log.sup_w0)));
    const double slack = 5.0 * grid.dx() * log.lipschitz_w0;
    report.checks.push_back(bounded("target_monotone", rise, slack, sci(slack)));
  } else {
    const char* why = "requires a compensated run with target diagnostics";
    report.checks.push_back(skipped("w_boundary", why));
    report.checks.push_back(skipped("target_decay", why));
    report.checks.push_back(skipped("target_monotone", why));
  }

  const double max_state = max_abs_series(log.states());
  const double p3_tol = 1e-10 * cfg.params.tau * std::max(max_state, 1e-300);
  double p3_gap = std::abs(bundle.p3.front() - hist.window_integral(cap.t));
  if (cfg.scenario == sim::Scenario::Compensated) p3_gap = std::max(p3_gap, log.p3_identity_gap);
  report.checks.push_back(bounded("p3_identity", p3_gap, p3_tol, sci(p3_tol)));

  const double oracle =
      verify::predictor_oracle_error(bundle, log.times(), log.states());
  report.checks.push_back(
      bounded("predictor_oracle", oracle, 0.05 * max_state, sci(0.05 * max_state)));

  if (cfg.n_cells < 16) {
    report.checks.push_back(skipped("oracle_refinement", "insufficient resolution (N < 16)"));
  } else if (cfg.scenario != sim::Scenario::Compensated) {
    report.checks.push_back(skipped("oracle_refinement", "requires a compensated run"));
  } else {
    const double coarse = oracle_error(cfg, cfg.n_cells, cfg.dt, t_probe, plant);
    const double fine = oracle_error(cfg, 2 * cfg.n_cells, 0.5 * cfg.dt, t_probe, plant);
    const double ratio = verify::refinement_ratio(coarse, fine);
    CheckResult r;
    r.name = "oracle_refinement";
    r.measured = ratio;
    r.tolerance = "[1.6, 2.4]";
    r.status = ratio >= 1.6 && ratio <= 2.4 ? CheckStatus::Pass : CheckStatus::Fail;
    r.note = "errors " + sci(coarse) + " -> " + sci(fine);
    report.checks.push_back(r);
  }

  report.checks.push_back(bounded("p2_bound_violations",
                                  static_cast<double>(log.p2_bound_violations), 0.0, "0"));

  if (gains) {
    const auto [rl, rr] = control::gain_residuals(*gains);
    report.checks.push_back(
        bounded("gain_residuals", std::max(std::abs(rl), std::abs(rr)), 1e-10, "1e-10"));
  }

  if (opts.classical) {
    sim::SimConfig ref;
    ref.model = sim::ModelKind::Section3General;
    ref.length = 1.0;
    ref.n_cells = 1000;
    ref.dt = 1e-3;
    ref.t_final = 8.0;
    ref.params.friction = 0.0;
    ref.params.recycle = 0.0;
    ref.params.ode_cubic = 0.0;
    ref.initial_state = 1.0;
    ref.target_diagnostics = false;
    ref.snapshot_every = 1u << 30;
    const auto machine = sim::run_closed_loop(ref);
    const auto oracle_x = verify::classical_predictor_reference(1.0, 1.0, 3.0, 1.0, 1.0, 1.0,
                                                                ref.dt, ref.t_final);
    double dev = 0.0;
    for (std::size_t n = 0; n < oracle_x.size(); ++n) {
      dev = std::max(dev, std::abs(oracle_x[n] - machine.steps[n].state));
    }
    report.checks.push_back(bounded("classical_reduction", dev, 1e-2, "1e-2"));
  }
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  out << std::left << std::setw(22) << "check" << std::setw(14) << "measured" << std::setw(14)
      << "tolerance" << "status\n";
  for (const auto& c : report.checks) {
    const char* status = c.status == CheckStatus::Pass   ? "PASS"
                         : c.status == CheckStatus::Fail ? "FAIL"
                                                         : "SKIP";
    out << std::left << std::setw(22) << c.name << std::setw(14)
        << (std::isnan(c.measured) ? std::string("-") : sci(c.measured)) << std::setw(14)
        << c.tolerance << status;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed\n" : "some checks failed\n");
}

std::string summarize(const sim::SimConfig& cfg, const sim::RunLog& log) {
  std::ostringstream os;
  const auto& last = log.steps.back();
  double min_state = last.state;
  double min_profile = last.min_profile;
  double min_control = last.control;
  for (const auto& s : log.steps) {
    min_state = std::min(min_state, s.state);
    min_profile = std::min(min_profile, s.min_profile);
    min_control = std::min(min_control, s.control);
  }
  os << sim::to_string(cfg.model) << '/' << sim::to_string(cfg.scenario) << ": ";
  if (cfg.model == sim::ModelKind::ProductionLine) {
    os << "final |Q - Q*| = " << std::abs(last.state - cfg.params.q_star);
  } else {
    os << "final |X| = " << std::abs(last.state);
  }
  os << ", vanish time = ";
  if (log.vanish_time) {
    os << *log.vanish_time;
  } else {
    os << "n/a";
  }
  os << ", min state = " << min_state << ", min profile = " << min_profile
     << ", min control = " << min_control;
  for (const auto& w : log.warnings) os << "\nwarning: " << w;
  return os.str();
}

void report_error(std::ostream& err, const std::exception& e) {
  std::string msg = e.what();
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  if (const auto* me = dynamic_cast<const Error*>(&e)) {
    err << "error[" << to_string(me->kind()) << "]: " << msg << '\n';
  } else {
    err << "error[Internal]: " << msg << '\n';
  }
}

int cmd_run(const std::vector<std::filesystem::path>& configs,
            const std::filesystem::path& out_dir, unsigned jobs, std::ostream& out,
            std::ostream& err) {
  struct Outcome {
    std::string summary;
    std::string error;
  };
  auto job = [&](const std::filesystem::path& path) {
    Outcome o;
    try {
      const auto cfg = load_config(path);
      const auto log = sim::run_closed_loop(cfg);
      const auto dir = configs.size() == 1 ? out_dir : out_dir / path.stem();
      write_run(dir, log);
      o.summary = summarize(cfg, log);
    } catch (const std::exception& e) {
      std::ostringstream os;
      report_error(os, e);
      o.error = os.str();
    }
    return o;
  };

  std::vector<Outcome> outcomes(configs.size());
  const std::size_t width = std::max(1u, jobs);
  for (std::size_t start = 0; start < configs.size(); start += width) {
    std::vector<std::future<Outcome>> batch;
    const std::size_t stop = std::min(configs.size(), start + width);
    for (std::size_t k = start; k < stop; ++k) {
      batch.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async, job,
                                 std::cref(configs[k])));
    }
    for (std::size_t k = start; k < stop; ++k) outcomes[k] = batch[k - start].get();
  }

  int status = 0;
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      err << o.error;
      status = 1;
    } else {
      out << o.summary << '\n';
    }
  }
  return status;
}

int cmd_verify(const std::filesystem::path& config, const VerifyOptions& opts, std::ostream& out,
               std::ostream& err) {
  try {
    const auto report = verify_suite(load_config(config), opts);
    print_report(out, report);
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    report_error(err, e);
    return 1;
  }
}

int cmd_gains(double q_star, double alpha, double b_max, double q_max, double s_offset,
              std::ostream& out, std::ostream& err) {
  try {
    const double smin = control::s_min(q_star, alpha, b_max, q_max);
    const double slope = smin + s_offset;
    const auto [left, right] = control::solve_gains(q_star, alpha, b_max, q_max, slope);
    control::BangBangGains g;
    g.q_star = q_star;
    g.alpha = alpha;
    g.b_max = b_max;
    g.q_max = q_max;
    g.slope = slope;
    g.lambda_left = left;
    g.lambda_right = right;
    const auto [rl, rr] = control::gain_residuals(g);
    out << "S_min = " << format_double(smin) << '\n'
        << "S = " << format_double(slope) << '\n'
        << "Lambda_l = " << format_double(left) << '\n'
        << "Lambda_r = " << format_double(right) << '\n'
        << "residual_l = " << format_double(rl) << '\n'
        << "residual_r = " << format_double(rr) << '\n';
    return 0;
  } catch (const std::exception& e) {
    report_error(err, e);
    return 1;
  }
}

int cmd_cert(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
  try {
    auto cfg = load_config(config);
    if (cfg.model != sim::ModelKind::ProductionLine) {
      throw Error(ErrorKind::Config, "the safety certificate applies to model = production_line");
    }
    cfg.t_final = cfg.dt;
    cfg.target_diagnostics = false;
    const auto log = sim::run_closed_loop(cfg);
    if (!log.certificate) {
      throw Error(ErrorKind::Domain, log.warnings.empty() ? "certificate unavailable"
                                                          : log.warnings.back());
    }
    write_certificate(out, log);
    return log.certificate->satisfied ? 0 : 1;
  } catch (const std::exception& e) {
    report_error(err, e);
    return 1;
  }
}

}  // namespace mlpf::cli
