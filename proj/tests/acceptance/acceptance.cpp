// Acceptance gate for the production-line experiment and the scheme checks.
// Prints one PASS/FAIL line per criterion; exits 1 if any criterion fails.
// Reference values are recomputed here from closed forms, not read back from
// the library's own verification helpers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mlpf/control/bang_bang.hpp"
#include "mlpf/core/errors.hpp"
#include "mlpf/predictor/kernel.hpp"
#include "mlpf/predictor/march.hpp"
#include "mlpf/sim/run.hpp"
#include "mlpf/verify/transform.hpp"

namespace {

using namespace mlpf;

constexpr double kQStar = 0.3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

sim::SimConfig experiment(sim::Scenario s) {
  sim::SimConfig cfg;  // defaults are the experiment: D = 2, N = 80, dt = 0.0025, T = 20
  cfg.scenario = s;
  cfg.snapshot_every = 1u << 30;
  return cfg;
}

// Sign changes of values - ref over t in [t_lo, t_hi]; exact zeros are skipped.
int sign_changes(const sim::RunLog& log, double ref, double t_lo, double t_hi) {
  int count = 0;
  int last = 0;
  for (const auto& r : log.steps) {
    if (r.t < t_lo - 1e-12 || r.t > t_hi + 1e-12) continue;
    const double d = r.state - ref;
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

double linear_at(const std::vector<double>& t, const std::vector<double>& v, double s) {
  const auto it = std::upper_bound(t.begin(), t.end(), s);
  if (it == t.begin() || it == t.end()) {
    if (s == t.back()) return v.back();
    throw std::runtime_error("oracle time outside the recorded run");
  }
  const auto k = static_cast<std::size_t>(it - t.begin()) - 1;
  const double th = (s - t[k]) / (t[k + 1] - t[k]);
  return v[k] + th * (v[k + 1] - v[k]);
}

// max_x |p1(x, t0) - X(sigma(x, t0))| with X from the recorded trajectory.
double oracle_error(const predictor::PredictorBundle& b, const sim::RunLog& log) {
  const auto t = log.times();
  const auto x = log.states();
  double err = 0.0;
  for (std::size_t i = 0; i < b.p1.size(); ++i) {
    err = std::max(err, std::abs(b.p1[i] - linear_at(t, x, b.sigma[i])));
  }
  return err;
}

const sim::Capture& capture_at(const sim::RunLog& log, double t) {
  for (const auto& c : log.captures) {
    if (std::abs(c.t - t) < 1e-9) return c;
  }
  throw std::runtime_error("missing capture");
}

Outcome criterion1(const sim::RunLog& log) {
  double dev = 0.0;
  for (const auto& r : log.steps) {
    if (r.t >= 15.0 - 1e-12) dev = std::max(dev, std::abs(r.state - kQStar));
  }
  const int changes = sign_changes(log, kQStar, 5.0, 20.0);
  return {dev < 0.01 && changes <= 2,
          fmt("max|Q-Q*| on [15,20] = %.3e (< 1e-2), sign changes after t=5 = %.0f (<= 2)", dev,
              changes)};
}

Outcome criterion2(const sim::RunLog& log) {
  const int changes = sign_changes(log, kQStar, 5.0, 20.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : log.steps) {
    if (r.t < 5.0 - 1e-12) continue;
    lo = std::min(lo, r.state);
    hi = std::max(hi, r.state);
  }
  return {changes >= 5 && hi - lo > 0.05,
          fmt("sign changes on [5,20] = %.0f (>= 5), peak-to-peak = %.3f (> 0.05)", changes,
              hi - lo)};
}

Outcome criterion3(const sim::RunLog& log) {
  const double sup0 = log.sup_w0;
  const double wd_tol = 1e-8 * (1.0 + sup0);
  const double slack = 5.0 * log.grid.dx() * log.lipschitz_w0;
  double wd = 0.0;
  double late = 0.0;
  double rise = 0.0;
  double running = std::numeric_limits<double>::infinity();
  std::size_t diagnosed = 0;
  for (const auto& r : log.steps) {
    if (!r.has_diagnostics) continue;
    ++diagnosed;
    wd = std::max(wd, std::abs(r.w_at_d));
    if (r.t >= log.sigma_d0 + 1.0) late = std::max(late, r.sup_w);
    rise = std::max(rise, r.sup_w - running);
    running = std::min(running, r.sup_w);
  }
  const bool every_step = diagnosed == log.steps.size();
  const bool ok = every_step && sup0 > 0.0 && wd <= wd_tol && late <= 0.05 * sup0 && rise <= slack;
  return {ok, fmt("max|w(D)| = %.2e, late sup|w|/sup|w0| = %.3e, max rise = %.2e", wd,
                  late / sup0, rise) +
                  fmt(" (slack %.2e)", slack)};
}

Outcome criterion4(const sim::RunLog& coarse) {
  const auto& cap = capture_at(coarse, 5.0);
  const double e1 = oracle_error(cap.bundle, coarse);
  double max_x = 0.0;
  for (double x : coarse.states()) max_x = std::max(max_x, std::abs(x));

  auto cfg = experiment(sim::Scenario::Compensated);
  cfg.n_cells = 160;
  cfg.dt = 0.5 * cfg.dt;
  cfg.t_final = 7.0;
  cfg.target_diagnostics = false;
  cfg.capture_times = {5.0};
  const auto fine = sim::run_closed_loop(cfg);
  const double e2 = oracle_error(capture_at(fine, 5.0).bundle, fine);
  const double ratio = e1 / e2;
  return {e1 <= 0.05 * max_x && ratio >= 1.6 && ratio <= 2.4,
          fmt("error N=80 %.3e (<= %.3e), N=160 %.3e", e1, 0.05 * max_x, e2) +
              fmt(", ratio %.3f in [1.6, 2.4]", ratio)};
}

Outcome criterion5(const sim::SimConfig& cfg, const sim::RunLog& log) {
  const auto plant = sim::make_plant(cfg);
  double rt = 0.0;
  double kl = 0.0;
  double fb = 0.0;
  for (const auto& cap : log.captures) {
    const auto& b = cap.bundle;
    const std::size_t step = static_cast<std::size_t>(std::llround(cap.t / log.dt));
    const auto hist = sim::replay_history(cfg, log, step);
    const double state = log.steps[step].state;
    const auto w = verify::transform_w(plant, b, b.actuator);
    const auto u = verify::inverse_transform_u(plant, w, state, hist, cap.t);
    rt = std::max(rt, max_abs_diff(u, b.actuator));
    const Grid& g = b.grid();
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double k = predictor::kernel_K(plant, b.p3, g.node(i), g.node(j));
        const double l = predictor::kernel_L(plant, b.p3, g.node(i), g.node(j));
        kl = std::max(kl, std::abs(k * l - 1.0));
      }
    }
    const auto pi = predictor::march_backward_predictors(plant, g, state, hist, w, cap.t);
    fb = std::max({fb, max_abs_diff(pi.p1, b.p1), max_abs_diff(pi.p2, b.p2),
                   max_abs_diff(pi.p3, b.p3), max_abs_diff(pi.sigma, b.sigma)});
  }
  return {!log.captures.empty() && rt <= 1e-8 && kl <= 1e-10 && fb <= 1e-8,
          fmt("round trip %.2e (<= 1e-8), |KL-1| %.2e (<= 1e-10), forward/backward %.2e (<= 1e-8)",
              rt, kl, fb)};
}

// Constant-delay predictor feedback for dX/dt = X + U(t - 1), U = -3 P,
// P(t) = e X(t) + int_{t-1}^{t} e^{t-s} U(s) ds by a left Riemann sum, explicit Euler.
std::vector<double> delay_reference(double dt, double t_final) {
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  const auto lag = static_cast<std::size_t>(std::llround(1.0 / dt));
  std::vector<double> x(steps + 1, 0.0);
  std::vector<double> u(steps + 1, 0.0);
  std::vector<double> weight(lag);
  for (std::size_t j = 0; j < lag; ++j)
    weight[j] = dt * std::exp(1.0 - static_cast<double>(j) * dt);
  x[0] = 1.0;
  for (std::size_t n = 0; n <= steps; ++n) {
    double p = std::exp(1.0) * x[n];
    for (std::size_t j = 0; j < lag; ++j) {
      if (n + j >= lag) p += weight[j] * u[n + j - lag];
    }
    u[n] = -3.0 * p;
    if (n == steps) break;
    const double delayed = n >= lag ? u[n - lag] : 0.0;
    x[n + 1] = x[n] + dt * (x[n] + delayed);
  }
  return x;
}

double classical_deviation(double dt) {
  sim::SimConfig cfg;
  cfg.model = sim::ModelKind::Section3General;
  cfg.scenario = sim::Scenario::Compensated;
  cfg.length = 1.0;
  cfg.n_cells = static_cast<int>(std::llround(1.0 / dt));
  cfg.dt = dt;
  cfg.t_final = 8.0;
  cfg.params.ode_a = 1.0;
  cfg.params.ode_b = 1.0;
  cfg.params.ode_cubic = 0.0;
  cfg.params.gain_k = 3.0;
  cfg.params.speed_min = 1.0;
  cfg.params.speed_max = 1.0;
  cfg.params.recycle = 0.0;
  cfg.params.friction = 0.0;
  cfg.initial_state = 1.0;
  cfg.target_diagnostics = false;
  cfg.snapshot_every = 1u << 30;
  const auto log = sim::run_closed_loop(cfg);
  const auto ref = delay_reference(dt, cfg.t_final);
  double dev = 0.0;
  for (std::size_t n = 0; n < ref.size(); ++n)
    dev = std::max(dev, std::abs(log.steps[n].state - ref[n]));
  return dev;
}

Outcome criterion6() {
  const double d1 = classical_deviation(1e-3);
  const double d2 = classical_deviation(5e-4);
  const double ratio = d1 / d2;
  return {d1 <= 1e-2 && ratio >= 1.6 && ratio <= 2.4,
          fmt("max deviation dt=1e-3 %.3e (<= 1e-2), dt=5e-4 %.3e, ratio %.3f", d1, d2, ratio)};
}

Outcome criterion7(const control::BangBangGains& g) {
  const double a_l = g.b_max - g.q_star / g.alpha;
  const double a_r = g.q_star / g.alpha;
  const double b_l = g.q_star;
  const double b_r = g.q_max - g.q_star;
  const double res_l = g.lambda_left * a_l - g.slope * (1.0 - std::exp(-g.lambda_left * b_l));
  const double res_r = g.lambda_right * a_r - g.slope * (1.0 - std::exp(-g.lambda_right * b_r));
  const double residual = std::max(std::abs(res_l), std::abs(res_r));

  const double value_gap =
      std::abs(control::bang_bang_left(g.q_star, g) - control::bang_bang_right(g.q_star, g));
  // Fourth-order one-sided differences of each branch at Q*.
  auto slope = [&g](double (*branch)(double, const control::BangBangGains&), double dir) {
    const double h = 1e-4 * dir;
    const double q = g.q_star;
    return (-25.0 * branch(q, g) + 48.0 * branch(q + h, g) - 36.0 * branch(q + 2 * h, g) +
            16.0 * branch(q + 3 * h, g) - 3.0 * branch(q + 4 * h, g)) /
           (12.0 * h);
  };
  const double sl = slope(&control::bang_bang_left, -1.0);
  const double sr = slope(&control::bang_bang_right, 1.0);
  const double slope_gap = std::abs(sl - sr);
  const bool ends = control::bang_bang(0.0, g) == g.b_max && control::bang_bang(g.q_max, g) == 0.0;
  return {residual <= 1e-10 && value_gap <= 1e-12 && slope_gap <= 1e-6 && ends,
          fmt("residual %.2e, value gap %.2e, slope gap %.2e", residual, value_gap, slope_gap) +
              fmt(" (slope %.6f vs -S = %.6f)", sl, -g.slope) +
              (ends ? ", endpoints exact" : ", endpoints NOT exact")};
}

Outcome criterion8(const sim::SimConfig& cfg, const sim::RunLog& log) {
  const auto& p = cfg.params;
  const auto& g = *log.gains;
  const auto& b0 = capture_at(log, 0.0).bundle;
  const double base = 1.0 + p.tau * p.q_max;
  const double rho_bar = std::max(0.0, p.processing_time * base * base * p.b_max);
  const double m = rho_bar * std::exp(2.0 * p.rework * p.processing_time * cfg.length *
                                      cfg.length * base);
  const double u_lower = std::min({g.q_star / g.alpha, control::bang_bang(cfg.initial_state, g),
                                   control::bang_bang(b0.p1.back(), g)});
  const double lhs = m / u_lower;
  const double rhs = 2.0 / (p.rework * cfg.length * p.processing_time * p.processing_time * base);
  const auto& c = *log.certificate;
  const bool agrees = std::abs(c.lhs - lhs) <= 1e-12 * lhs && std::abs(c.rhs - rhs) <= 1e-12 * rhs;

  double min_q = std::numeric_limits<double>::infinity();
  double min_rho = min_q;
  double min_u = min_q;
  for (const auto& r : log.steps) {
    min_q = std::min(min_q, r.state);
    min_rho = std::min(min_rho, r.min_profile);
    min_u = std::min(min_u, r.control);
  }
  const bool positive = min_q >= -1e-9 && min_rho >= -1e-9 && min_u >= -1e-9;
  return {c.satisfied && lhs < rhs && agrees && positive,
          fmt("lhs %.4f < rhs %.2f", lhs, rhs) + (agrees ? " (library agrees)" : " (MISMATCH)") +
              fmt(", min Q %.3e, min rho %.3e, min U %.3e", min_q, min_rho, min_u)};
}

Outcome criterion9(const sim::SimConfig& cfg, const sim::RunLog& log) {
  double max_q = 0.0;
  for (double x : log.states()) max_q = std::max(max_q, std::abs(x));
  const double tol = 1e-10 * cfg.params.tau * max_q;

  // Window integral by the trapezoid rule on the recorded states, with the
  // constant seed before t = 0.
  const auto lag = static_cast<std::size_t>(std::llround(cfg.params.tau / log.dt));
  auto state_at = [&](long n) {
    return n < 0 ? cfg.initial_state : log.steps[static_cast<std::size_t>(n)].state;
  };
  double window_gap = 0.0;
  for (std::size_t n = 0; n < log.steps.size(); ++n) {
    double r = 0.0;
    for (std::size_t j = 0; j < lag; ++j) {
      const long k = static_cast<long>(n) - static_cast<long>(j);
      r += 0.5 * log.dt * (state_at(k) + state_at(k - 1));
    }
    window_gap = std::max(window_gap, std::abs(r - log.steps[n].window));
  }
  double capture_gap = 0.0;
  for (const auto& c : log.captures) {
    const auto n = static_cast<std::size_t>(std::llround(c.t / log.dt));
    capture_gap = std::max(capture_gap, std::abs(c.bundle.p3.front() - log.steps[n].window));
  }
  const double gap = std::max({window_gap, capture_gap, log.p3_identity_gap});

  bool rejected = false;
  auto bad = experiment(sim::Scenario::Compensated);
  bad.dt = 0.01;
  bad.t_final = 0.1;
  const double speed_max = sim::make_plant(bad).speed_max;
  try {
    (void)sim::run_closed_loop(bad);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::CFLViolation;
  }
  return {gap <= tol && rejected && std::abs(speed_max - 4.0) < 1e-12,
          fmt("max |p3(0,t) - R(t)| = %.2e (<= %.2e), lambda_max = %.1f", gap, tol, speed_max) +
              (rejected ? ", dt = 0.01 rejected" : ", dt = 0.01 NOT rejected")};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  int failures = 0;
  auto report = [&](int id, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };

  auto comp_cfg = experiment(sim::Scenario::Compensated);
  comp_cfg.capture_times = {0.0, 5.0, 12.0};
  sim::RunLog comp(Grid(comp_cfg.length, comp_cfg.n_cells));
  sim::RunLog uncomp(Grid(comp_cfg.length, comp_cfg.n_cells));
  std::string setup_error;
  try {
    comp = sim::run_closed_loop(comp_cfg);
    auto un_cfg = experiment(sim::Scenario::Uncompensated);
    un_cfg.target_diagnostics = false;
    uncomp = sim::run_closed_loop(un_cfg);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  auto need = [&](const std::function<Outcome()>& f) {
    return [&, f]() -> Outcome {
      if (!setup_error.empty()) return {false, "experiment runs failed: " + setup_error};
      return f();
    };
  };

  report(1, need([&] { return criterion1(comp); }));
  report(2, need([&] { return criterion2(uncomp); }));
  report(3, need([&] { return criterion3(comp); }));
  report(4, need([&] { return criterion4(comp); }));
  report(5, need([&] { return criterion5(comp_cfg, comp); }));
  report(6, criterion6);
  report(7, [&] { return criterion7(sim::production_gains(comp_cfg.params)); });
  report(8, need([&] { return criterion8(comp_cfg, comp); }));
  report(9, need([&] { return criterion9(comp_cfg, comp); }));

  const double secs = std::chrono::duration<double>(clock::now() - start).count();
  std::printf("%d of 9 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
