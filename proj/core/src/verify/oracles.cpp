#include "mlpf/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::verify {

std::vector<double> classical_predictor_reference(double a, double b, double k, double v,
                                                  double length, double x0, double dt,
                                                  double t_final) {
  if (!(dt > 0.0) || !(v > 0.0) || !(length > 0.0)) {
    throw Error(ErrorKind::Domain, "classical reference needs dt, v, D > 0");
  }
  const double delay = length / v;
  const auto lag = static_cast<std::size_t>(std::llround(delay / dt));
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));

  // Left Riemann weights e^{a (h - j dt)} b dt, j = 0..lag-1.
  std::vector<double> weight(lag);
  for (std::size_t j = 0; j < lag; ++j) weight[j] = std::exp(a * (delay - j * dt)) * b * dt;
  const double lead = std::exp(a * delay);

  // inputs[n + lag] holds U(t_n); the first lag entries are the zero pre-history.
  std::vector<double> inputs(lag + steps + 1, 0.0);
  std::vector<double> x(steps + 1, 0.0);
  x[0] = x0;
  for (std::size_t n = 0;; ++n) {
    double pred = lead * x[n];
    for (std::size_t j = 0; j < lag; ++j) pred += weight[j] * inputs[n + j];
    inputs[n + lag] = -k * pred;
    if (n == steps) break;
    x[n + 1] = x[n] + dt * (a * x[n] + b * inputs[n]);
  }
  return x;
}

double interpolate_series(std::span<const double> times, std::span<const double> values,
                          double t) {
  if (times.empty() || times.size() != values.size()) {
    throw Error(ErrorKind::Domain, "series must be non-empty with matching lengths");
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  if (t < times.front() - tol || t > times.back() + tol) {
    std::ostringstream os;
    os << "time " << t << " outside recorded span [" << times.front() << ", " << times.back()
       << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return values.front();
  if (it == times.end()) return values.back();
  const auto hi = static_cast<std::size_t>(std::distance(times.begin(), it));
  const std::size_t lo = hi - 1;
  const double theta = (t - times[lo]) / (times[hi] - times[lo]);
  return values[lo] + theta * (values[hi] - values[lo]);
}

double predictor_oracle_error(const predictor::PredictorBundle& bundle,
                              std::span<const double> times, std::span<const double> states) {
  double err = 0.0;
  for (std::size_t i = 0; i < bundle.grid().nodes(); ++i) {
    const double actual = interpolate_series(times, states, bundle.sigma[i]);
    err = std::max(err, std::abs(bundle.p1[i] - actual));
  }
  return err;
}

}  // namespace mlpf::verify
