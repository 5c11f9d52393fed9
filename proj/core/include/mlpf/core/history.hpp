#pragma once

#include <cstddef>
#include <deque>
#include <functional>

namespace mlpf {

/// Time-stamped scalar ODE-state samples with piecewise-linear interpolation
/// and trapezoidal integration. Samples older than current - window - slack
/// are pruned, except the newest such sample, which keeps the interval
/// [current - window - slack, current] interpolable.
class HistoryBuffer {
 public:
  HistoryBuffer(double window, double slack);

  /// Samples h on [-window, 0] at spacing dt (times -k*dt, k = 0..ceil(window/dt)).
  static HistoryBuffer seeded(double window, double dt, const std::function<double(double)>& h);

  /// Appends (t, x); t must exceed the last stored time.
  void append(double t, double x);

  /// Linear interpolation; throws RangeError outside the stored span.
  [[nodiscard]] double interpolate(double s) const;

  /// Trapezoidal integral of the interpolant over [a, b]; 0 when a == b.
  [[nodiscard]] double integrate(double a, double b) const;

  /// Integral over [t - window, t].
  [[nodiscard]] double window_integral(double t) const { return integrate(t - window_, t); }

  [[nodiscard]] double window() const noexcept { return window_; }
  [[nodiscard]] double slack() const noexcept { return slack_; }
  [[nodiscard]] double front_time() const { return times_.front(); }
  [[nodiscard]] double back_time() const { return times_.back(); }
  [[nodiscard]] double back_value() const { return values_.back(); }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] bool empty() const noexcept { return times_.empty(); }

 private:
  [[nodiscard]] std::size_t locate(double s) const;  // index k with t_k <= s < t_{k+1}
  [[nodiscard]] double clamp_to_span(double s) const;
  [[nodiscard]] double primitive(double s) const;  // integral from the first ever sample
  void prune();

  double window_;
  double slack_;
  std::deque<double> times_;
  std::deque<double> values_;
  std::deque<double> prefix_;
};

}  // namespace mlpf
