#pragma once

#include <vector>

#include "mlpf/core/history.hpp"
#include "mlpf/core/plant.hpp"

namespace mlpf::predictor {

/// Samples of the integrated propagation speed
///   xi(t) = int_0^t lambda(R(theta)) dtheta,  xi(0) = 0,
/// so that the characteristic through (x, t) is zeta(s; x, t) = x + xi(t) - xi(s).
class CharacteristicMap {
 public:
  CharacteristicMap() : times_{0.0}, xi_{0.0} {}

  /// Appends a sample; t and xi must both increase strictly.
  void append(double t, double xi);

  /// Linear interpolation; RangeError outside [0, back_time()].
  [[nodiscard]] double xi_at(double t) const;
  /// Inverse of xi_at by bisection on the samples plus linear interpolation.
  [[nodiscard]] double time_at(double xi) const;

  [[nodiscard]] double back_time() const { return times_.back(); }
  [[nodiscard]] double back_xi() const { return xi_.back(); }
  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] const std::vector<double>& xi() const noexcept { return xi_; }

 private:
  std::vector<double> times_;
  std::vector<double> xi_;
};

/// Extends the map to time t by a trapezoid of lambda(R) over [t - dt, t];
/// the map must currently end at t - dt and hist must cover [t - dt - tau, t].
void update_xi(CharacteristicMap& map, const HistoryBuffer& hist, double t, double dt,
               const PlantModel& plant);

/// Delay phi with xi(t) - xi(phi) = D: the time at which the characteristic
/// reaching x = 0 at time t left the controlled boundary. Throws
/// NotYetReachable when xi(t) < D.
[[nodiscard]] double compute_delay(const CharacteristicMap& map, double t, double length);

}  // namespace mlpf::predictor
