#include "mlpf/predictor/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf::predictor {

void CharacteristicMap::append(double t, double xi) {
  if (!(t > times_.back()) || !(xi > xi_.back())) {
    std::ostringstream os;
    os << "characteristic map samples must increase (t = " << t << ", xi = " << xi << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  times_.push_back(t);
  xi_.push_back(xi);
}

double CharacteristicMap::xi_at(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  if (t < -tol || t > times_.back() + tol) {
    std::ostringstream os;
    os << "time " << t << " outside characteristic record [0, " << times_.back() << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  t = std::clamp(t, 0.0, times_.back());
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return xi_.back();
  const auto k = static_cast<std::size_t>(std::distance(times_.begin(), it)) - 1;
  const double theta = (t - times_[k]) / (times_[k + 1] - times_[k]);
  return xi_[k] + theta * (xi_[k + 1] - xi_[k]);
}

double CharacteristicMap::time_at(double xi) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(xi));
  if (xi < -tol || xi > xi_.back() + tol) {
    std::ostringstream os;
    os << "xi " << xi << " outside recorded range [0, " << xi_.back() << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  xi = std::clamp(xi, 0.0, xi_.back());
  // Bisection on the monotone samples for the bracketing cell.
  std::size_t lo = 0;
  std::size_t hi = xi_.size() - 1;
  if (xi >= xi_[hi]) return times_[hi];
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (xi_[mid] <= xi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = (xi - xi_[lo]) / (xi_[hi] - xi_[lo]);
  return times_[lo] + theta * (times_[hi] - times_[lo]);
}

void update_xi(CharacteristicMap& map, const HistoryBuffer& hist, double t, double dt,
               const PlantModel& plant) {
  const double prev = t - dt;
  if (std::abs(map.back_time() - prev) > 1e-9 * std::max(1.0, std::abs(t))) {
    std::ostringstream os;
    os << "characteristic map ends at " << map.back_time() << ", expected " << prev;
    throw Error(ErrorKind::Domain, os.str());
  }
  const double speed_prev = plant.lambda(hist.window_integral(prev));
  const double speed_now = plant.lambda(hist.window_integral(t));
  map.append(t, map.back_xi() + 0.5 * dt * (speed_prev + speed_now));
}

double compute_delay(const CharacteristicMap& map, double t, double length) {
  const double xi_t = map.xi_at(t);
  if (xi_t < length) {
    std::ostringstream os;
    os << "characteristic reaching x = 0 at t = " << t << " left x = D before t = 0 (xi = " << xi_t
       << " < D = " << length << ")";
    throw Error(ErrorKind::NotYetReachable, os.str());
  }
  return map.time_at(xi_t - length);
}

}  // namespace mlpf::predictor
