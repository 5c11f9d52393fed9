#include "mlpf/core/history.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlpf/core/errors.hpp"

namespace mlpf {

namespace {

double span_tolerance(double s) { return 1e-12 * std::max(1.0, std::abs(s)); }

}  // namespace

HistoryBuffer::HistoryBuffer(double window, double slack) : window_(window), slack_(slack) {
  if (!(window >= 0.0) || !(slack >= 0.0)) {
    throw Error(ErrorKind::Domain, "history window and slack must be non-negative");
  }
}

HistoryBuffer HistoryBuffer::seeded(double window, double dt,
                                    const std::function<double(double)>& h) {
  if (!(dt > 0.0)) throw Error(ErrorKind::Domain, "history sampling step must be positive");
  HistoryBuffer hist(window, 2.0 * window);
  const auto count = static_cast<long>(std::ceil(window / dt - 1e-9));
  for (long k = count; k >= 0; --k) {
    const double s = -static_cast<double>(k) * dt;
    hist.append(s, h(s));
  }
  return hist;
}

void HistoryBuffer::append(double t, double x) {
  if (!times_.empty() && !(t > times_.back())) {
    std::ostringstream os;
    os << "history sample times must increase (got " << t << " after " << times_.back() << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  if (times_.empty()) {
    prefix_.push_back(0.0);
  } else {
    prefix_.push_back(prefix_.back() + 0.5 * (t - times_.back()) * (x + values_.back()));
  }
  times_.push_back(t);
  values_.push_back(x);
  prune();
}

void HistoryBuffer::prune() {
  const double keep_from = times_.back() - window_ - slack_;
  // Drop the front while the second sample still lies at or before keep_from.
  while (times_.size() > 2 && times_[1] <= keep_from) {
    times_.pop_front();
    values_.pop_front();
    prefix_.pop_front();
  }
}

double HistoryBuffer::clamp_to_span(double s) const {
  if (times_.empty()) throw Error(ErrorKind::Range, "history is empty");
  if (s < times_.front() - span_tolerance(s) || s > times_.back() + span_tolerance(s)) {
    std::ostringstream os;
    os << "time " << s << " outside stored history span [" << times_.front() << ", "
       << times_.back() << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  return std::clamp(s, times_.front(), times_.back());
}

std::size_t HistoryBuffer::locate(double s) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), s);
  auto k = static_cast<std::size_t>(std::distance(times_.begin(), it));
  return k == 0 ? 0 : k - 1;
}

double HistoryBuffer::interpolate(double s) const {
  s = clamp_to_span(s);
  const std::size_t k = locate(s);
  if (k + 1 >= times_.size()) return values_.back();
  if (s == times_[k]) return values_[k];
  const double theta = (s - times_[k]) / (times_[k + 1] - times_[k]);
  return values_[k] + theta * (values_[k + 1] - values_[k]);
}

double HistoryBuffer::primitive(double s) const {
  const std::size_t k = locate(s);
  if (k + 1 >= times_.size() || s == times_[k]) return prefix_[k];
  const double theta = (s - times_[k]) / (times_[k + 1] - times_[k]);
  const double xs = values_[k] + theta * (values_[k + 1] - values_[k]);
  return prefix_[k] + 0.5 * (s - times_[k]) * (values_[k] + xs);
}

double HistoryBuffer::integrate(double a, double b) const {
  if (a > b) throw Error(ErrorKind::Domain, "integration bounds reversed");
  if (a == b) return 0.0;
  a = clamp_to_span(a);
  b = clamp_to_span(b);
  return primitive(b) - primitive(a);
}

}  // namespace mlpf
